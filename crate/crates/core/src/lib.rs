//! Counting rational points of bounded height on non-archimedean analytic
//! sets over Q_p and F_q((t)), with the interpolation-determinant tools
//! that bound those counts.

pub mod cli;
pub mod detmethod;
pub mod enumeration;
pub mod field_tower;
pub mod normalize;
pub mod tate_series;
