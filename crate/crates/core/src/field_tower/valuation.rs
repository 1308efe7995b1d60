use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// A valuation in Q ∪ {+∞}. The derived order puts `Infinite` last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(BigRational),
    Infinite,
}

impl Valuation {
    pub fn int(v: i64) -> Self {
        Valuation::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Valuation::Finite(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// `k / n` for a valuation stored in units of `1/n`.
    pub fn from_units(k: i64, n: u64) -> Self {
        Valuation::Finite(BigRational::new(BigInt::from(k), BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Valuation::Finite(BigRational::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        match self {
            Valuation::Finite(v) => Valuation::Finite(v * k),
            Valuation::Infinite => Valuation::Infinite,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Valuation::Finite(v) => v.to_f64().unwrap_or(f64::NAN),
            Valuation::Infinite => f64::INFINITY,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl<'a> Add<&'a Valuation> for &'a Valuation {
    type Output = Valuation;
    fn add(self, rhs: &Valuation) -> Valuation {
        self.clone() + rhs.clone()
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Parses `"a/b"` or `"a"` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                return None;
            }
            Some(BigRational::new(a.trim().parse().ok()?, b))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}
