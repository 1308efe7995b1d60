//! Interpolation determinants of points on a curve: the valuation sits
//! between the local upper estimate and the height lower bound.

use num_bigint::BigUint;
use nacount::detmethod::{det_lower_bound, interp_det, mu, FieldShape, MonomialSet};
use nacount::field_tower::{Base, Frac, Poly, TadicBase};

fn main() {
    let b = TadicBase::new(2).unwrap();
    let shape = FieldShape::of(&b, 1);
    let h = BigUint::from(4u32);
    // points (x, 1/(1 + t x)) with x of height ≤ 4
    let pts: Vec<Vec<Frac<Poly>>> = ["0", "1", "t", "t+1", "1/(t+1)", "t^2"]
        .iter()
        .map(|s| {
            let x = b.parse_frac(s).unwrap();
            let y = b.f_inv(&b.f_add(&b.f_one(), &b.f_mul(&b.parse_frac("t").unwrap(), &x))).unwrap();
            vec![x, y]
        })
        .collect();
    for degree in 1..=2u32 {
        let ms = MonomialSet::new(degree, 2);
        let k = ms.len();
        let det = interp_det(&b, &pts[..k], &ms).unwrap();
        let bound = det_lower_bound(shape, &h, degree, mu(degree, 1), 1);
        match b.f_val(&det) {
            Some(v) => println!("D = {degree}: {k} points, val Δ = {v}, lower bound says val Δ ≤ {bound}"),
            None => println!("D = {degree}: {k} points, Δ = 0 (they lie on a curve of degree {degree})"),
        }
    }
}
