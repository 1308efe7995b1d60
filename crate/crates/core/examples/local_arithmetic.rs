//! Embedding rationals into Q_5 and F_2((t)) and reading them back.

use num_bigint::BigUint;
use nacount::field_tower::reconstruct::required_precision;
use nacount::field_tower::{rational_reconstruct, Base, LocalElem, PadicBase, TadicBase};

fn main() {
    let b = PadicBase::new(5).unwrap();
    let h = BigUint::from(50u32);
    let prec = required_precision(&b, &h) as i64;
    for s in ["-41/38", "25/3", "7"] {
        let v = b.parse_frac(s).unwrap();
        let x = LocalElem::from_frac(&b, &v, 1, prec).unwrap();
        let back = rational_reconstruct(&b, &x, &h).unwrap().unwrap();
        println!("Q_5  {s:>7}  val {}  digits to 5^{prec}  back {}", x.valuation(&b), b.fmt_frac(&back));
    }

    let t = TadicBase::new(2).unwrap();
    let h = BigUint::from(32u32);
    let prec = required_precision(&t, &h) as i64;
    let x = t.parse_frac("t^3/(t^2+t+1)").unwrap();
    let y = t.parse_frac("1/(t+1)").unwrap();
    let lx = LocalElem::from_frac(&t, &x, 1, prec).unwrap();
    let ly = LocalElem::from_frac(&t, &y, 1, prec).unwrap();
    let prod = lx.mul(&t, &ly);
    let back = rational_reconstruct(&t, &prod, &h).unwrap().unwrap();
    println!("F_2((t))  x·y = {}  (val {})", t.fmt_frac(&back), prod.valuation(&t));
}
