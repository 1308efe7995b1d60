//! The lacunary series Σ t^(k²) x^k: Gauss norm, evaluation, rescaling.

use num_rational::BigRational;
use num_traits::Zero;
use nacount::field_tower::{Base, LocalElem, TadicBase};
use nacount::tate_series::SeriesDef;

fn main() {
    let b = TadicBase::new(2).unwrap();
    let def = SeriesDef::parse_json(r#"{"families":[{"var":0,"coeff":[[1]],"quad":[1,0,0]}]}"#, 1).unwrap();
    let g = def.materialize(&b, &[BigRational::zero()], 16).unwrap();
    println!("g = {}", g.fmt_series());
    println!("Gauss norm {}, integral {}", g.gauss_norm(), g.is_integral());

    for s in ["1", "t", "1/(t+1)"] {
        let x = LocalElem::from_frac(&b, &b.parse_frac(s).unwrap(), 1, 16).unwrap();
        let y = g.evaluate(&[x]).unwrap();
        println!("g({s}) has valuation {} to precision {}", y.valuation(&b), y.precision());
    }

    let r = g.rescale(&[BigRational::from_integer(1.into())]).unwrap();
    println!("g(t·x) = {}", r.fmt_series());
    println!("g·g = {}", g.mul(&g).truncate_precision(&BigRational::from_integer(10.into())).fmt_series());
}
