//! Points of height ≤ H on y = x² over F_3((t)).

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use nacount::enumeration::{points_on_set, Distinguished};
use nacount::field_tower::{Base, LocalFieldCtx, TadicBase};
use nacount::tate_series::{PresentedAlgebra, SeriesDef};

fn main() {
    let b = TadicBase::new(3).unwrap();
    let def = SeriesDef::parse_json(r#"[{"exponents":[0,1],"coeff":[[1]]},{"exponents":[2,0],"coeff":[[-1]]}]"#, 2).unwrap();
    let alg = PresentedAlgebra::new(b.clone(), LocalFieldCtx::tadic(3, 24).unwrap(), vec![BigRational::zero(); 2], vec![def])
        .unwrap();
    for h in [3u32, 9] {
        let set = points_on_set(&alg, &Distinguished::Coordinates, &BigUint::from(h), None).unwrap();
        println!("H = {h}: {} points (work precision {})", set.points.len(), set.work_prec);
        for p in set.points.iter().take(6) {
            let c: Vec<String> = p.coords.iter().map(|v| b.fmt_frac(v)).collect();
            println!("  ({})  height {}", c.join(", "), p.height);
        }
    }
}
