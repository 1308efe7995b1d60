//! Normalization witnesses: an identity shortcut and a relation that needs
//! a coordinate change first.

use num_rational::BigRational;
use num_traits::Zero;
use nacount::field_tower::{LocalFieldCtx, TadicBase};
use nacount::normalize::full_normalize;
use nacount::tate_series::{PresentedAlgebra, SeriesDef};

fn show(name: &str, literal: &str, delta: BigRational, target: BigRational) {
    let b = TadicBase::new(2).unwrap();
    let def = SeriesDef::parse_json(literal, 2).unwrap();
    let alg = PresentedAlgebra::new(b, LocalFieldCtx::tadic(2, 24).unwrap(), vec![delta; 2], vec![def]).unwrap();
    let out = full_normalize(&alg, &[target.clone(), target]).unwrap();
    let w = out.witness.as_ref().unwrap();
    println!("{name}: M = {:?}, e = {}, retained {:?}, identity {}", w.m, w.e, w.retained, w.is_identity());
    for s in &w.steps {
        println!("  eliminate x{} with degree {}: {}", s.var + 1, s.degree, s.relation.fmt_series());
    }
}

fn main() {
    show(
        "y^2 + y + t x",
        r#"[{"exponents":[0,2],"coeff":[[1]]},{"exponents":[0,1],"coeff":[[1]]},{"exponents":[1,0],"coeff":[[0],[1]]}]"#,
        BigRational::zero(),
        BigRational::zero(),
    );
    show(
        "x y + t",
        r#"[{"exponents":[1,1],"coeff":[[1]]},{"exponents":[0,0],"coeff":[[0],[1]]}]"#,
        BigRational::from_integer(1.into()),
        BigRational::new(1.into(), 2.into()),
    );
}
