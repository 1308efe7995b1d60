//! Covering the points of y = Σ t^k x^k by hypersurfaces, ball by ball.

use std::path::Path;

use num_bigint::BigUint;
use nacount::cli::{Overrides, ProblemSpec, Runner};
use nacount::field_tower::{Base, LocalFieldCtx, TadicBase};

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("problems/geometric_f2.json");
    let spec = ProblemSpec::load(&path).unwrap();
    let b = TadicBase::new(2).unwrap();
    let runner = Runner::build(b.clone(), LocalFieldCtx::tadic(2, 1).unwrap(), &spec, &Overrides::default()).unwrap();
    for h in [8u32, 32] {
        let r = runner.count_height(&BigUint::from(h)).unwrap();
        let cover = r.cover.unwrap();
        println!("H = {h}: {} points, {:?} branch at depth {}, D' = {:?}", r.row.points, cover.branch, cover.depth, cover.d_prime);
        for (e, algebraic) in cover.entries.iter().zip(&r.contained) {
            let terms: Vec<String> = e
                .hyp
                .monomials
                .iter()
                .zip(&e.hyp.coeffs)
                .filter(|(_, c)| !b.is_zero(c))
                .map(|(nu, c)| format!("({})·f1^{}·f2^{}", b.fmt_int(c), nu[0], nu[1]))
                .collect();
            println!("  ball {}: {} points on {} = 0 (contained in the set: {algebraic})", e.key.label(&b), e.points.len(), terms.join(" + "));
        }
    }
}
