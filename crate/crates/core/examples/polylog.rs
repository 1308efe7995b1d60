//! One hypersurface for all points of height ≤ H when the radius is
//! positive, with its degree against the bound C·log H.

use std::path::Path;

use nacount::cli::{run, Mode, Overrides, ProblemSpec, Rows};

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("problems/geometric_f2.json");
    let spec = ProblemSpec::load(&path).unwrap();
    let out = run(&spec, Mode::Polylog, &Overrides::default()).unwrap();
    let Rows::Polylog(rows) = &out.report.rows else { unreachable!() };
    for r in rows {
        println!("H = {:>3}: {:>4} points, degree {} (bound {}, C = {})", r.height, r.points, r.degree, r.bound, r.c_bound);
    }
}
