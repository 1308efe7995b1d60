//! The whole count on a problem file, printed as CSV.
//!
//!     cargo run --release --example pipeline -- problems/parabola_f3.json

use nacount::cli::{run, Mode, Overrides, ProblemSpec};

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/problems/graph_f2.json").into());
    let spec = ProblemSpec::load(path.as_ref()).unwrap_or_else(|e| panic!("{path}: {e}"));
    let out = run(&spec, Mode::Count, &Overrides::default()).unwrap();
    print!("{}", out.report.to_csv().unwrap());
    if let Some(c) = &out.report.c_pow {
        println!("# envelope constant (N_tran^b / H^a, max over rows): {c}");
    }
}
