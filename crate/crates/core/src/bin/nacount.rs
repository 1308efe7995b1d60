use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nacount::cli::{parse_heights, run_with_workers, CliError, Format, Mode, Overrides, ProblemSpec};
use nacount::field_tower::valuation::parse_rational;

#[derive(Parser)]
#[command(name = "nacount", version, about = "Rational points of bounded height on non-archimedean analytic sets")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// N(H) and transcendental counts per height
    Count(Common),
    /// Hypersurface coverings with a per-point audit
    Cover(Common),
    /// One covering hypersurface per height, degree against C·h^d
    Polylog(Common),
    /// Normalization witness for the presentation
    Normalize(Common),
    /// Stage timings and a determinism check
    Bench(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    problem: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Fmt,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    prec_ceiling: Option<i64>,
    /// a/b
    #[arg(long)]
    epsilon: Option<String>,
    /// comma-separated H values
    #[arg(long)]
    heights: Option<String>,
    #[arg(long, hide = true)]
    sigma: Option<u32>,
}

fn go(mode: Mode, c: Common) -> Result<(), CliError> {
    let spec = ProblemSpec::load(&c.problem)?;
    let ov = Overrides {
        epsilon: c
            .epsilon
            .as_deref()
            .map(|s| parse_rational(s).ok_or_else(|| CliError::Problem(format!("--epsilon {s:?}"))))
            .transpose()?,
        heights: c.heights.as_deref().map(parse_heights).transpose()?,
        prec_ceiling: c.prec_ceiling,
        sigma: c.sigma,
    };
    let out = run_with_workers(&spec, mode, &ov, c.workers)?;
    let format = match c.format {
        Fmt::Csv => Format::Csv,
        Fmt::Json => Format::Json,
    };
    out.write(c.out.as_deref(), format)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, common) = match cli.cmd {
        Cmd::Count(c) => (Mode::Count, c),
        Cmd::Cover(c) => (Mode::Cover, c),
        Cmd::Polylog(c) => (Mode::Polylog, c),
        Cmd::Normalize(c) => (Mode::Normalize, c),
        Cmd::Bench(c) => (Mode::Bench, c),
    };
    match go(mode, common) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nacount: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
