//! Problem files, the counting pipeline and machine-readable reports.

mod problem;
mod report;

use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::detmethod::{
    algebraic_flag, cover_by_hypersurfaces, polylog_hypersurface, AlgFlag, Branch, Cover, CoverParams, DetError,
    FieldShape, Hypersurface,
};
use crate::enumeration::{default_work_prec, points_on_set, Distinguished, EnumError, PointSet};
use crate::field_tower::reconstruct::floor_log;
use crate::field_tower::{Base, FieldError, FieldKind, Frac, LocalFieldCtx, PadicBase, TadicBase};
use crate::normalize::{full_normalize, NormalizeError};
use crate::tate_series::{to_literal, PresentedAlgebra, SeriesDef, SeriesError};

pub use problem::{parse_heights, FieldBlock, Experiment, FSpec, PrecisionPolicy, ProblemSpec};
pub use report::{BenchRow, CountRow, Format, NormalizeRow, PolylogRow, Rows, RunReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("problem file: {0}")]
    Problem(String),
    #[error("precision ceiling {ceiling} reached with {ambiguous} unresolved point(s) at H = {height}")]
    PrecisionCeiling { height: String, ceiling: i64, ambiguous: usize },
    #[error("unsupported presentation: {0}")]
    Unsupported(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Det(#[from] DetError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::PrecisionCeiling { .. } => 2,
            CliError::Unsupported(_)
            | CliError::Enum(EnumError::Unsupported(_))
            | CliError::Normalize(
                NormalizeError::UnsupportedPresentation(_) | NormalizeError::NoAdmissibleM(_) | NormalizeError::IterationCap(_),
            ) => 3,
            CliError::Invariant(_)
            | CliError::Det(DetError::Invariant(_) | DetError::NotFound(_))
            | CliError::Normalize(NormalizeError::MonicCheckFailed { .. }) => 4,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Count,
    Cover,
    Polylog,
    Normalize,
    Bench,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Count => "count",
            Mode::Cover => "cover",
            Mode::Polylog => "polylog",
            Mode::Normalize => "normalize",
            Mode::Bench => "bench",
        }
    }
}

/// Command-line values that take precedence over the problem file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub epsilon: Option<BigRational>,
    pub heights: Option<Vec<BigUint>>,
    pub prec_ceiling: Option<i64>,
    pub sigma: Option<u32>,
}

/// A report plus named JSON dumps (hypersurfaces, points, witnesses).
#[derive(Clone, Debug)]
pub struct Output {
    pub report: RunReport,
    pub dumps: Vec<(String, Value)>,
}

pub fn run(spec: &ProblemSpec, mode: Mode, ov: &Overrides) -> Result<Output, CliError> {
    match spec.field.kind()? {
        FieldKind::Padic => {
            let p = spec.field.modulus()?;
            run_generic(PadicBase::new(p)?, LocalFieldCtx::padic(p, 1)?, spec, mode, ov)
        }
        FieldKind::Tadic => {
            let q = spec.field.modulus()?;
            run_generic(TadicBase::new(q)?, LocalFieldCtx::tadic(q, 1)?, spec, mode, ov)
        }
    }
}

/// Runs with a pool of `workers` threads (all results are collated in a
/// fixed order, so the output does not depend on it).
pub fn run_with_workers(spec: &ProblemSpec, mode: Mode, ov: &Overrides, workers: Option<usize>) -> Result<Output, CliError> {
    match workers {
        None => run(spec, mode, ov),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| CliError::Problem(format!("worker pool: {e}")))?
            .install(|| run(spec, mode, ov)),
    }
}

fn run_generic<B: Base>(b: B, ctx: LocalFieldCtx, spec: &ProblemSpec, mode: Mode, ov: &Overrides) -> Result<Output, CliError> {
    let t0 = Instant::now();
    let runner = Runner::build(b, ctx, spec, ov)?;
    let normalize_ms = t0.elapsed().as_secs_f64() * 1e3;
    match mode {
        Mode::Count | Mode::Cover => runner.count(mode),
        Mode::Polylog => runner.polylog(),
        Mode::Normalize => runner.normalize_dump(),
        Mode::Bench => runner.bench(spec, ov, normalize_ms),
    }
}

/// Per-height results of the counting pipeline.
pub struct HeightResult<I> {
    pub row: CountRow,
    pub points: PointSet<I>,
    pub cover: Option<Cover<I>>,
    pub contained: Vec<bool>,
    pub stage_ms: [f64; 3],
}

pub struct Runner<B: Base> {
    pub alg: PresentedAlgebra<B>,
    pub f: Distinguished,
    pub nfuncs: usize,
    pub shape: FieldShape,
    pub eps: BigRational,
    pub heights: Vec<BigUint>,
    pub initial_prec: Option<i64>,
    pub ceiling: i64,
}

impl<B: Base> Runner<B> {
    pub fn build(b: B, ctx: LocalFieldCtx, spec: &ProblemSpec, ov: &Overrides) -> Result<Self, CliError> {
        let n = spec.nvars;
        let delta = spec.delta()?;
        let heights = match &ov.heights {
            Some(h) => h.clone(),
            None => spec.experiment.heights(b.kind(), b.q(), b.p())?,
        };
        for h in &heights {
            if h.is_zero() {
                return Err(CliError::Problem("heights must be positive".into()));
            }
            if b.kind() == FieldKind::Tadic && crate::field_tower::exact_log(h, b.q()).is_none() {
                return Err(CliError::Problem(format!("H = {h} is not a power of q = {}", b.q())));
            }
        }
        let top = heights.iter().max().cloned().unwrap_or_else(BigUint::one);
        let prec0 = spec.field.precision.initial.unwrap_or_else(|| crate::enumeration::default_work_prec(&b, &top));
        let defs = spec
            .generators
            .iter()
            .map(|g| SeriesDef::from_literal(g, n))
            .collect::<Result<Vec<_>, _>>()?;
        let f = match &spec.f {
            FSpec::Named(s) if s == "coordinates" => Distinguished::Coordinates,
            FSpec::Named(s) => return Err(CliError::Problem(format!("unknown distinguished functions {s:?}"))),
            FSpec::Series(list) => Distinguished::Series(
                list.iter().map(|g| SeriesDef::from_literal(g, n)).collect::<Result<Vec<_>, _>>()?,
            ),
        };
        let nfuncs = match &f {
            Distinguished::Coordinates => n,
            Distinguished::Series(d) => d.len(),
        };
        let sigma = ov.sigma.or(spec.field.sigma).unwrap_or(1);
        let shape = FieldShape::of(&b, sigma);
        let alg = PresentedAlgebra::new(b, ctx.with_prec(prec0), delta, defs)?;
        let target = spec.experiment.delta_target(n)?;
        let alg = if alg.is_unit_ideal() { alg } else { full_normalize(&alg, &target)? };
        let eps = match &ov.epsilon {
            Some(e) => e.clone(),
            None => spec.experiment.epsilon()?,
        };
        if !eps.is_positive() {
            return Err(CliError::Problem("epsilon must be positive".into()));
        }
        Ok(Runner {
            alg,
            f,
            nfuncs,
            shape,
            eps,
            heights,
            initial_prec: spec.field.precision.initial,
            ceiling: ov.prec_ceiling.unwrap_or(spec.field.precision.ceiling),
        })
    }

    fn b(&self) -> &B {
        &self.alg.base
    }

    fn log_h(&self, h: &BigUint) -> u32 {
        let r = match self.shape.kind {
            FieldKind::Tadic => self.shape.q,
            FieldKind::Padic => self.shape.p,
        };
        floor_log(h, r)
    }

    /// Points of height ≤ H. The precision is raised until no membership
    /// verdict is ambiguous and, when some verdicts are inexact, until the
    /// point set is unchanged by doubling the precision.
    pub fn enumerate(&self, h: &BigUint) -> Result<PointSet<B::Int>, CliError> {
        if self.alg.is_unit_ideal() {
            return Ok(points_on_set(&self.alg, &self.f, h, self.initial_prec)?);
        }
        let start = self.initial_prec.unwrap_or_else(|| default_work_prec(&self.alg.base, h)).min(self.ceiling);
        let mut pts = points_on_set(&self.alg, &self.f, h, Some(start))?;
        loop {
            let amb = pts.ambiguous();
            if amb == 0 && pts.inexact() == 0 {
                return Ok(pts);
            }
            // inexact points not yet confirmed by a doubling count as unresolved
            if pts.work_prec >= self.ceiling {
                return Err(CliError::PrecisionCeiling {
                    height: h.to_string(),
                    ceiling: self.ceiling,
                    ambiguous: amb.max(pts.inexact()),
                });
            }
            let next = points_on_set(&self.alg, &self.f, h, Some((pts.work_prec * 2).min(self.ceiling)))?;
            if amb == 0 && next.ambiguous() == 0 && next.same_points(&pts) {
                return Ok(next);
            }
            pts = next;
        }
    }

    /// Cover parameters, or `None` when there are fewer than d + 1
    /// distinguished functions (every point is then counted).
    pub fn cover_params(&self) -> Result<Option<CoverParams>, CliError> {
        if self.alg.is_unit_ideal() {
            return Ok(None);
        }
        let w = self.alg.witness.as_ref().ok_or_else(|| CliError::Invariant("missing witness".into()))?;
        let d = w.retained.len() as u32;
        if d == 0 || self.nfuncs < d as usize + 1 {
            return Ok(None);
        }
        if !w.is_identity() {
            return Err(CliError::Unsupported(
                "covering after a coordinate change (retained coordinates are not original coordinates)".into(),
            ));
        }
        let delta = w.retained_delta.iter().min().cloned().unwrap_or_else(BigRational::zero);
        Ok(Some(CoverParams {
            d,
            eps: self.eps.clone(),
            e: w.e.max(1),
            shape: self.shape,
            delta,
            retained: w.retained.clone(),
            vars: (0..=d as usize).collect(),
        }))
    }

    pub fn count_height(&self, h: &BigUint) -> Result<HeightResult<B::Int>, CliError> {
        let b = self.b();
        let t0 = Instant::now();
        let points = self.enumerate(h)?;
        let t1 = Instant::now();
        let params = self.cover_params()?;
        let cover = match &params {
            Some(p) => Some(cover_by_hypersurfaces(b, &points.points, h, p)?),
            None => None,
        };
        let t2 = Instant::now();
        let mut contained = Vec::new();
        let mut to_precision = 0;
        if let Some(c) = &cover {
            let alg = self.alg.with_precision(points.work_prec)?;
            let verdicts = c
                .entries
                .par_iter()
                .map(|e| algebraic_flag(&e.hyp, &alg, &self.f, points.work_prec))
                .collect::<Result<Vec<_>, _>>()?;
            for v in verdicts {
                contained.push(v.flag == AlgFlag::Contained);
                to_precision += v.to_precision as usize;
            }
        }
        let flagged: Vec<&Hypersurface<B::Int>> = match &cover {
            Some(c) => c.entries.iter().zip(&contained).filter(|(_, &k)| k).map(|(e, _)| &e.hyp).collect(),
            None => Vec::new(),
        };
        let transcendental =
            points.points.iter().filter(|p| !flagged.iter().any(|q| q.vanishes_at(b, &p.f_values))).count();
        let t3 = Instant::now();
        let hyps = cover.as_ref().map_or(0, |c| c.entries.len());
        let row = CountRow {
            height: h.to_string(),
            h: self.log_h(h),
            points: points.points.len(),
            excluded: points.excluded,
            work_prec: points.work_prec,
            branch: match cover.as_ref().map(|c| c.branch) {
                Some(Branch::Large) => "large".into(),
                Some(Branch::Small) => "small".into(),
                None => "none".into(),
            },
            depth: cover.as_ref().map_or(0, |c| c.depth),
            hypersurfaces: hyps,
            max_degree: cover.as_ref().map_or(0, |c| c.max_degree()),
            d_prime: cover.as_ref().and_then(|c| c.d_prime),
            envelope_ok: within_envelope(hyps, h, &self.eps),
            contained: contained.iter().filter(|&&k| k).count(),
            contained_to_precision: to_precision,
            transcendental,
            wall_ms: (t3 - t0).as_secs_f64() * 1e3,
        };
        if let Some(c) = &row.d_prime {
            if row.max_degree > *c {
                return Err(CliError::Invariant(format!("degree {} above the bound {c}", row.max_degree)));
            }
        }
        let stage_ms = [(t1 - t0).as_secs_f64() * 1e3, (t2 - t1).as_secs_f64() * 1e3, (t3 - t2).as_secs_f64() * 1e3];
        Ok(HeightResult { row, points, cover, contained, stage_ms })
    }

    fn count(&self, mode: Mode) -> Result<Output, CliError> {
        let results: Vec<HeightResult<B::Int>> =
            self.heights.par_iter().map(|h| self.count_height(h)).collect::<Result<_, _>>()?;
        let mut dumps = Vec::new();
        if mode == Mode::Cover {
            for r in &results {
                dumps.push((format!("cover_H{}.json", r.row.height), self.cover_dump(r)));
            }
        }
        let rows: Vec<CountRow> = results.into_iter().map(|r| r.row).collect();
        let c_pow = envelope_constant(&rows, &self.eps);
        Ok(Output { report: self.report(mode, Rows::Count(rows), Some(c_pow)), dumps })
    }

    /// Points with the id of their covering hypersurface, and the
    /// hypersurfaces with ball labels and flags.
    pub fn cover_dump(&self, r: &HeightResult<B::Int>) -> Value {
        let b = self.b();
        let mut owner = vec![None; r.points.points.len()];
        let mut hyps = Vec::new();
        if let Some(c) = &r.cover {
            for (id, e) in c.entries.iter().enumerate() {
                for &i in &e.points {
                    owner[i] = Some(id);
                }
                hyps.push(json!({
                    "id": id,
                    "ball": e.key.label(b),
                    "contained": r.contained.get(id).copied().unwrap_or(false),
                    "hypersurface": e.hyp.to_json(b),
                }));
            }
        }
        let points: Vec<Value> = r
            .points
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let mut v = p.to_json(b);
                v["id"] = json!(i);
                v["hypersurface"] = json!(owner[i]);
                v
            })
            .collect();
        json!({
            "height": r.row.height,
            "branch": r.row.branch,
            "depth": r.row.depth,
            "d_prime": r.row.d_prime,
            "points": points,
            "hypersurfaces": hyps,
        })
    }

    fn polylog(&self) -> Result<Output, CliError> {
        let b = self.b();
        let params = self
            .cover_params()?
            .ok_or_else(|| CliError::Unsupported("polylog needs at least d + 1 distinguished functions".into()))?;
        let rows = self
            .heights
            .par_iter()
            .map(|h| -> Result<(PolylogRow, Value), CliError> {
                let t0 = Instant::now();
                let pts = self.enumerate(h)?;
                let pl = polylog_hypersurface(b, &pts.points, h, params.d, params.e, self.shape, &params.delta, &params.vars)?;
                let lh = self.log_h(h).max(1);
                let hd = BigRational::from_integer(num_bigint::BigInt::from(lh).pow(params.d));
                let degree = pl.hyp.actual_degree(b);
                let row = PolylogRow {
                    height: h.to_string(),
                    h: self.log_h(h),
                    points: pts.points.len(),
                    degree,
                    bound: pl.bound,
                    c_bound: pl.c.to_string(),
                    c_measured: (BigRational::from_integer(degree.into()) / hd).to_string(),
                    wall_ms: t0.elapsed().as_secs_f64() * 1e3,
                };
                let dump = json!({
                    "height": h.to_string(),
                    "points": pts.points.iter().map(|p| p.to_json(b)).collect::<Vec<_>>(),
                    "hypersurface": pl.hyp.to_json(b),
                });
                Ok((row, dump))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut dumps = Vec::new();
        let mut out = Vec::new();
        for (row, dump) in rows {
            dumps.push((format!("polylog_H{}.json", row.height), dump));
            out.push(row);
        }
        Ok(Output { report: self.report(Mode::Polylog, Rows::Polylog(out), None), dumps })
    }

    fn normalize_dump(&self) -> Result<Output, CliError> {
        if self.alg.is_unit_ideal() {
            return Err(CliError::Unsupported("unit ideal has an empty zero set".into()));
        }
        let w = self.alg.witness.as_ref().ok_or_else(|| CliError::Invariant("missing witness".into()))?;
        let mut transformed = Vec::new();
        for g in &self.alg.generators {
            transformed.push(serde_json::to_value(to_literal(&w.transform(g)?)).unwrap_or(Value::Null));
        }
        let rows: Vec<NormalizeRow> = if w.steps.is_empty() {
            vec![NormalizeRow { generator: None, variable: None, degree: 0, m: w.m, n: w.root, e: w.e, exact_monic: true }]
        } else {
            w.steps
                .iter()
                .map(|s| NormalizeRow {
                    generator: Some(s.generator + 1),
                    variable: Some(s.var + 1),
                    degree: s.degree,
                    m: w.m,
                    n: w.root,
                    e: w.e,
                    exact_monic: s.exact_monic,
                })
                .collect()
        };
        let dump = json!({ "witness": w.to_json(), "transformed_generators": transformed });
        Ok(Output { report: self.report(Mode::Normalize, Rows::Normalize(rows), None), dumps: vec![("witness.json".into(), dump)] })
    }

    fn bench(&self, spec: &ProblemSpec, ov: &Overrides, normalize_ms: f64) -> Result<Output, CliError> {
        let mut rows = Vec::new();
        let serial = run_with_workers(spec, Mode::Count, ov, Some(1))?;
        let parallel = run(spec, Mode::Count, ov)?;
        let again = run(spec, Mode::Count, ov)?;
        let deterministic = serial.report.fingerprint() == parallel.report.fingerprint()
            && parallel.report.fingerprint() == again.report.fingerprint();
        for h in &self.heights {
            let r = self.count_height(h)?;
            rows.push(BenchRow {
                height: r.row.height.clone(),
                h: r.row.h,
                points: r.row.points,
                hypersurfaces: r.row.hypersurfaces,
                normalize_ms,
                enumerate_ms: r.stage_ms[0],
                cover_ms: r.stage_ms[1],
                classify_ms: r.stage_ms[2],
                deterministic,
            });
        }
        Ok(Output { report: self.report(Mode::Bench, Rows::Bench(rows), None), dumps: Vec::new() })
    }

    fn report(&self, mode: Mode, rows: Rows, c_pow: Option<BigRational>) -> RunReport {
        RunReport {
            mode: mode.name().into(),
            field: match self.shape.kind {
                FieldKind::Padic => format!("Q_{}", self.shape.p),
                FieldKind::Tadic => format!("F_{}((t))", self.shape.q),
            },
            sigma: self.shape.sigma,
            epsilon: self.eps.to_string(),
            prec_ceiling: self.ceiling,
            c_pow: c_pow.map(|c| c.to_string()),
            rows,
        }
    }
}

/// count ≤ H^ε, decided exactly as count^b ≤ H^a for ε = a/b.
pub fn within_envelope(count: usize, h: &BigUint, eps: &BigRational) -> bool {
    let (a, b) = (eps.numer().to_u32_digits().1, eps.denom().to_u32_digits().1);
    let a = a.first().copied().unwrap_or(0);
    let b = b.first().copied().unwrap_or(1);
    BigUint::from(count).pow(b) <= h.pow(a)
}

/// max over rows of N_tran^b / H^a (ε = a/b): the constant c with
/// N_tran ≤ c^(1/b)·H^ε on every row.
pub fn envelope_constant(rows: &[CountRow], eps: &BigRational) -> BigRational {
    let a = eps.numer().to_u32_digits().1.first().copied().unwrap_or(0);
    let b = eps.denom().to_u32_digits().1.first().copied().unwrap_or(1);
    rows.iter()
        .map(|r| {
            let h: BigUint = r.height.parse().unwrap_or_else(|_| BigUint::one());
            BigRational::new(BigUint::from(r.transcendental).pow(b).into(), h.pow(a).into())
        })
        .max()
        .unwrap_or_else(BigRational::zero)
}

/// Re-evaluates a cover dump: every point must be a zero of its
/// hypersurface. Returns the number of points checked.
pub fn check_cover_dump<B: Base>(b: &B, dump: &Value) -> Result<usize, CliError> {
    let bad = |m: &str| CliError::Problem(format!("cover dump: {m}"));
    let hyps: Vec<Hypersurface<B::Int>> = dump["hypersurfaces"]
        .as_array()
        .ok_or_else(|| bad("hypersurfaces"))?
        .iter()
        .map(|h| Hypersurface::from_json(b, &h["hypersurface"]))
        .collect::<Result<_, _>>()?;
    let mut n = 0;
    for p in dump["points"].as_array().ok_or_else(|| bad("points"))? {
        let fv: Vec<Frac<B::Int>> = p["f_values"]
            .as_array()
            .ok_or_else(|| bad("f_values"))?
            .iter()
            .map(|s| b.parse_frac(s.as_str().unwrap_or("")))
            .collect::<Result<_, _>>()?;
        let id = p["hypersurface"].as_u64().ok_or_else(|| bad("point without hypersurface"))? as usize;
        let hyp = hyps.get(id).ok_or_else(|| bad("hypersurface id"))?;
        if !hyp.vanishes_at(b, &fv) {
            return Err(CliError::Invariant(format!("point {} is not on hypersurface {id}", p["id"])));
        }
        n += 1;
    }
    Ok(n)
}
