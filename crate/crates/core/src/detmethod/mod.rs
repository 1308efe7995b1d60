//! Interpolation determinants: exact upper and lower valuation bounds,
//! degree selection, and covering point sets by hypersurfaces.

pub mod fast;
pub mod linalg;

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::enumeration::{ball_split, BallKey, Distinguished, PointRecord};
use crate::field_tower::reconstruct::{ceil_log, floor_log};
use crate::field_tower::{Base, FieldError, FieldKind, Frac, LocalElem, Valuation};
use crate::normalize::revlex_cmp;
use crate::tate_series::{module_decompose, PowerSeries, PresentedAlgebra, SeriesError};

pub use linalg::{bareiss_det, cofactor_det, nullspace_vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DetError {
    #[error("no admissible degree up to {0}")]
    NoSolution(u32),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("no hypersurface of degree ≤ {0} through the points")]
    NotFound(u32),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n.saturating_sub(k));
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// μ(D): monomials of degree ≤ D in d + 1 variables.
pub fn mu(degree: u32, d: u32) -> u64 {
    binomial(degree as u64 + d as u64 + 1, d as u64 + 1) as u64
}

/// All exponents with |ν| ≤ D, graded and revlex within each degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSet {
    pub degree: u32,
    pub nvars: usize,
    pub members: Vec<Vec<u32>>,
}

impl MonomialSet {
    pub fn new(degree: u32, nvars: usize) -> Self {
        let mut members = Vec::new();
        for k in 0..=degree {
            let mut level = Vec::new();
            compositions(k, nvars, &mut Vec::new(), &mut level);
            level.sort_by(|a, b| revlex_cmp(a, b));
            members.extend(level);
        }
        MonomialSet { degree, nvars, members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn compositions(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 0 {
        return;
    }
    if parts == 1 {
        let mut v = prefix.clone();
        v.push(total);
        out.push(v);
        return;
    }
    for k in 0..=total {
        prefix.push(k);
        compositions(total - k, parts - 1, prefix, out);
        prefix.pop();
    }
}

/// S(μ, d, E): the least Σ|ν_i| over μ monomials in d variables, each used
/// at most E times (greedy by degree).
pub fn exact_exponent(mu: u64, d: u32, e: u32) -> u64 {
    let mut left = mu as u128;
    let mut total: u128 = 0;
    let mut k: u64 = 0;
    while left > 0 {
        let count = binomial(k + d as u64 - 1, d as u64 - 1) * e as u128;
        let take = count.min(left);
        total += take * k as u128;
        left -= take;
        k += 1;
    }
    total as u64
}

fn pow_frac<B: Base>(b: &B, x: &Frac<B::Int>, k: u32) -> Frac<B::Int> {
    b.f_pow(x, k)
}

fn lcm<B: Base>(b: &B, a: &B::Int, c: &B::Int) -> B::Int {
    let g = b.gcd(a, c);
    b.normalize(&b.exact_div(&b.mul(a, c), &g)).0
}

/// Row of monomial values at one point, cleared by den^D into the base
/// ring; returns the row and den^D.
fn cleared_row<B: Base>(b: &B, f: &[Frac<B::Int>], ms: &MonomialSet) -> (Vec<B::Int>, B::Int) {
    let mut den = b.one();
    for v in f {
        den = lcm(b, &den, &v.den);
    }
    let scale = {
        let mut s = b.one();
        for _ in 0..ms.degree {
            s = b.mul(&s, &den);
        }
        s
    };
    let row = ms
        .members
        .iter()
        .map(|nu| {
            let mut t = b.f_one();
            for (x, &k) in f.iter().zip(nu) {
                if k > 0 {
                    t = b.f_mul(&t, &pow_frac(b, x, k));
                }
            }
            let v = b.f_mul(&t, &b.f_int(scale.clone()));
            debug_assert!(b.is_one(&v.den));
            v.num
        })
        .collect();
    (row, scale)
}

/// Δ^D = det[p_j(f)^ν] over exactly μ(D) points.
pub fn interp_det<B: Base>(b: &B, fvals: &[Vec<Frac<B::Int>>], ms: &MonomialSet) -> Result<Frac<B::Int>, DetError> {
    if fvals.len() != ms.len() {
        return Err(DetError::BadInput(format!("{} points for {} monomials", fvals.len(), ms.len())));
    }
    let mut rows = Vec::with_capacity(fvals.len());
    let mut scale = b.one();
    for f in fvals {
        if f.len() != ms.nvars {
            return Err(DetError::BadInput("f-value length differs from monomial arity".into()));
        }
        let (r, s) = cleared_row(b, f, ms);
        rows.push(r);
        scale = b.mul(&scale, &s);
    }
    let det = bareiss_det(b, rows);
    Ok(b.frac(det, scale)?)
}

fn int_rep<B: Base>(b: &B, x: &LocalElem<B::Int>) -> Result<B::Int, DetError> {
    if x.root() != 1 {
        return Err(DetError::BadInput("local determinant needs integral valuations".into()));
    }
    Ok(x.components().first().map(|c| c.1.clone()).unwrap_or_else(|| b.zero()))
}

/// Δ^D at local points: the determinant of base-ring representatives,
/// valid modulo π^P for P the least entry precision.
pub fn local_interp_det<B: Base>(b: &B, fvals: &[Vec<LocalElem<B::Int>>], ms: &MonomialSet) -> Result<LocalElem<B::Int>, DetError> {
    if fvals.len() != ms.len() {
        return Err(DetError::BadInput(format!("{} points for {} monomials", fvals.len(), ms.len())));
    }
    let mut prec: Option<i64> = None;
    let mut rows = Vec::with_capacity(fvals.len());
    for f in fvals {
        let mut row = Vec::with_capacity(ms.len());
        for nu in &ms.members {
            let mut t = LocalElem::from_int(b, b.one());
            for (x, &k) in f.iter().zip(nu) {
                if k > 0 {
                    t = t.mul(b, &x.pow(b, k));
                }
            }
            if let Some(p) = t.prec_units() {
                prec = Some(prec.map_or(p, |q: i64| q.min(p)));
            }
            row.push(if t.is_zero() { b.zero() } else { int_rep(b, &t)? });
        }
        rows.push(row);
    }
    let det = bareiss_det(b, rows);
    Ok(LocalElem::from_comps(b, 1, vec![(0, det)], prec))
}

/// val(ρ) = δ + min over coordinates and point pairs of val(p_j(x_i) - p_k(x_i)).
pub fn rho_val<B: Base>(b: &B, coords: &[Vec<LocalElem<B::Int>>], delta: &BigRational) -> Valuation {
    let mut best = Valuation::Infinite;
    for (j, pj) in coords.iter().enumerate() {
        for pk in &coords[j + 1..] {
            for (x, y) in pj.iter().zip(pk) {
                let d = x.sub(b, y);
                let v = if d.is_zero() { d.precision() } else { d.valuation(b) };
                best = best.min(v);
            }
        }
    }
    match best {
        Valuation::Finite(v) => Valuation::Finite(v + delta),
        Valuation::Infinite => Valuation::Infinite,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperCheck {
    /// Lower bound for val(Δ) (exact unless `det_known` is false).
    pub val_det: Valuation,
    pub det_known: bool,
    pub s: u64,
    pub val_rho: Valuation,
    pub holds: bool,
}

/// Checks val(Δ^D) ≥ S(μ(D), d, E)·val(ρ) at local points.
pub fn det_upper_check<B: Base>(
    b: &B,
    fvals: &[Vec<LocalElem<B::Int>>],
    coords: &[Vec<LocalElem<B::Int>>],
    d: u32,
    e: u32,
    degree: u32,
    delta: &BigRational,
) -> Result<UpperCheck, DetError> {
    let ms = MonomialSet::new(degree, d as usize + 1);
    let det = local_interp_det(b, fvals, &ms)?;
    let s = exact_exponent(ms.len() as u64, d, e);
    let val_rho = rho_val(b, coords, delta);
    let (val_det, det_known) = if det.is_zero() { (det.precision(), false) } else { (det.valuation(b), true) };
    let need = match &val_rho {
        Valuation::Finite(r) => Valuation::Finite(r * BigInt::from(s)),
        Valuation::Infinite => Valuation::Infinite,
    };
    let holds = if s == 0 { true } else { val_det >= need };
    Ok(UpperCheck { val_det, det_known, s, val_rho, holds })
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |a, k| a * k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldShape {
    pub kind: FieldKind,
    pub p: u64,
    pub q: u64,
    pub sigma: u32,
}

impl FieldShape {
    pub fn of<B: Base>(b: &B, sigma: u32) -> Self {
        FieldShape { kind: b.kind(), p: b.p(), q: b.q(), sigma }
    }
}

/// V_low: a nonzero Δ^D built from points of height ≤ H has valuation at
/// most this. t-adic: (d+2)Dμh. p-adic: σ(⌈log_p μ!⌉) + ⌊log_p H^(σ(d+2)Dμ)⌋.
pub fn det_lower_bound(shape: FieldShape, height: &BigUint, degree: u32, mu: u64, d: u32) -> u64 {
    let k = (d as u64 + 2) * degree as u64 * mu;
    match shape.kind {
        FieldKind::Tadic => k * floor_log(height, shape.q) as u64,
        FieldKind::Padic => {
            let lf = ceil_log(&factorial(mu), shape.p) as u64;
            let hk = height.pow((k * shape.sigma as u64) as u32);
            shape.sigma as u64 * lf + floor_log(&hk, shape.p) as u64
        }
    }
}

/// V_low at height q (t-adic) or p (p-adic), i.e. h = 1.
fn lower_bound_h1(shape: FieldShape, degree: u32, d: u32) -> u64 {
    let base = match shape.kind {
        FieldKind::Tadic => shape.q,
        FieldKind::Padic => shape.p,
    };
    det_lower_bound(shape, &BigUint::from(base), degree, mu(degree, d), d)
}

pub const DEGREE_CEILING: u32 = 5000;

/// Minimal D with S(μ(D), d, E)·ε > V_low(h = 1). Since V_low is affine in
/// h with non-negative constant term, this gives S·ε·h > V_low(h) for
/// every h ≥ 1.
pub fn choose_degree(d: u32, eps: &BigRational, e: u32, shape: FieldShape) -> Result<u32, DetError> {
    if !eps.is_positive() {
        return Err(DetError::NoSolution(0));
    }
    for degree in 1..=DEGREE_CEILING {
        let m = mu(degree, d);
        let s = BigRational::from_integer(exact_exponent(m, d, e).into());
        if s * eps > BigRational::from_integer(lower_bound_h1(shape, degree, d).into()) {
            return Ok(degree);
        }
    }
    Err(DetError::NoSolution(DEGREE_CEILING))
}

/// Minimal D with S(μ(D), d, E)·δ > V_low(H): with ρ ≤ |t|^δ, every
/// μ(D)-tuple then has vanishing determinant.
pub fn polylog_degree(d: u32, delta: &BigRational, e: u32, shape: FieldShape, height: &BigUint) -> Result<u32, DetError> {
    if !delta.is_positive() {
        return Err(DetError::NoSolution(0));
    }
    for degree in 1..=DEGREE_CEILING {
        let m = mu(degree, d);
        let s = BigRational::from_integer(exact_exponent(m, d, e).into());
        if s * delta > BigRational::from_integer(det_lower_bound(shape, height, degree, m, d).into()) {
            return Ok(degree);
        }
    }
    Err(DetError::NoSolution(DEGREE_CEILING))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersurface<I> {
    pub degree: u32,
    /// Indices (0-based) into the distinguished functions.
    pub vars: Vec<usize>,
    pub monomials: Vec<Vec<u32>>,
    pub coeffs: Vec<I>,
}

impl<I: Clone> Hypersurface<I> {
    pub fn eval<B: Base<Int = I>>(&self, b: &B, f: &[Frac<I>]) -> Frac<I> {
        let x: Vec<&Frac<I>> = self.vars.iter().map(|&i| &f[i]).collect();
        let mut acc = b.f_zero();
        for (nu, c) in self.monomials.iter().zip(&self.coeffs) {
            if b.is_zero(c) {
                continue;
            }
            let mut t = b.f_int(c.clone());
            for (v, &k) in x.iter().zip(nu) {
                if k > 0 {
                    t = b.f_mul(&t, &b.f_pow(v, k));
                }
            }
            acc = b.f_add(&acc, &t);
        }
        acc
    }

    pub fn vanishes_at<B: Base<Int = I>>(&self, b: &B, f: &[Frac<I>]) -> bool {
        b.f_is_zero(&self.eval(b, f))
    }

    /// Degree of the nonzero part.
    pub fn actual_degree<B: Base<Int = I>>(&self, b: &B) -> u32 {
        self.monomials
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !b.is_zero(c))
            .map(|(nu, _)| nu.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn to_json<B: Base<Int = I>>(&self, b: &B) -> Value {
        json!({
            "degree": self.degree,
            "vars": self.vars.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "coeffs": self.monomials.iter().zip(&self.coeffs).filter(|(_, c)| !b.is_zero(c)).map(|(nu, c)| json!({
                "exp": nu,
                "value": b.fmt_int(c),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json<B: Base<Int = I>>(b: &B, v: &Value) -> Result<Self, DetError> {
        let bad = |m: &str| DetError::BadInput(m.to_string());
        let degree = v["degree"].as_u64().ok_or_else(|| bad("degree"))? as u32;
        let vars: Vec<usize> = v["vars"]
            .as_array()
            .ok_or_else(|| bad("vars"))?
            .iter()
            .map(|x| x.as_u64().map(|k| k as usize - 1).ok_or_else(|| bad("vars")))
            .collect::<Result<_, _>>()?;
        let mut monomials = Vec::new();
        let mut coeffs = Vec::new();
        for c in v["coeffs"].as_array().ok_or_else(|| bad("coeffs"))? {
            let exp: Vec<u32> = serde_json::from_value(c["exp"].clone()).map_err(|e| bad(&e.to_string()))?;
            let val = b.parse_int(c["value"].as_str().ok_or_else(|| bad("value"))?)?;
            monomials.push(exp);
            coeffs.push(val);
        }
        Ok(Hypersurface { degree, vars, monomials, coeffs })
    }
}

/// A nonzero polynomial of degree ≤ D in the variables `vars` vanishing at
/// every point, or `None` when the evaluation matrix has full column rank.
pub fn find_hypersurface<B: Base>(
    b: &B,
    fvals: &[Vec<Frac<B::Int>>],
    degree: u32,
    vars: &[usize],
) -> Option<Hypersurface<B::Int>> {
    let ms = MonomialSet::new(degree, vars.len());
    let rows: Vec<Vec<B::Int>> = fvals
        .iter()
        .map(|f| {
            let sub: Vec<Frac<B::Int>> = vars.iter().map(|&i| f[i].clone()).collect();
            cleared_row(b, &sub, &ms).0
        })
        .collect();
    let (_, v) = nullspace_vector(b, rows, ms.len());
    v.map(|coeffs| Hypersurface { degree, vars: vars.to_vec(), monomials: ms.members, coeffs })
}

/// The lowest-degree hypersurface (degree ≤ `max_degree`) through the points.
pub fn minimal_hypersurface<B: Base>(
    b: &B,
    fvals: &[Vec<Frac<B::Int>>],
    max_degree: u32,
    vars: &[usize],
) -> Option<Hypersurface<B::Int>> {
    (1..=max_degree).find_map(|k| find_hypersurface(b, fvals, k, vars))
}

/// Smallest degree whose monomial count exceeds `npoints` (a hypersurface
/// always exists there).
pub fn underdetermined_degree(npoints: usize, d: u32) -> u32 {
    (1..).find(|&k| mu(k, d) as usize > npoints).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// hε ≥ 2d: split into residue balls.
    Large,
    /// A single hypersurface.
    Small,
}

#[derive(Clone, Debug)]
pub struct CoverParams {
    pub d: u32,
    pub eps: BigRational,
    pub e: u32,
    pub shape: FieldShape,
    pub delta: BigRational,
    /// Coordinates used for the residue-ball split.
    pub retained: Vec<usize>,
    /// Distinguished functions forming the hypersurface variables.
    pub vars: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CoverEntry<I> {
    pub key: BallKey<I>,
    pub hyp: Hypersurface<I>,
    /// Indices into the input point list.
    pub points: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Cover<I> {
    pub branch: Branch,
    pub depth: u32,
    /// Degree bound from the determinant inequality (`None` when the
    /// radius gives no bound and only the point count limits the degree).
    pub d_prime: Option<u32>,
    pub entries: Vec<CoverEntry<I>>,
}

impl<I> Cover<I> {
    pub fn max_degree(&self) -> u32 {
        self.entries.iter().map(|e| e.hyp.degree).max().unwrap_or(0)
    }
}

/// Depth m = ⌈log_r(H)·ε/(2d)⌉ (r = q or p), or `None` when hε < 2d.
pub fn ball_depth(shape: FieldShape, height: &BigUint, eps: &BigRational, d: u32) -> Option<u32> {
    let r = match shape.kind {
        FieldKind::Tadic => shape.q,
        FieldKind::Padic => shape.p,
    };
    let num = eps.numer().to_u32()?;
    let den = eps.denom().to_u32()?;
    let hn = height.pow(num);
    // hε/(2d) ≥ 1  ⟺  H^num ≥ r^(2d·den)
    if hn < BigUint::from(r).pow(2 * d * den) {
        return None;
    }
    (1..).find(|&m| BigUint::from(r).pow(m * 2 * d * den) >= hn)
}

/// Covers the points by hypersurfaces: one per occupied residue ball at
/// depth m when hε ≥ 2d, else a single one.
pub fn cover_by_hypersurfaces<B: Base>(
    b: &B,
    points: &[PointRecord<B::Int>],
    height: &BigUint,
    params: &CoverParams,
) -> Result<Cover<B::Int>, DetError> {
    let d = params.d;
    let (branch, depth, d_prime) = match ball_depth(params.shape, height, &params.eps, d) {
        Some(m) => {
            let e2 = &params.eps / BigRational::from_integer((2 * d).into());
            (Branch::Large, m, Some(choose_degree(d, &e2, params.e, params.shape)?))
        }
        None => {
            let e2 = &params.delta * &params.eps / BigRational::from_integer((2 * d).into());
            (Branch::Small, 0, choose_degree(d, &e2, params.e, params.shape).ok())
        }
    };
    let balls: BTreeMap<BallKey<B::Int>, Vec<usize>> = if branch == Branch::Large {
        let parts = ball_split(b, points, depth, &params.retained)?;
        let mut idx: BTreeMap<BallKey<B::Int>, Vec<usize>> = BTreeMap::new();
        for (k, ps) in parts {
            let ids = ps.iter().map(|p| points.iter().position(|q| q.coords == p.coords).unwrap()).collect();
            idx.insert(k, ids);
        }
        idx
    } else {
        let mut m = BTreeMap::new();
        m.insert(BallKey { depth: 0, residues: Vec::new() }, (0..points.len()).collect());
        m
    };
    let entries: Vec<Result<CoverEntry<B::Int>, DetError>> = balls
        .into_par_iter()
        .map(|(key, ids)| {
            let fv: Vec<Vec<Frac<B::Int>>> = ids.iter().map(|&i| points[i].f_values.clone()).collect();
            let cap = d_prime.unwrap_or_else(|| underdetermined_degree(fv.len(), d));
            let hyp = minimal_hypersurface(b, &fv, cap, &params.vars).ok_or(DetError::NotFound(cap))?;
            for f in &fv {
                if !hyp.vanishes_at(b, f) {
                    return Err(DetError::Invariant("emitted hypersurface misses a covered point".into()));
                }
            }
            Ok(CoverEntry { key, hyp, points: ids })
        })
        .collect();
    let entries = entries.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(Cover { branch, depth, d_prime, entries })
}

#[derive(Clone, Debug)]
pub struct Polylog<I> {
    pub hyp: Hypersurface<I>,
    /// Degree from the determinant inequality with ρ ≤ |t|^δ.
    pub bound: u32,
    /// bound / h^d.
    pub c: BigRational,
}

/// One hypersurface through all points, of degree at most the bound with
/// ρ ≤ |t|^δ.
pub fn polylog_hypersurface<B: Base>(
    b: &B,
    points: &[PointRecord<B::Int>],
    height: &BigUint,
    d: u32,
    e: u32,
    shape: FieldShape,
    delta: &BigRational,
    vars: &[usize],
) -> Result<Polylog<B::Int>, DetError> {
    let bound = polylog_degree(d, delta, e, shape, height)?;
    let fv: Vec<Vec<Frac<B::Int>>> = points.iter().map(|p| p.f_values.clone()).collect();
    let hyp = minimal_hypersurface(b, &fv, bound, vars).ok_or(DetError::NotFound(bound))?;
    for f in &fv {
        if !hyp.vanishes_at(b, f) {
            return Err(DetError::Invariant("polylog hypersurface misses a point".into()));
        }
    }
    let r = match shape.kind {
        FieldKind::Tadic => shape.q,
        FieldKind::Padic => shape.p,
    };
    let h = floor_log(height, r).max(1);
    let c = BigRational::new(bound.into(), BigInt::from(h).pow(d));
    Ok(Polylog { hyp, bound, c })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgFlag {
    Contained,
    FiniteIntersection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgVerdict {
    pub flag: AlgFlag,
    /// The verdict holds only to the working precision.
    pub to_precision: bool,
}

fn vanishes_to<B: Base>(s: &PowerSeries<B>, prec: &BigRational) -> bool {
    let terms_ok = s.terms().values().all(|c| &s.coef_val(c) >= prec);
    let err_ok = s.err().is_none_or(|e| &e.e0 >= prec && e.w.iter().all(|w| !w.is_negative()));
    terms_ok && err_ok
}

/// Whether Q(f) reduces to zero in the presented algebra to precision.
pub fn algebraic_flag<B: Base>(
    hyp: &Hypersurface<B::Int>,
    alg: &PresentedAlgebra<B>,
    f: &Distinguished,
    prec: i64,
) -> Result<AlgVerdict, DetError> {
    let b = &alg.base;
    let fs: Vec<PowerSeries<B>> = match f {
        Distinguished::Coordinates => hyp.vars.iter().map(|&i| alg.coordinate(i)).collect(),
        Distinguished::Series(defs) => hyp
            .vars
            .iter()
            .map(|&i| defs[i].materialize(b, &alg.delta, prec))
            .collect::<Result<_, _>>()?,
    };
    let mut qf = alg.coordinate(0).zero_like();
    for (nu, c) in hyp.monomials.iter().zip(&hyp.coeffs) {
        if b.is_zero(c) {
            continue;
        }
        let mut t = PowerSeries::constant(b, alg.nvars, alg.delta.clone(), LocalElem::from_int(b, c.clone()));
        for (fi, &k) in fs.iter().zip(nu) {
            if k > 0 {
                t = t.mul(&fi.pow(k));
            }
        }
        qf = qf.add(&t);
    }
    let parts = module_decompose(&qf, alg)?;
    let p = BigRational::from_integer(prec.into());
    let contained = parts.iter().all(|s| vanishes_to(s, &p));
    let exact = parts.iter().all(|s| s.is_exact() && s.terms().is_empty());
    Ok(AlgVerdict {
        flag: if contained { AlgFlag::Contained } else { AlgFlag::FiniteIntersection },
        to_precision: contained && !exact,
    })
}
