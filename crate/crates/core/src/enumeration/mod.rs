//! Rational points of bounded height in the unit polydisc, membership on a
//! presented analytic set, and residue-ball subdivision.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::field_tower::reconstruct::{floor_log, required_precision};
use crate::field_tower::{rational_reconstruct, Base, FieldError, FieldKind, Frac, LocalElem};
use crate::tate_series::{CoordChange, PowerSeries, PresentedAlgebra, SeriesDef, SeriesError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("unsupported presentation: {0}")]
    Unsupported(String),
    #[error("search space too large: {0} tuples")]
    TooLarge(u128),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// All reduced values of height ≤ H with non-negative valuation, each once.
///
/// p-adic: ordered by height, then numerator, then denominator. t-adic:
/// ordered by max degree, then numerator and denominator coefficients.
pub fn enum_heights<B: Base>(b: &B, h: &BigUint) -> Vec<Frac<B::Int>> {
    match b.kind() {
        FieldKind::Padic => enum_padic(b, h),
        FieldKind::Tadic => enum_tadic(b, floor_log(h, b.q())),
    }
}

fn enum_padic<B: Base>(b: &B, h: &BigUint) -> Vec<Frac<B::Int>> {
    let hmax: i64 = u64::try_from(h).expect("height bound fits in u64") as i64;
    let p = b.p() as i64;
    let mut out = vec![b.f_zero()];
    for k in 1..=hmax {
        let mut level = Vec::new();
        for a in -k..=k {
            for d in 1..=k {
                if a == 0 || a.abs().max(d) != k || d % p == 0 || num_integer::gcd(a, d) != 1 {
                    continue;
                }
                level.push((a, d));
            }
        }
        level.sort();
        out.extend(level.into_iter().map(|(a, d)| b.frac(b.from_i64(a), b.from_i64(d)).unwrap()));
    }
    out
}

/// Polynomials of degree ≤ k as coefficient lists (lowest first), in
/// increasing degree and then lexicographic order.
fn polys_up_to<B: Base>(b: &B, k: u32) -> Vec<B::Int> {
    let digits = b.digits();
    let q = digits.len();
    let mut out = vec![b.zero()];
    for deg in 0..=k {
        // leading coefficient nonzero, lower ones arbitrary
        let count = (q - 1) * q.pow(deg);
        for idx in 0..count {
            let mut rest = idx;
            let mut coeffs = Vec::with_capacity(deg as usize + 1);
            for _ in 0..deg {
                coeffs.push(rest % q);
                rest /= q;
            }
            coeffs.push(rest + 1);
            let mut v = b.zero();
            for (i, &c) in coeffs.iter().enumerate() {
                v = b.add(&v, &b.mul(&digits[c], &b.pi_pow(i as u32)));
            }
            out.push(v);
        }
    }
    out
}

fn enum_tadic<B: Base>(b: &B, h: u32) -> Vec<Frac<B::Int>> {
    let nums = polys_up_to(b, h);
    let dens: Vec<B::Int> = nums
        .iter()
        .filter(|d| !b.is_zero(d) && b.normalize(d).0 == **d && b.val(d) == Some(0))
        .cloned()
        .collect();
    let deg = |a: &B::Int| b.euclid_size(a);
    let mut out = Vec::new();
    for a in &nums {
        for d in &dens {
            if b.is_zero(a) && !b.is_one(d) {
                continue;
            }
            if !b.is_unit(&b.gcd(a, d)) && !b.is_zero(a) {
                continue;
            }
            out.push(Frac { num: a.clone(), den: d.clone() });
        }
    }
    out.sort_by(|x, y| {
        let kx = deg(&x.num).max(deg(&x.den));
        let ky = deg(&y.num).max(deg(&y.den));
        kx.cmp(&ky).then_with(|| x.num.cmp(&y.num)).then_with(|| x.den.cmp(&y.den))
    });
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointRecord<I> {
    pub coords: Vec<Frac<I>>,
    pub local: Vec<LocalElem<I>>,
    pub f_values: Vec<Frac<I>>,
    pub height: BigUint,
    /// Membership is certified only to a precision below the guard.
    pub ambiguous: bool,
    /// Membership was decided by exact evaluation.
    pub exact: bool,
}

impl<I> PointRecord<I> {
    pub fn to_json<B: Base<Int = I>>(&self, b: &B) -> Value {
        json!({
            "coords": self.coords.iter().map(|v| b.fmt_frac(v)).collect::<Vec<_>>(),
            "f_values": self.f_values.iter().map(|v| b.fmt_frac(v)).collect::<Vec<_>>(),
            "height": self.height.to_string(),
            "ambiguous": self.ambiguous,
            "exact": self.exact,
        })
    }
}

/// Which functions f_1..f_m the heights and determinants are taken of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Distinguished {
    Coordinates,
    Series(Vec<SeriesDef>),
}

#[derive(Clone, Debug)]
pub struct PointSet<I> {
    pub points: Vec<PointRecord<I>>,
    pub work_prec: i64,
    /// Points dropped because an f-value has height above the bound.
    pub excluded: usize,
}

impl<I> PointSet<I> {
    pub fn ambiguous(&self) -> usize {
        self.points.iter().filter(|p| p.ambiguous).count()
    }

    /// Points whose membership holds only to the working precision.
    pub fn inexact(&self) -> usize {
        self.points.iter().filter(|p| !p.exact).count()
    }

    pub fn same_points(&self, other: &Self) -> bool
    where
        I: PartialEq,
    {
        self.points.len() == other.points.len() && self.points.iter().zip(&other.points).all(|(a, b)| a.coords == b.coords)
    }
}

/// Working precision 2h + 8 (t-adic) or the reconstruction requirement
/// plus 8 (p-adic).
pub fn default_work_prec<B: Base>(b: &B, h: &BigUint) -> i64 {
    match b.kind() {
        FieldKind::Tadic => 2 * floor_log(h, b.q()) as i64 + 8,
        FieldKind::Padic => required_precision(b, h) as i64 + 8,
    }
}

pub fn embed<B: Base>(b: &B, v: &Frac<B::Int>, prec: i64) -> Result<LocalElem<B::Int>, FieldError> {
    match LocalElem::from_frac_exact(b, v) {
        Some(x) => Ok(x),
        None => LocalElem::from_frac(b, v, 1, prec),
    }
}

/// Exact value of a polynomial generator at a global point, when the
/// generator has no error term and no fractional valuation shifts.
pub fn exact_eval<B: Base>(g: &PowerSeries<B>, point: &[Frac<B::Int>]) -> Option<Frac<B::Int>> {
    if !g.is_exact() {
        return None;
    }
    let b = g.base();
    let mut acc = b.f_zero();
    for (nu, c) in g.terms() {
        let comps = c.components();
        if comps.iter().any(|(r, _)| *r != 0) {
            return None;
        }
        let mut term = b.f_int(comps.first().map(|x| x.1.clone()).unwrap_or_else(|| b.zero()));
        for (x, &k) in point.iter().zip(nu) {
            if k > 0 {
                term = b.f_mul(&term, &b.f_pow(x, k));
            }
        }
        acc = b.f_add(&acc, &term);
    }
    Some(acc)
}

fn binom(n: u32, k: u32) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k as i64 {
        r = r * (n as i64 - i) / (i + 1);
    }
    r
}

/// Lower bound for the valuation (units of 1/n): exact valuation, or the
/// precision when zero to precision, or `None` for exact zero.
fn val_lb<I: Clone + Eq + Ord + std::fmt::Debug + std::hash::Hash + Send + Sync, B: Base<Int = I>>(b: &B, x: &LocalElem<I>) -> Option<i64> {
    if x.is_zero() {
        x.prec_units()
    } else {
        x.val_units(b)
    }
}

const CANDIDATE_LIMIT: usize = 4096;

/// Residues y mod π^levels (y integral) that pass the Newton test for a
/// root of `sum c_k y^k` at every digit. `None` when the polynomial
/// vanishes identically to precision or the candidates explode.
pub fn lift_roots<B: Base>(b: &B, coeffs: &[LocalElem<B::Int>], levels: u32) -> Option<Vec<B::Int>> {
    let deg = coeffs.len().saturating_sub(1);
    if coeffs.iter().all(|c| c.is_zero()) {
        return None;
    }
    if coeffs[1..].iter().all(|c| c.is_zero()) {
        return Some(Vec::new());
    }
    let n = coeffs.iter().map(|c| c.root()).max().unwrap_or(1);
    if deg == 1 && n == 1 {
        // a unit linear coefficient has exactly one root
        if let (Some(c0), Some(c1)) = (known_mod(b, &coeffs[0], levels), known_mod(b, &coeffs[1], levels)) {
            if let Some(inv) = b.inv_mod_pi_pow(&c1, levels) {
                return Some(vec![b.mod_pi_pow(&b.neg(&b.mul(&c0, &inv)), levels)]);
            }
        }
    }
    let coeffs: Vec<LocalElem<B::Int>> = coeffs.iter().map(|c| c.lift(b, n)).collect();
    let digits = b.digits();
    let mut cands = vec![b.zero()];
    for k in 0..levels {
        let pk = b.pi_pow(k);
        let mut next = Vec::new();
        for y0 in &cands {
            for d in &digits {
                let y1 = b.add(y0, &b.mul(d, &pk));
                let y = LocalElem::from_int(b, y1.clone()).lift(b, n);
                let mut ypow = vec![LocalElem::from_int(b, b.one()).lift(b, n)];
                for i in 1..=deg {
                    ypow.push(ypow[i - 1].mul(b, &y));
                }
                let q = |j: usize| {
                    let mut acc = LocalElem::zero(n);
                    for i in j..=deg {
                        let c = LocalElem::from_int(b, b.from_i64(binom(i as u32, j as u32))).lift(b, n);
                        acc = acc.add(b, &c.mul(b, &coeffs[i]).mul(b, &ypow[i - j]));
                    }
                    acc
                };
                let q0 = q(0);
                let keep = if q0.is_zero() {
                    true
                } else {
                    let v0 = q0.val_units(b).unwrap();
                    let step = (k as i64 + 1) * n as i64;
                    (1..=deg).any(|j| match val_lb(b, &q(j)) {
                        None => false,
                        Some(v) => v + step * j as i64 <= v0,
                    })
                };
                if keep {
                    next.push(y1);
                }
            }
        }
        if next.len() > CANDIDATE_LIMIT {
            return None;
        }
        cands = next;
        if cands.is_empty() {
            break;
        }
    }
    Some(cands)
}

/// Residue mod π^k of an n = 1 element known to at least that precision.
fn known_mod<B: Base>(b: &B, x: &LocalElem<B::Int>, k: u32) -> Option<B::Int> {
    if x.root() != 1 || x.components().iter().any(|(r, _)| *r != 0) {
        return None;
    }
    if x.prec_units().is_some_and(|p| p < k as i64) {
        return None;
    }
    let c = x.components().first().map(|(_, c)| c.clone()).unwrap_or_else(|| b.zero());
    Some(b.mod_pi_pow(&c, k))
}

/// Generator index and the coordinate solved from it (`None`: check only).
fn solve_plan<B: Base>(alg: &PresentedAlgebra<B>) -> Vec<(usize, Option<usize>)> {
    if let Some(w) = &alg.witness {
        if w.is_identity() && !w.steps.is_empty() {
            let mut plan: Vec<(usize, Option<usize>)> = w.steps.iter().map(|s| (s.generator, Some(s.var))).collect();
            for j in 0..alg.generators.len() {
                if !plan.iter().any(|p| p.0 == j) {
                    plan.push((j, None));
                }
            }
            return plan;
        }
    }
    let mut taken: Vec<usize> = Vec::new();
    let mut plan = Vec::new();
    for (j, g) in alg.generators.iter().enumerate() {
        let var = (0..alg.nvars).rev().find(|&v| g.involves(v) && !taken.contains(&v));
        if let Some(v) = var {
            taken.push(v);
        }
        plan.push((j, var));
    }
    plan
}

struct Ctx<'a, B: Base> {
    b: &'a B,
    alg: &'a PresentedAlgebra<B>,
    plan: Vec<(usize, Option<usize>)>,
    values: &'a [Frac<B::Int>],
    h: &'a BigUint,
    prec: i64,
    guard: i64,
}

/// Candidate solutions for one enumerated tuple: (coords, exact, certified precision).
type Found<I> = (Vec<Frac<I>>, bool, Option<i64>);

impl<B: Base> Ctx<'_, B> {
    fn solve(&self, k: usize, point: &mut Vec<Option<Frac<B::Int>>>, out: &mut Vec<Found<B::Int>>) -> Result<(), EnumError> {
        if k == self.plan.len() {
            let full: Vec<Frac<B::Int>> = point.iter().map(|x| x.clone().expect("all coordinates fixed")).collect();
            if let Some((exact, cert)) = self.verify(&full)? {
                out.push((full, exact, cert));
            }
            return Ok(());
        }
        let (gi, var) = self.plan[k];
        let Some(v) = var else {
            return self.solve(k + 1, point, out);
        };
        if point[v].is_some() {
            return self.solve(k + 1, point, out);
        }
        let b = self.b;
        let g = &self.alg.generators[gi];
        let pt: Vec<Option<LocalElem<B::Int>>> =
            point.iter().map(|x| x.as_ref().map(|x| embed(b, x, self.prec)).transpose()).collect::<Result<_, _>>()?;
        let (parts, _, _) = match g.partial_eval(&pt) {
            Ok(x) => x,
            Err(SeriesError::OutOfDisc(_)) => return Ok(()),
            Err(e) => return Err(e.into()),
        };
        let mut coeffs: Vec<LocalElem<B::Int>> = Vec::new();
        for (nu, c) in parts {
            if nu.iter().enumerate().any(|(i, &e)| e > 0 && (i != v)) {
                return Err(EnumError::Unsupported(format!("generator {} is not triangular in the solve order", gi + 1)));
            }
            let e = nu[v] as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, LocalElem::zero(c.root()));
            }
            coeffs[e] = coeffs[e].add(b, &c);
        }
        let roots = if coeffs.is_empty() { None } else { lift_roots(b, &coeffs, self.prec as u32) };
        let cands: Vec<Frac<B::Int>> = match roots {
            None => self.values.to_vec(),
            Some(rs) => {
                let mut vals = Vec::new();
                for r in rs {
                    let x = LocalElem::from_comps(b, 1, vec![(0, r)], Some(self.prec));
                    if let Some(y) = rational_reconstruct(b, &x, self.h)? {
                        if !vals.contains(&y) {
                            vals.push(y);
                        }
                    }
                }
                vals
            }
        };
        for y in cands {
            point[v] = Some(y);
            self.solve(k + 1, point, out)?;
        }
        point[v] = None;
        Ok(())
    }

    /// `Some((exact, certified precision))` when every generator vanishes.
    fn verify(&self, full: &[Frac<B::Int>]) -> Result<Option<(bool, Option<i64>)>, EnumError> {
        let b = self.b;
        let mut exact = true;
        let mut cert: Option<i64> = None;
        let mut local: Option<Vec<LocalElem<B::Int>>> = None;
        for g in &self.alg.generators {
            if let Some(v) = exact_eval(g, full) {
                if !b.f_is_zero(&v) {
                    return Ok(None);
                }
                continue;
            }
            exact = false;
            if local.is_none() {
                local = Some(full.iter().map(|x| embed(b, x, self.prec)).collect::<Result<_, _>>()?);
            }
            let val = match g.evaluate(local.as_ref().unwrap()) {
                Ok(v) => v,
                Err(SeriesError::OutOfDisc(_)) => return Ok(None),
                Err(e) => return Err(e.into()),
            };
            if !val.is_zero() {
                return Ok(None);
            }
            if let Some(p) = val.prec_units() {
                let p = p / val.root() as i64;
                cert = Some(cert.map_or(p, |c: i64| c.min(p)));
            }
        }
        Ok(Some((exact, cert)))
    }
}

/// Membership test for all points of height ≤ H in the unit polydisc.
///
/// Coordinates eliminated by the normalization witness (or, without one,
/// the last coordinate each generator involves) are solved by digit-wise
/// root lifting and rational reconstruction; the rest are enumerated.
pub fn points_on_set<B: Base>(
    alg: &PresentedAlgebra<B>,
    f: &Distinguished,
    h: &BigUint,
    work_prec: Option<i64>,
) -> Result<PointSet<B::Int>, EnumError> {
    let b = &alg.base;
    let guard = required_precision(b, h) as i64;
    let prec = work_prec.unwrap_or_else(|| default_work_prec(b, h)).max(guard);
    if alg.is_unit_ideal() {
        return Ok(PointSet { points: Vec::new(), work_prec: prec, excluded: 0 });
    }
    let alg = if alg.defs.is_empty() { alg.clone() } else { alg.with_precision(prec)? };
    let values = enum_heights(b, h);
    let plan = solve_plan(&alg);
    let solved: Vec<usize> = plan.iter().filter_map(|p| p.1).collect();
    let free: Vec<usize> = (0..alg.nvars).filter(|i| !solved.contains(i)).collect();
    let total = (values.len() as u128).checked_pow(free.len() as u32).unwrap_or(u128::MAX);
    if total > 200_000_000 {
        return Err(EnumError::TooLarge(total));
    }
    let ctx = Ctx { b, alg: &alg, plan, values: &values, h, prec, guard };
    let fdefs: Option<Vec<PowerSeries<B>>> = match f {
        Distinguished::Coordinates => None,
        Distinguished::Series(defs) => {
            Some(defs.iter().map(|d| d.materialize(b, &alg.delta, prec)).collect::<Result<_, _>>()?)
        }
    };
    let results: Vec<Result<Vec<Found<B::Int>>, EnumError>> = (0..total as u64)
        .into_par_iter()
        .map(|idx| {
            let mut point: Vec<Option<Frac<B::Int>>> = vec![None; alg.nvars];
            let mut rest = idx as usize;
            for &i in free.iter().rev() {
                point[i] = Some(values[rest % values.len()].clone());
                rest /= values.len();
            }
            let mut out = Vec::new();
            ctx.solve(0, &mut point, &mut out)?;
            Ok(out)
        })
        .collect();
    let mut points = Vec::new();
    let mut excluded = 0;
    for r in results {
        let found = r?;
        let inexact = found.iter().filter(|f| !f.1).count();
        for (coords, exact, cert) in found {
            let ambiguous = !exact && (inexact > 1 || cert.is_some_and(|c| c < ctx.guard));
            let local: Vec<LocalElem<B::Int>> = coords.iter().map(|x| embed(b, x, prec)).collect::<Result<_, _>>()?;
            let f_values = match &fdefs {
                None => coords.clone(),
                Some(fs) => {
                    let mut vals = Vec::with_capacity(fs.len());
                    for fs in fs {
                        let v = match exact_eval(fs, &coords) {
                            Some(v) => Some(v),
                            None => rational_reconstruct(b, &fs.evaluate(&local)?, h)?,
                        };
                        match v {
                            Some(v) if &b.height(&v) <= h => vals.push(v),
                            _ => break,
                        }
                    }
                    if vals.len() < fs.len() {
                        excluded += 1;
                        continue;
                    }
                    vals
                }
            };
            let height = coords.iter().map(|x| b.height(x)).max().unwrap_or_else(|| BigUint::from(1u32));
            points.push(PointRecord { coords, local, f_values, height, ambiguous, exact });
        }
    }
    Ok(PointSet { points, work_prec: prec, excluded })
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BallKey<I> {
    pub depth: u32,
    pub residues: Vec<I>,
}

impl<I> BallKey<I> {
    pub fn label<B: Base<Int = I>>(&self, b: &B) -> String {
        let r: Vec<String> = self.residues.iter().map(|x| b.fmt_int(x)).collect();
        format!("{}@{}", r.join(";"), self.depth)
    }
}

/// Residue of an integral value mod π^m.
pub fn residue_mod<B: Base>(b: &B, v: &Frac<B::Int>, m: u32) -> Result<B::Int, FieldError> {
    let x = LocalElem::from_frac(b, v, 1, m as i64)?;
    Ok(x.residue_mod_prec(b).map(|r| r.0).unwrap_or_else(|| b.zero()))
}

/// Partition by residues of the selected coordinates mod π^m.
pub fn ball_split<B: Base>(
    b: &B,
    points: &[PointRecord<B::Int>],
    m: u32,
    coords: &[usize],
) -> Result<BTreeMap<BallKey<B::Int>, Vec<PointRecord<B::Int>>>, FieldError> {
    let mut out: BTreeMap<BallKey<B::Int>, Vec<PointRecord<B::Int>>> = BTreeMap::new();
    for p in points {
        let residues = coords.iter().map(|&i| residue_mod(b, &p.coords[i], m)).collect::<Result<_, _>>()?;
        out.entry(BallKey { depth: m, residues }).or_default().push(p.clone());
    }
    Ok(out)
}

/// The q^n residue vectors whose t-radius polydiscs tile the unit polydisc.
pub fn unit_cover_shifts<B: Base>(b: &B, n: usize) -> Vec<Vec<B::Int>> {
    let digits = b.digits();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * digits.len());
        for v in &out {
            for d in &digits {
                let mut w: Vec<B::Int> = v.clone();
                w.push(d.clone());
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// The algebra pulled back along x = c + t z.
pub fn shifted_algebra<B: Base>(alg: &PresentedAlgebra<B>, shift: &[B::Int]) -> Result<PresentedAlgebra<B>, SeriesError> {
    let b = &alg.base;
    let tr = CoordChange::Translation(shift.iter().map(|c| LocalElem::from_int(b, c.clone())).collect());
    let one = vec![num_rational::BigRational::from_integer(1.into()); alg.nvars];
    let mut gens = Vec::with_capacity(alg.generators.len());
    for g in &alg.generators {
        gens.push(tr.apply(g)?.rescale(&one)?);
    }
    let delta = gens.first().map(|g| g.delta().to_vec()).unwrap_or_else(|| alg.delta.iter().map(|d| d - &one[0]).collect());
    Ok(PresentedAlgebra::from_series(b.clone(), alg.ctx.clone(), delta, gens))
}

/// z = (x - c)/t for a point x in the ball of c.
pub fn to_shifted<B: Base>(b: &B, x: &Frac<B::Int>, c: &B::Int) -> Option<Frac<B::Int>> {
    let d = b.f_sub(x, &b.f_int(c.clone()));
    let z = b.f_div(&d, &b.f_int(b.pi()))?;
    (b.f_val(&z).unwrap_or(0) >= 0).then_some(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_tower::{LocalFieldCtx, PadicBase, TadicBase};
    use num_rational::BigRational;
    use num_traits::Zero;

    #[test]
    fn padic_heights_two() {
        let b = PadicBase::new(5).unwrap();
        let v: Vec<String> = enum_heights(&b, &BigUint::from(2u32)).iter().map(|x| b.fmt_frac(x)).collect();
        assert_eq!(v, ["0", "-1", "1", "-2", "-1/2", "1/2", "2"]);
        assert_eq!(enum_heights(&b, &BigUint::from(1u32)).len(), 3);
    }

    #[test]
    fn tadic_heights_two() {
        let b = TadicBase::new(2).unwrap();
        let v: Vec<String> = enum_heights(&b, &BigUint::from(2u32)).iter().map(|x| b.fmt_frac(x)).collect();
        assert_eq!(v.len(), 6);
        assert!(v.contains(&"t/(t+1)".to_string()));
        assert!(v.contains(&"1/(t+1)".to_string()));
    }

    #[test]
    fn graph_points_at_h2() {
        let b = TadicBase::new(2).unwrap();
        let ctx = LocalFieldCtx::tadic(2, 20).unwrap();
        let def = SeriesDef::parse_json(
            r#"{"terms": [{"exponents": [0, 1], "coeff": [[1]]}],
                "families": [{"var": 0, "coeff": [[1]], "quad": [1, 0, 0]}]}"#,
            2,
        )
        .unwrap();
        let delta = vec![BigRational::from_integer(1.into()), BigRational::zero()];
        let alg = PresentedAlgebra::new(b.clone(), ctx, delta, vec![def]).unwrap();
        let set = points_on_set(&alg, &Distinguished::Coordinates, &BigUint::from(2u32), None).unwrap();
        let pts: Vec<Vec<String>> = set.points.iter().map(|p| p.coords.iter().map(|x| b.fmt_frac(x)).collect()).collect();
        assert_eq!(pts, vec![vec!["0".to_string(), "1".to_string()]]);
        assert_eq!(set.ambiguous(), 0);
    }

    #[test]
    fn empty_and_unit_ideals() {
        let b = PadicBase::new(5).unwrap();
        let ctx = LocalFieldCtx::padic(5, 10).unwrap();
        let d = vec![BigRational::zero()];
        let alg = PresentedAlgebra::from_series(b.clone(), ctx.clone(), d.clone(), vec![]);
        let h = BigUint::from(2u32);
        assert_eq!(points_on_set(&alg, &Distinguished::Coordinates, &h, None).unwrap().points.len(), 7);
        let one = PowerSeries::from_int_terms(&b, d.clone(), vec![(vec![0], 1.into())]);
        let alg = PresentedAlgebra::from_series(b, ctx, d, vec![one]);
        assert!(points_on_set(&alg, &Distinguished::Coordinates, &h, None).unwrap().points.is_empty());
    }

    #[test]
    fn parabola_points() {
        let b = PadicBase::new(5).unwrap();
        let ctx = LocalFieldCtx::padic(5, 10).unwrap();
        let d = vec![BigRational::zero(); 2];
        let g = PowerSeries::from_int_terms(&b, d.clone(), vec![(vec![0, 1], 1.into()), (vec![2, 0], (-1).into())]);
        let alg = PresentedAlgebra::from_series(b.clone(), ctx, d, vec![g]);
        let h = BigUint::from(9u32);
        let set = points_on_set(&alg, &Distinguished::Coordinates, &h, None).unwrap();
        // x with H(x²) ≤ 9: 0, ±1, ±2, ±3, ±1/2, ±3/2, ±1/3, ±2/3
        assert_eq!(set.points.len(), 15);
        for p in &set.points {
            assert_eq!(b.f_mul(&p.coords[0], &p.coords[0]), p.coords[1]);
        }
    }

    #[test]
    fn ball_split_partitions() {
        let b = TadicBase::new(2).unwrap();
        let vals = enum_heights(&b, &BigUint::from(4u32));
        let pts: Vec<PointRecord<_>> = vals
            .iter()
            .map(|v| PointRecord { coords: vec![v.clone()], local: vec![], f_values: vec![v.clone()], height: b.height(v), ambiguous: false, exact: true })
            .collect();
        let parts = ball_split(&b, &pts, 1, &[0]).unwrap();
        assert!(parts.len() <= 2);
        assert_eq!(parts.values().map(|p| p.len()).sum::<usize>(), pts.len());
        assert_eq!(unit_cover_shifts(&TadicBase::new(3).unwrap(), 2).len(), 9);
    }
}
