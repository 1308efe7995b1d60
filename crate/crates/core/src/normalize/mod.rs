//! Single-fiber Weierstrass/Noether normalization over a DVR: content
//! division, choice of M, ε-scaling and the famous coordinate change.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::field_tower::{Base, LocalElem, Valuation};
use crate::tate_series::algebra::monic_unit;
use crate::tate_series::{dot, CoordChange, PowerSeries, PresentedAlgebra, SeriesError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("series is zero")]
    ZeroSeries,
    #[error("content is not determined at the available precision")]
    ContentUndetermined,
    #[error("monic check failed: expected degree {expected} in x{}, found {found:?}", var + 1)]
    MonicCheckFailed { var: usize, expected: u32, found: Option<u32> },
    #[error("unsupported presentation: {0}")]
    UnsupportedPresentation(String),
    #[error("no admissible M below {0}")]
    NoAdmissibleM(u64),
    #[error("normalization did not settle after {0} rounds")]
    IterationCap(u32),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Order with ν < μ iff ν_k < μ_k at the last index k where they differ.
pub fn revlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    assert_eq!(a.len(), b.len());
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return a[i].cmp(&b[i]);
        }
    }
    Ordering::Equal
}

pub fn revlex_less(a: &[u32], b: &[u32]) -> bool {
    revlex_cmp(a, b) == Ordering::Less
}

#[derive(Clone, Debug)]
pub struct ContentData<I> {
    /// Exponents with minimal coefficient valuation, revlex increasing.
    pub generators: Vec<(Vec<u32>, LocalElem<I>)>,
    pub mcd: Vec<u32>,
    pub min_val: Valuation,
}

pub fn content<B: Base>(f: &PowerSeries<B>) -> Result<ContentData<B::Int>, NormalizeError> {
    let Valuation::Finite(v) = f.gauss_norm() else {
        return Err(NormalizeError::ZeroSeries);
    };
    if let Some(e) = f.err() {
        if e.e0 <= v || e.w.iter().any(|w| w.is_negative()) {
            return Err(NormalizeError::ContentUndetermined);
        }
    }
    let mut gens = f.terms_of_valuation(&v);
    gens.sort_by(|a, b| revlex_cmp(&a.0, &b.0));
    let mcd = gens[0].0.clone();
    Ok(ContentData { generators: gens, mcd, min_val: Valuation::Finite(v) })
}

pub fn content_divide<B: Base>(f: &PowerSeries<B>) -> Result<PowerSeries<B>, NormalizeError> {
    let c = content(f)?;
    Ok(f.divide_t_pow(c.min_val.finite().unwrap())?)
}

/// ε_k = 1/M^(M^(n-1-k)) for 0-based k.
pub fn epsilon_vector(m: u64, n: usize) -> Option<Vec<BigRational>> {
    (0..n)
        .map(|k| {
            let e = m.checked_pow((n - 1 - k) as u32)?;
            let e = u32::try_from(e).ok()?;
            Some(BigRational::new(BigInt::one(), BigInt::from(m).pow(e)))
        })
        .collect()
}

/// M^(M^(n-1)), the root index introduced by the scaling.
pub fn root_index(m: u64, n: usize) -> Option<u64> {
    let e = u32::try_from(m.checked_pow((n - 1) as u32)?).ok()?;
    m.checked_pow(e)
}

const M_SEARCH_LIMIT: u64 = 64;

/// Minimal M with char ∤ M, M > |ν0| + 1, M^(M-1) > n|ν0| and δ'' < δ - ε.
pub fn choose_m(
    nu0: &[u32],
    n: usize,
    char: u64,
    delta: &[BigRational],
    delta2: &[BigRational],
) -> Result<u64, NormalizeError> {
    let abs: u64 = nu0.iter().map(|&k| k as u64).sum();
    for m in 2..=M_SEARCH_LIMIT {
        if char != 0 && m % char == 0 {
            continue;
        }
        if m <= abs + 1 {
            continue;
        }
        if BigUint::from(m).pow((m - 1) as u32) <= BigUint::from(n as u64 * abs) {
            continue;
        }
        let Some(eps) = epsilon_vector(m, n) else { continue };
        if root_index(m, n).is_none() {
            continue;
        }
        if delta.iter().zip(delta2).zip(&eps).all(|((d, d2), e)| d2 < &(d - e)) {
            return Ok(m);
        }
    }
    Err(NormalizeError::NoAdmissibleM(M_SEARCH_LIMIT))
}

/// Reads `f mod t^(1/N)` as a polynomial monic in `var`: returns the degree
/// L ≥ 1 and leading coefficient when the reduction is `u·y^L + lower`.
pub fn monic_mod_s<B: Base>(f: &PowerSeries<B>, var: usize) -> Option<(u32, LocalElem<B::Int>)> {
    if let Some(e) = f.err() {
        if !e.e0.is_positive() || e.w.iter().any(|w| w.is_negative()) {
            return None;
        }
    }
    let unit_terms = f.terms_of_valuation(&BigRational::zero());
    let l = unit_terms.iter().map(|(nu, _)| nu[var]).max()?;
    if l == 0 {
        return None;
    }
    let top: Vec<_> = unit_terms.iter().filter(|(nu, _)| nu[var] == l).collect();
    if top.len() != 1 {
        return None;
    }
    let (nu, c) = top[0];
    if nu.iter().enumerate().any(|(i, &k)| i != var && k > 0) {
        return None;
    }
    Some((l, c.clone()))
}

/// Weierstrass degree read off the Newton polygon of `f(0, .., 0, y)`: the
/// largest exponent attaining the minimal coefficient valuation.
pub fn newton_degree<B: Base>(f: &PowerSeries<B>, var: usize) -> Option<u32> {
    let mut best: Option<(BigRational, u32)> = None;
    for (nu, c) in f.terms() {
        if nu.iter().enumerate().any(|(i, &k)| i != var && k > 0) {
            continue;
        }
        let v = f.coef_val(c);
        best = match best {
            None => Some((v, nu[var])),
            Some((bv, bk)) => {
                if v < bv || (v == bv && nu[var] > bk) {
                    Some((v, nu[var]))
                } else {
                    Some((bv, bk))
                }
            }
        };
    }
    best.map(|(_, k)| k)
}

#[derive(Clone, Debug)]
pub struct EliminationStep<B: Base> {
    /// Index of the generator this relation comes from.
    pub generator: usize,
    pub var: usize,
    pub degree: u32,
    /// Valuation divided out of the transformed generator.
    pub shift: BigRational,
    pub relation: PowerSeries<B>,
    pub unit: LocalElem<B::Int>,
    /// No stored term of degree ≥ L in `var` besides the unit one. Truncation
    /// error in the relation is carried through reductions.
    pub exact_monic: bool,
}

#[derive(Clone, Debug)]
pub struct NormalizationWitness<B: Base> {
    pub m: Option<u64>,
    pub root: u64,
    pub eps: Vec<BigRational>,
    pub changes: Vec<CoordChange<B>>,
    pub steps: Vec<EliminationStep<B>>,
    pub e: u32,
    pub retained: Vec<usize>,
    pub retained_delta: Vec<BigRational>,
    pub rounds: u32,
}

impl<B: Base> NormalizationWitness<B> {
    pub fn identity(n: usize, delta: &[BigRational]) -> Self {
        let d = delta.iter().min().cloned().unwrap_or_else(BigRational::zero);
        NormalizationWitness {
            m: None,
            root: 1,
            eps: vec![BigRational::zero(); n],
            changes: Vec::new(),
            steps: Vec::new(),
            e: 1,
            retained: (0..n).collect(),
            retained_delta: vec![d; n],
            rounds: 0,
        }
    }

    /// Whether the retained coordinates are original coordinates.
    pub fn is_identity(&self) -> bool {
        self.changes.is_empty()
    }

    pub fn eliminated(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.var).collect()
    }

    pub fn weierstrass_degree(&self) -> u32 {
        self.steps.first().map(|s| s.degree).unwrap_or(0)
    }

    pub fn transform(&self, f: &PowerSeries<B>) -> Result<PowerSeries<B>, SeriesError> {
        let mut g = f.clone();
        for c in &self.changes {
            g = c.apply(&g)?;
        }
        Ok(g)
    }

    /// Exponents of the eliminated variables in the module basis, in the
    /// order used by `module_decompose`.
    pub fn basis(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for s in &self.steps {
            let mut next = Vec::with_capacity(out.len() * s.degree as usize);
            for b in &out {
                for k in 0..s.degree {
                    let mut v = b.clone();
                    v.push(k);
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    /// Recomputes the stored relations from (re-materialized) generators.
    pub fn rebuild_relations(&mut self, gens: &[PowerSeries<B>]) -> Result<(), SeriesError> {
        let mut steps = std::mem::take(&mut self.steps);
        for s in &mut steps {
            let g = gens.get(s.generator).ok_or(SeriesError::NoWitness)?;
            let rel = self.transform(g)?.divide_t_pow(&s.shift)?;
            s.exact_monic = monic_unit(&rel, s.var, s.degree).is_some();
            s.relation = rel;
        }
        self.steps = steps;
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let names = |v: &[u32]| -> String {
            let parts: Vec<String> = v
                .iter()
                .zip(&self.steps)
                .filter(|(&k, _)| k > 0)
                .map(|(&k, s)| if k == 1 { format!("y{}", s.var + 1) } else { format!("y{}^{k}", s.var + 1) })
                .collect();
            if parts.is_empty() {
                "1".into()
            } else {
                parts.join("*")
            }
        };
        json!({
            "M": self.m,
            "N": self.root,
            "epsilon": self.eps.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "coordinate_change": self.changes.iter().map(|c| c.describe()).collect::<Vec<_>>(),
            "L": self.weierstrass_degree(),
            "E": self.e,
            "retained": self.retained.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "eliminated": self.eliminated().iter().map(|i| i + 1).collect::<Vec<_>>(),
            "retained_delta": self.retained_delta.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "generators": self.basis().iter().map(|b| names(b)).collect::<Vec<_>>(),
            "unit_check": self.steps.iter().map(|s| json!({
                "generator": s.generator,
                "variable": s.var + 1,
                "degree": s.degree,
                "unit": s.unit.components().iter().map(|(r, a)| {
                    let b = s.relation.base();
                    if *r == 0 { b.fmt_int(a) } else { format!("({})*t^({r}/{})", b.fmt_int(a), s.unit.root()) }
                }).collect::<Vec<_>>().join("+"),
                "exact_monic": s.exact_monic,
                "relation": s.relation.fmt_series(),
            })).collect::<Vec<_>>(),
            "rounds": self.rounds,
        })
    }
}

const ROUND_CAP: u32 = 8;

fn step_for<B: Base>(generator: usize, var: usize, degree: u32, shift: BigRational, rel: PowerSeries<B>, unit: LocalElem<B::Int>) -> EliminationStep<B> {
    let exact_monic = monic_unit(&rel, var, degree).is_some();
    EliminationStep { generator, var, degree, shift, relation: rel, unit, exact_monic }
}

fn equalized(delta: &[BigRational], retained: &[usize]) -> Vec<BigRational> {
    let d = retained.iter().map(|&i| delta[i].clone()).min().unwrap_or_else(BigRational::zero);
    vec![d; retained.len()]
}

/// One relation: the identity witness when `F mod t^(1/N)` is already monic
/// in some variable (unless `force_general`), otherwise the scaling and
/// famous change, repeated while the maximal content degree drops.
pub fn normalize_step<B: Base>(
    f: &PowerSeries<B>,
    delta2: &[BigRational],
    force_general: bool,
) -> Result<(NormalizationWitness<B>, PowerSeries<B>), NormalizeError> {
    let n = f.nvars();
    let c = content(f)?;
    let mut shift = c.min_val.finite().unwrap().clone();
    let mut g = f.divide_t_pow(&shift)?;
    if !force_general {
        for var in (0..n).rev() {
            if let Some((l, u)) = monic_mod_s(&g, var) {
                let retained: Vec<usize> = (0..n).filter(|&i| i != var).collect();
                let w = NormalizationWitness {
                    m: None,
                    root: g.root(),
                    eps: vec![BigRational::zero(); n],
                    changes: Vec::new(),
                    steps: vec![step_for(0, var, l, shift, g.clone(), u)],
                    e: l,
                    retained_delta: equalized(f.delta(), &retained),
                    retained,
                    rounds: 0,
                };
                return Ok((w, g));
            }
        }
    }
    if n < 1 {
        return Err(NormalizeError::UnsupportedPresentation("no variables".into()));
    }
    let mut changes = Vec::new();
    let mut eps_total = vec![BigRational::zero(); n];
    for round in 1..=ROUND_CAP {
        let nu0 = content(&g)?.mcd;
        let m = choose_m(&nu0, n, g.base().characteristic(), g.delta(), delta2)?;
        let eps = epsilon_vector(m, n).unwrap();
        let g1 = g.rescale(&eps)?;
        changes.push(CoordChange::Scale(eps.clone()));
        for (a, e) in eps_total.iter_mut().zip(&eps) {
            *a += e;
        }
        let c1 = content(&g1)?;
        let v = c1.min_val.finite().unwrap().clone();
        shift += &v;
        let g2 = g1.divide_t_pow(&v)?;
        if c1.mcd != nu0 {
            // the minimal exponent moved down in revlex order: go again
            g = g2;
            continue;
        }
        let var = n - 1;
        let expected: u32 = (0..n)
            .map(|k| crate::tate_series::coord::famous_exponent(m, n, k).unwrap_or(u32::MAX).saturating_mul(nu0[k]))
            .fold(0u32, |a, b| a.saturating_add(b));
        let famous = CoordChange::Famous { m };
        let mut g3 = famous.apply(&g2)?;
        changes.push(famous);
        let delta_after: Vec<BigRational> = g2.delta().to_vec();
        g3.set_delta(vec![BigRational::zero(); n]);
        let found = monic_mod_s(&g3, var);
        match found {
            Some((l, u)) if l == expected => {
                let retained: Vec<usize> = (0..n - 1).collect();
                let w = NormalizationWitness {
                    m: Some(m),
                    root: g3.root(),
                    eps: eps_total,
                    changes,
                    steps: vec![step_for(0, var, l, shift, g3.clone(), u)],
                    e: l,
                    retained_delta: equalized(&delta_after, &retained),
                    retained,
                    rounds: round,
                };
                return Ok((w, g3));
            }
            other => {
                return Err(NormalizeError::MonicCheckFailed { var, expected, found: other.map(|x| x.0) });
            }
        }
    }
    Err(NormalizeError::IterationCap(ROUND_CAP))
}

/// Normalizes a presented algebra: zero ideal, a single relation, or a
/// triangular system where generator j is monic in its own variable and
/// involves no variable eliminated by a later generator.
pub fn full_normalize<B: Base>(
    alg: &PresentedAlgebra<B>,
    delta2: &[BigRational],
) -> Result<PresentedAlgebra<B>, NormalizeError> {
    let n = alg.nvars;
    let mut out = alg.clone();
    let gens: Vec<&PowerSeries<B>> = alg.generators.iter().collect();
    if gens.is_empty() {
        out.witness = Some(NormalizationWitness::identity(n, &alg.delta));
        return Ok(out);
    }
    if alg.is_unit_ideal() {
        return Err(NormalizeError::UnsupportedPresentation("unit ideal has an empty zero set".into()));
    }
    if gens.len() == 1 {
        let (w, _) = normalize_step(gens[0], delta2, false)?;
        out.witness = Some(w);
        return Ok(out);
    }
    let mut steps: Vec<EliminationStep<B>> = Vec::new();
    for (j, g) in gens.iter().enumerate() {
        let c = content(g)?;
        let shift = c.min_val.finite().unwrap().clone();
        let h = g.divide_t_pow(&shift)?;
        let taken: Vec<usize> = steps.iter().map(|s| s.var).collect();
        let choice = (0..n).rev().filter(|v| !taken.contains(v)).find_map(|v| monic_mod_s(&h, v).map(|(l, u)| (v, l, u)));
        let Some((var, l, u)) = choice else {
            return Err(NormalizeError::UnsupportedPresentation(format!("generator {} is not monic in a free variable", j + 1)));
        };
        steps.push(step_for(j, var, l, shift, h, u));
    }
    for (j, s) in steps.iter().enumerate() {
        if steps[j + 1..].iter().any(|later| s.relation.involves(later.var)) {
            return Err(NormalizeError::UnsupportedPresentation("generators are not triangular".into()));
        }
    }
    let elim: Vec<usize> = steps.iter().map(|s| s.var).collect();
    let retained: Vec<usize> = (0..n).filter(|i| !elim.contains(i)).collect();
    let e = steps.iter().map(|s| s.degree).product();
    out.witness = Some(NormalizationWitness {
        m: None,
        root: steps.iter().map(|s| s.relation.root()).max().unwrap_or(1),
        eps: vec![BigRational::zero(); n],
        changes: Vec::new(),
        steps,
        e,
        retained_delta: equalized(&alg.delta, &retained),
        retained,
        rounds: 0,
    });
    Ok(out)
}

/// Property (i) of the scaling: ν0 < μ in revlex implies ε·ν0 < ε·μ.
pub fn eps_separates(eps: &[BigRational], nu0: &[u32], mu: &[u32]) -> bool {
    !revlex_less(nu0, mu) || dot(eps, nu0) < dot(eps, mu)
}

/// Property (ii): ε·(μ - ν0) is a positive multiple of 1/N.
pub fn eps_divisible(eps: &[BigRational], nu0: &[u32], mu: &[u32], root: u64) -> bool {
    let d = dot(eps, mu) - dot(eps, nu0);
    let k = d * BigInt::from(root);
    k.is_integer() && k.is_positive()
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_tower::{PadicBase, TadicBase};

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn revlex_examples() {
        assert!(revlex_less(&[2, 1], &[1, 2]));
        assert!(!revlex_less(&[3, 3], &[3, 3]));
        assert!(!revlex_less(&[0, 3], &[5, 2]));
    }

    #[test]
    fn content_of_mixed_series() {
        let b = TadicBase::new(2).unwrap();
        let d = vec![BigRational::zero(); 2];
        let f = PowerSeries::from_int_terms(&b, d, vec![(vec![1, 0], b.pi_pow(2)), (vec![0, 2], b.pi())]);
        let c = content(&f).unwrap();
        assert_eq!(c.min_val, Valuation::int(1));
        assert_eq!(c.mcd, vec![0, 2]);
        assert!(matches!(content(&f.zero_like()), Err(NormalizeError::ZeroSeries)));
    }

    #[test]
    fn choose_m_examples() {
        let one = vec![r(1, 1); 2];
        let half = vec![r(1, 2); 2];
        assert_eq!(choose_m(&[1, 2], 2, 2, &one, &half).unwrap(), 5);
        assert_eq!(choose_m(&[0, 0], 2, 0, &one, &vec![r(1, 4); 2]).unwrap(), 2);
        // no room for 1/2 at δ'' = 1/2
        assert_eq!(choose_m(&[0, 0], 2, 0, &one, &half).unwrap(), 3);
        assert_eq!(epsilon_vector(3, 2).unwrap(), vec![r(1, 27), r(1, 3)]);
    }

    #[test]
    fn general_path_for_xy_plus_t() {
        let b = PadicBase::new(5).unwrap();
        let d = vec![r(1, 1); 2];
        let f = PowerSeries::from_int_terms(&b, d, vec![(vec![1, 1], 1.into()), (vec![0, 0], 5.into())]);
        let (w, g) = normalize_step(&f, &[r(1, 2), r(1, 2)], false).unwrap();
        assert_eq!((w.m, w.root, w.weierstrass_degree()), (Some(4), 256, 5));
        assert!(w.steps[0].exact_monic);
        assert_eq!(newton_degree(&g, 1), Some(5));
    }
}
