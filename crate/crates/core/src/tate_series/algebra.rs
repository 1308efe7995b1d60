//! Presented algebras A⟨⟨x; δ⟩⟩/𝔞 and reduction modulo a monic relation.

use num_rational::BigRational;

use super::{PowerSeries, SeriesDef, SeriesError};
use crate::field_tower::{Base, LocalElem, LocalFieldCtx};
use crate::normalize::NormalizationWitness;

#[derive(Clone, Debug)]
pub struct PresentedAlgebra<B: Base> {
    pub base: B,
    pub ctx: LocalFieldCtx,
    pub nvars: usize,
    pub delta: Vec<BigRational>,
    pub generators: Vec<PowerSeries<B>>,
    /// Source definitions, for re-materializing at higher precision.
    pub defs: Vec<SeriesDef>,
    pub witness: Option<NormalizationWitness<B>>,
}

impl<B: Base> PresentedAlgebra<B> {
    pub fn new(
        base: B,
        ctx: LocalFieldCtx,
        delta: Vec<BigRational>,
        defs: Vec<SeriesDef>,
    ) -> Result<Self, SeriesError> {
        let nvars = delta.len();
        let mut alg = PresentedAlgebra { base, ctx, nvars, delta, generators: Vec::new(), defs, witness: None };
        alg.generators = alg.materialize(alg.ctx.work_prec)?;
        Ok(alg)
    }

    /// Builds an algebra directly from series (no re-materialization).
    pub fn from_series(base: B, ctx: LocalFieldCtx, delta: Vec<BigRational>, generators: Vec<PowerSeries<B>>) -> Self {
        let nvars = delta.len();
        PresentedAlgebra { base, ctx, nvars, delta, generators, defs: Vec::new(), witness: None }
    }

    fn materialize(&self, prec: i64) -> Result<Vec<PowerSeries<B>>, SeriesError> {
        let mut out = Vec::with_capacity(self.defs.len());
        for d in &self.defs {
            if d.nvars != self.nvars {
                return Err(SeriesError::ArityMismatch(d.nvars, self.nvars));
            }
            let s = d.materialize(&self.base, &self.delta, prec)?;
            if !s.is_exact() && !s.is_integral() {
                return Err(SeriesError::RadiusViolation("generator is not integral for the stated radius".into()));
            }
            out.push(s);
        }
        Ok(out)
    }

    /// Same algebra with generators rebuilt at working precision `prec`.
    pub fn with_precision(&self, prec: i64) -> Result<Self, SeriesError> {
        let mut out = self.clone();
        out.ctx = self.ctx.with_prec(prec);
        if !self.defs.is_empty() {
            out.generators = self.materialize(prec)?;
            if let Some(w) = &mut out.witness {
                w.rebuild_relations(&out.generators)?;
            }
        }
        Ok(out)
    }

    /// Number of retained coordinates.
    pub fn dim(&self) -> usize {
        match &self.witness {
            Some(w) => w.retained.len(),
            None => self.nvars,
        }
    }

    pub fn rank(&self) -> u32 {
        self.witness.as_ref().map(|w| w.e).unwrap_or(1)
    }

    /// Whether some generator is a nonzero constant with unit coefficient,
    /// so the zero set is empty.
    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(|g| {
            g.is_exact()
                && g.terms().len() == 1
                && g.terms().iter().all(|(nu, c)| {
                    nu.iter().all(|&k| k == 0) && c.val_units(&self.base) == Some(0)
                })
        })
    }

    pub fn coordinate(&self, i: usize) -> PowerSeries<B> {
        PowerSeries::var(&self.base, self.nvars, self.delta.clone(), i)
    }
}

fn unit_inverse<B: Base>(b: &B, u: &LocalElem<B::Int>) -> Option<LocalElem<B::Int>> {
    let comps = u.components();
    if comps.len() != 1 || comps[0].0 != 0 || !b.is_unit(&comps[0].1) {
        return None;
    }
    let inv = b.exact_div(&b.one(), &comps[0].1);
    Some(LocalElem::from_int(b, inv).lift(b, u.root()))
}

/// The single coefficient of `y^deg` in `rel` when `rel` is exactly monic
/// of degree `deg` in `var` with a unit constant leading coefficient.
pub fn monic_unit<B: Base>(rel: &PowerSeries<B>, var: usize, deg: u32) -> Option<LocalElem<B::Int>> {
    let mut lead = None;
    for (nu, c) in rel.terms() {
        if nu[var] > deg {
            return None;
        }
        if nu[var] == deg {
            if nu.iter().enumerate().any(|(i, &k)| i != var && k > 0) || lead.is_some() {
                return None;
            }
            lead = Some(c.clone());
        }
    }
    let lead = lead?;
    unit_inverse(rel.base(), &lead).map(|_| lead)
}

/// Remainder of `f` on division by a relation monic of degree `deg` in `var`.
pub fn reduce_monic<B: Base>(f: &PowerSeries<B>, rel: &PowerSeries<B>, var: usize, deg: u32) -> Result<PowerSeries<B>, SeriesError> {
    let b = f.base();
    let u = monic_unit(rel, var, deg).ok_or(SeriesError::NoWitness)?;
    let uinv = unit_inverse(b, &u).ok_or(SeriesError::NoWitness)?;
    let rel = rel.scale(&uinv);
    let mut g = f.clone();
    loop {
        let top = g.degree_in(var);
        if top < deg || g.terms().is_empty() {
            return Ok(g);
        }
        let mut q = g.zero_like().lift_root(g.root());
        for (nu, c) in g.terms() {
            if nu[var] == top {
                let mut e = nu.clone();
                e[var] = top - deg;
                q.add_term(e, c.clone());
            }
        }
        g = g.sub(&q.mul(&rel));
    }
}

/// Coefficients f_k with f ≡ sum f_k v_k modulo the ideal, where v_k runs
/// over the monomial basis of the witness (lexicographic in the eliminated
/// exponents). Requires relations monic in their stored terms.
pub fn module_decompose<B: Base>(f: &PowerSeries<B>, alg: &PresentedAlgebra<B>) -> Result<Vec<PowerSeries<B>>, SeriesError> {
    let Some(w) = &alg.witness else {
        if alg.generators.is_empty() {
            return Ok(vec![f.clone()]);
        }
        return Err(SeriesError::NoWitness);
    };
    let mut g = w.transform(f)?;
    for step in w.steps.iter().rev() {
        if !step.exact_monic {
            return Err(SeriesError::NoWitness);
        }
        g = reduce_monic(&g, &step.relation, step.var, step.degree)?;
    }
    let elim: Vec<usize> = w.steps.iter().map(|s| s.var).collect();
    let degs: Vec<u32> = w.steps.iter().map(|s| s.degree).collect();
    let basis = w.basis();
    let mut parts = vec![g.zero_like().lift_root(g.root()); basis.len()];
    for (nu, c) in g.terms() {
        let key: Vec<u32> = elim.iter().map(|&v| nu[v]).collect();
        let idx = basis_index(&key, &degs);
        let mut rest = nu.clone();
        for &v in &elim {
            rest[v] = 0;
        }
        parts[idx].add_term(rest, c.clone());
    }
    if let Some(e) = g.err() {
        for p in &mut parts {
            p.add_err(super::ErrBound { e0: e.e0.clone(), w: e.w.iter().map(|_| BigRational::default()).collect(), vars: None });
        }
    }
    Ok(parts)
}

fn basis_index(key: &[u32], degs: &[u32]) -> usize {
    key.iter().zip(degs).fold(0usize, |acc, (&k, &d)| acc * d as usize + k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_tower::PadicBase;
    use crate::normalize::full_normalize;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn alg_of(rel: PowerSeries<PadicBase>) -> PresentedAlgebra<PadicBase> {
        let b = rel.base().clone();
        let ctx = LocalFieldCtx::padic(5, 20).unwrap();
        let d = rel.delta().to_vec();
        let alg = PresentedAlgebra::from_series(b, ctx, d.clone(), vec![rel]);
        full_normalize(&alg, &vec![BigRational::zero(); d.len()]).unwrap()
    }

    #[test]
    fn square_reduces_to_g() {
        let b = PadicBase::new(5).unwrap();
        let d = vec![BigRational::zero(); 2];
        // y^2 - (1 + 5x)
        let rel = PowerSeries::from_int_terms(
            &b,
            d.clone(),
            vec![(vec![0, 2], BigInt::from(1)), (vec![0, 0], BigInt::from(-1)), (vec![1, 0], BigInt::from(-5))],
        );
        let alg = alg_of(rel);
        let y = alg.coordinate(1);
        let parts = module_decompose(&y.mul(&y), &alg).unwrap();
        assert_eq!(parts.len(), 2);
        let g = PowerSeries::from_int_terms(&b, d.clone(), vec![(vec![0, 0], BigInt::from(1)), (vec![1, 0], BigInt::from(5))]);
        assert!(parts[0].same_terms(&g));
        assert!(parts[1].terms().is_empty());
        let x = alg.coordinate(0);
        let parts = module_decompose(&x, &alg).unwrap();
        assert!(parts[0].same_terms(&x) && parts[1].terms().is_empty());
    }
}
