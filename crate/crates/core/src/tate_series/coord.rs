//! Coordinate changes acting on power series by substitution.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use super::{ErrBound, PowerSeries, SeriesError};
use crate::field_tower::{Base, LocalElem, Valuation};

#[derive(Clone, Debug)]
pub enum CoordChange<B: Base> {
    /// x_i = y_i + c_i
    Translation(Vec<LocalElem<B::Int>>),
    /// x_i = P_i(y) for exact polynomials P_i
    Polynomial(Vec<PowerSeries<B>>),
    /// x_n = y_n, x_k = y_n^(M^(n-k)) + y_k
    Famous { m: u64 },
    /// x = t^ε y
    Scale(Vec<BigRational>),
}

/// Exponent M^(n-k) attached to coordinate k (0-based) by the famous change.
pub fn famous_exponent(m: u64, n: usize, k: usize) -> Option<u32> {
    let e = m.checked_pow((n - 1 - k) as u32)?;
    u32::try_from(e).ok()
}

impl<B: Base> CoordChange<B> {
    pub fn identity(base: &B, n: usize) -> Self {
        let d = vec![BigRational::zero(); n];
        CoordChange::Polynomial((0..n).map(|i| PowerSeries::var(base, n, d.clone(), i)).collect())
    }

    pub fn apply(&self, f: &PowerSeries<B>) -> Result<PowerSeries<B>, SeriesError> {
        let n = f.nvars();
        let b = f.base();
        match self {
            CoordChange::Scale(eps) => f.rescale(eps),
            CoordChange::Polynomial(ps) => substitute(f, ps),
            CoordChange::Famous { m } => {
                let d = f.delta().to_vec();
                let y_n = PowerSeries::var(b, n, d.clone(), n - 1);
                let mut ps = Vec::with_capacity(n);
                for k in 0..n - 1 {
                    let e = famous_exponent(*m, n, k).ok_or(SeriesError::RootOverflow)?;
                    ps.push(y_n.pow(e).add(&PowerSeries::var(b, n, d.clone(), k)));
                }
                ps.push(y_n);
                substitute(f, &ps)
            }
            CoordChange::Translation(cs) => {
                if cs.len() != n {
                    return Err(SeriesError::ArityMismatch(cs.len(), n));
                }
                let d = f.delta().to_vec();
                let mut ps = Vec::with_capacity(n);
                let mut worst: Option<BigRational> = None;
                for (i, c) in cs.iter().enumerate() {
                    let exact = LocalElem::from_comps(b, c.root(), c.components().to_vec(), None);
                    if let Some(p) = c.prec_units() {
                        let p = BigRational::new(p.into(), (c.root() as i64).into());
                        worst = Some(worst.map_or(p.clone(), |w: BigRational| w.min(p)));
                    }
                    let mut s = PowerSeries::var(b, n, d.clone(), i);
                    if !exact.is_exact_zero() {
                        s = s.add(&PowerSeries::constant(b, n, d.clone(), exact));
                    }
                    ps.push(s);
                }
                let mut out = substitute(f, &ps)?;
                if let Some(p) = worst {
                    if let Valuation::Finite(g) = f.gauss_lower_bound() {
                        out.add_err(ErrBound { e0: g + p, w: vec![BigRational::zero(); n], vars: None });
                    }
                }
                Ok(out)
            }
        }
    }

    /// The inverse change, when it has a closed form.
    pub fn inverse(&self, base: &B, n: usize) -> Option<Self> {
        let d = vec![BigRational::zero(); n];
        match self {
            CoordChange::Translation(cs) => Some(CoordChange::Translation(cs.iter().map(|c| c.neg(base)).collect())),
            CoordChange::Scale(eps) => Some(CoordChange::Scale(eps.iter().map(|e| -e.clone()).collect())),
            CoordChange::Famous { m } => {
                let x_n = PowerSeries::var(base, n, d.clone(), n - 1);
                let mut ps = Vec::with_capacity(n);
                for k in 0..n - 1 {
                    let e = famous_exponent(*m, n, k)?;
                    ps.push(PowerSeries::var(base, n, d.clone(), k).sub(&x_n.pow(e)));
                }
                ps.push(x_n);
                Some(CoordChange::Polynomial(ps))
            }
            CoordChange::Polynomial(_) => None,
        }
    }

    pub fn describe(&self) -> Value {
        match self {
            CoordChange::Translation(cs) => json!({
                "kind": "translation",
                "constants": cs.len(),
            }),
            CoordChange::Polynomial(ps) => json!({
                "kind": "polynomial",
                "images": ps.iter().map(|p| p.fmt_series()).collect::<Vec<_>>(),
            }),
            CoordChange::Famous { m } => json!({ "kind": "famous", "M": m }),
            CoordChange::Scale(eps) => json!({
                "kind": "scale",
                "epsilon": eps.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            }),
        }
    }
}

/// F(P_1(y), ..., P_n(y)) for exact polynomial images.
pub fn substitute<B: Base>(f: &PowerSeries<B>, ps: &[PowerSeries<B>]) -> Result<PowerSeries<B>, SeriesError> {
    let n = f.nvars();
    if ps.len() != n {
        return Err(SeriesError::ArityMismatch(ps.len(), n));
    }
    let b = f.base();
    let m = ps.first().map(|p| p.nvars()).unwrap_or(n);
    let mut root = f.root();
    for p in ps {
        root = root.lcm(&p.root());
    }
    let delta = if m == n { f.delta().to_vec() } else { vec![BigRational::zero(); m] };
    let mut ps: Vec<PowerSeries<B>> = ps.iter().map(|p| p.lift_root(root)).collect();
    for p in &mut ps {
        p.set_delta(delta.clone());
    }
    let mut pows: Vec<Vec<PowerSeries<B>>> = Vec::with_capacity(n);
    for (i, p) in ps.iter().enumerate() {
        let mut v = vec![p.one_like().lift_root(root)];
        for k in 1..=f.degree_in(i) as usize {
            v.push(v[k - 1].mul(p));
        }
        pows.push(v);
    }
    let mut out = PowerSeries::zero(b, m, delta.clone()).lift_root(root);
    let src = f.lift_root(root);
    for (nu, c) in src.terms() {
        let mut term = PowerSeries::constant(b, m, delta.clone(), c.clone());
        for (i, &k) in nu.iter().enumerate() {
            if k > 0 {
                term = term.mul(&pows[i][k as usize]);
            }
        }
        out = out.add(&term);
    }
    if let Some(e) = f.err() {
        let integral = ps.iter().all(|p| matches!(p.gauss_norm(), Valuation::Infinite) || p.gauss_norm() >= Valuation::zero());
        if !integral {
            return Err(SeriesError::RadiusViolation("substitution leaves the unit polydisc".into()));
        }
        let vars = e.vars.as_ref().and_then(|vars| {
            let mut out = vec![false; m];
            for (i, &used) in vars.iter().enumerate() {
                if !used {
                    continue;
                }
                if ps[i].coeff(&vec![0; m]).is_some() {
                    return None;
                }
                for j in 0..m {
                    if ps[i].involves(j) {
                        out[j] = true;
                    }
                }
            }
            Some(out)
        });
        out.add_err(ErrBound { e0: e.e0.clone(), w: vec![BigRational::zero(); m], vars });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_tower::{PadicBase, TadicBase};
    use num_bigint::BigInt;

    #[test]
    fn famous_change_leading_power() {
        let b = PadicBase::new(5).unwrap();
        let f = PowerSeries::from_int_terms(&b, vec![BigRational::zero(); 2], vec![(vec![1, 2], BigInt::from(1))]);
        let g = CoordChange::Famous { m: 3 }.apply(&f).unwrap();
        assert_eq!(g.degree_in(1), 5);
        assert!(g.coeff(&[0, 5]).is_some());
        assert!(g.coeff(&[1, 2]).is_some());
        let back = CoordChange::Famous { m: 3 }.inverse(&b, 2).unwrap().apply(&g).unwrap();
        assert!(back.same_terms(&f));
    }

    #[test]
    fn translation_moves_point_to_origin() {
        let b = TadicBase::new(2).unwrap();
        let d = vec![BigRational::zero(); 1];
        let x = PowerSeries::var(&b, 1, d.clone(), 0);
        let f = x.mul(&x).add(&x);
        let c = LocalElem::from_int(&b, b.parse_int("t+1").unwrap());
        let g = CoordChange::Translation(vec![c.clone()]).apply(&f).unwrap();
        let at_zero = g.evaluate(&[LocalElem::from_int(&b, b.zero())]).unwrap();
        assert_eq!(at_zero, f.evaluate(&[c]).unwrap());
        let id = CoordChange::identity(&b, 1).apply(&f).unwrap();
        assert!(id.same_terms(&f));
    }
}
