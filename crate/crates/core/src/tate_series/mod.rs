//! Multivariate restricted power series over V = Z_p or F_q[[t]] (and their
//! root-of-t extensions), stored as an exact polynomial part plus a
//! certified bound on everything that was dropped.

pub mod algebra;
pub mod coord;
pub mod literal;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::field_tower::{Base, FieldError, LocalElem, Valuation};

pub use algebra::{module_decompose, monic_unit, reduce_monic, PresentedAlgebra};
pub use coord::CoordChange;
pub use literal::{to_literal, FamilyLiteral, SeriesDef, SeriesLiteral, TermLiteral};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("point coordinate {0} lies outside the polydisc")]
    OutOfDisc(usize),
    #[error("scaling {0} violates the radius bound")]
    RadiusViolation(String),
    #[error("variable counts differ ({0} vs {1})")]
    ArityMismatch(usize, usize),
    #[error("algebra carries no normalization witness usable here")]
    NoWitness,
    #[error("root index overflow")]
    RootOverflow,
    #[error("bad series literal: {0}")]
    Literal(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Every coefficient of `F - stored` has valuation at least `e0 + w·ν`.
/// When `vars` is set, every dropped monomial is divisible by some `x_i`
/// with `vars[i]`, so the error vanishes where all of those are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrBound {
    pub e0: BigRational,
    pub w: Vec<BigRational>,
    pub vars: Option<Vec<bool>>,
}

impl ErrBound {
    fn merge(self, other: ErrBound) -> ErrBound {
        let w = self.w.iter().zip(&other.w).map(|(a, b)| a.min(b).clone()).collect();
        let vars = match (self.vars, other.vars) {
            (Some(a), Some(b)) => Some(a.iter().zip(&b).map(|(x, y)| *x || *y).collect()),
            _ => None,
        };
        ErrBound { e0: self.e0.min(other.e0), w, vars }
    }

    /// Bound for a single dropped term `c x^ν`.
    fn for_term(val: BigRational, nu: &[u32], w: &[BigRational]) -> ErrBound {
        let e0 = val - dot(w, nu);
        let vars = if nu.iter().all(|&k| k == 0) { None } else { Some(nu.iter().map(|&k| k > 0).collect()) };
        ErrBound { e0, w: w.to_vec(), vars }
    }

    fn with_w(mut self, w: &[BigRational]) -> ErrBound {
        // weakening: val >= e0 + w·ν implies val >= e0 + w'·ν for 0 <= w' <= w
        for (a, b) in self.w.iter_mut().zip(w) {
            if b < a {
                *a = b.clone();
            }
        }
        self
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn dot(w: &[BigRational], nu: &[u32]) -> BigRational {
    w.iter().zip(nu).fold(BigRational::zero(), |acc, (a, &k)| acc + a * BigInt::from(k))
}

pub type Coef<I> = LocalElem<I>;

#[derive(Clone, Debug)]
pub struct PowerSeries<B: Base> {
    base: B,
    nvars: usize,
    delta: Vec<BigRational>,
    root: u64,
    terms: BTreeMap<Vec<u32>, Coef<B::Int>>,
    cutoff: Option<u32>,
    err: Option<ErrBound>,
}

impl<B: Base> PowerSeries<B> {
    pub fn zero(base: &B, nvars: usize, delta: Vec<BigRational>) -> Self {
        assert_eq!(delta.len(), nvars);
        PowerSeries { base: base.clone(), nvars, delta, root: 1, terms: BTreeMap::new(), cutoff: None, err: None }
    }

    pub fn with_unit_delta(base: &B, nvars: usize) -> Self {
        Self::zero(base, nvars, vec![BigRational::zero(); nvars])
    }

    pub fn constant(base: &B, nvars: usize, delta: Vec<BigRational>, c: Coef<B::Int>) -> Self {
        let mut s = Self::zero(base, nvars, delta).lift_root(c.root());
        s.add_term(vec![0; nvars], c);
        s
    }

    pub fn one_like(&self) -> Self {
        let c = LocalElem::from_int(&self.base, self.base.one());
        Self::constant(&self.base, self.nvars, self.delta.clone(), c)
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(&self.base, self.nvars, self.delta.clone())
    }

    pub fn var(base: &B, nvars: usize, delta: Vec<BigRational>, i: usize) -> Self {
        let mut s = Self::zero(base, nvars, delta);
        let mut nu = vec![0; nvars];
        nu[i] = 1;
        s.add_term(nu, LocalElem::from_int(base, base.one()));
        s
    }

    /// Builds a polynomial from `(exponent, base-ring coefficient)` pairs.
    pub fn from_int_terms(base: &B, delta: Vec<BigRational>, terms: Vec<(Vec<u32>, B::Int)>) -> Self {
        let mut s = Self::zero(base, delta.len(), delta);
        for (nu, c) in terms {
            s.add_term(nu, LocalElem::from_int(base, c));
        }
        s
    }

    pub fn base(&self) -> &B {
        &self.base
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn delta(&self) -> &[BigRational] {
        &self.delta
    }
    pub fn root(&self) -> u64 {
        self.root
    }
    pub fn cutoff(&self) -> Option<u32> {
        self.cutoff
    }
    pub fn err(&self) -> Option<&ErrBound> {
        self.err.as_ref()
    }
    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Coef<B::Int>> {
        &self.terms
    }
    pub fn coeff(&self, nu: &[u32]) -> Option<&Coef<B::Int>> {
        self.terms.get(nu)
    }
    pub fn is_exact(&self) -> bool {
        self.err.is_none()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.err.is_none()
    }

    pub fn set_delta(&mut self, delta: Vec<BigRational>) {
        assert_eq!(delta.len(), self.nvars);
        self.delta = delta;
    }

    pub fn set_cutoff(&mut self, cutoff: Option<u32>) {
        self.cutoff = cutoff;
        if let Some(t) = cutoff {
            let drop: Vec<Vec<u32>> =
                self.terms.keys().filter(|nu| nu.iter().sum::<u32>() > t).cloned().collect();
            for nu in drop {
                let c = self.terms.remove(&nu).unwrap();
                self.absorb(&nu, &c);
            }
        }
    }

    /// Records an error bound (used when materializing infinite families).
    pub fn add_err(&mut self, e: ErrBound) {
        self.err = Some(match self.err.take() {
            Some(old) => old.merge(e),
            None => e,
        });
    }

    fn zero_w(&self) -> Vec<BigRational> {
        vec![BigRational::zero(); self.nvars]
    }

    /// Moves a term into the error bound.
    fn absorb(&mut self, nu: &[u32], c: &Coef<B::Int>) {
        let w = self.err.as_ref().map(|e| e.w.clone()).unwrap_or_else(|| self.zero_w());
        let v = match c.valuation(&self.base) {
            Valuation::Finite(v) => v,
            Valuation::Infinite => return,
        };
        let e = ErrBound::for_term(v, nu, &w);
        self.err = Some(match self.err.take() {
            Some(old) => old.merge(e),
            None => e,
        });
    }

    pub fn add_term(&mut self, nu: Vec<u32>, c: Coef<B::Int>) {
        assert_eq!(nu.len(), self.nvars);
        let c = self.fit_root(c);
        if let Some(t) = self.cutoff {
            if nu.iter().sum::<u32>() > t {
                self.absorb(&nu, &c);
                return;
            }
        }
        let c = if c.is_exact() {
            c
        } else {
            // keep coefficients exact; the uncertainty joins the error bound
            let p = c.prec_units().unwrap();
            let exact = LocalElem::from_comps(&self.base, c.root(), c.components().to_vec(), None);
            let w = self.err.as_ref().map(|e| e.w.clone()).unwrap_or_else(|| self.zero_w());
            let e = ErrBound::for_term(BigRational::new(p.into(), (c.root() as i64).into()), &nu, &w);
            self.err = Some(match self.err.take() {
                Some(old) => old.merge(e),
                None => e,
            });
            exact
        };
        if c.is_exact_zero() {
            return;
        }
        match self.terms.get_mut(&nu) {
            Some(old) => {
                let s = old.add(&self.base, &c);
                if s.is_exact_zero() {
                    self.terms.remove(&nu);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(nu, c);
            }
        }
    }

    fn fit_root(&self, c: Coef<B::Int>) -> Coef<B::Int> {
        assert!(self.root % c.root() == 0, "coefficient root index {} does not divide {}", c.root(), self.root);
        c.lift(&self.base, self.root)
    }

    /// Re-expresses all coefficients over a larger root index.
    pub fn lift_root(&self, m: u64) -> Self {
        if m == self.root {
            return self.clone();
        }
        assert!(m % self.root == 0);
        let mut out = self.clone();
        out.root = m;
        out.terms = self.terms.iter().map(|(k, c)| (k.clone(), c.lift(&self.base, m))).collect();
        out
    }

    fn align(&self, other: &Self) -> (Self, Self) {
        assert_eq!(self.nvars, other.nvars, "variable counts differ");
        if self.root == other.root {
            return (self.clone(), other.clone());
        }
        let m = self.root.lcm(&other.root);
        (self.lift_root(m), other.lift_root(m))
    }

    pub fn coef_val(&self, c: &Coef<B::Int>) -> BigRational {
        c.valuation(&self.base).finite().cloned().expect("stored coefficients are nonzero")
    }

    /// Minimum stored coefficient valuation; +∞ for the zero series.
    pub fn gauss_norm(&self) -> Valuation {
        self.terms
            .values()
            .map(|c| self.coef_val(c))
            .min()
            .map(Valuation::Finite)
            .unwrap_or(Valuation::Infinite)
    }

    /// Gauss norm including the error bound (a certified lower bound).
    pub fn gauss_lower_bound(&self) -> Valuation {
        let g = self.gauss_norm();
        match &self.err {
            Some(e) if e.w.iter().all(|w| !w.is_negative()) => g.min(Valuation::Finite(e.e0.clone())),
            Some(_) => Valuation::Finite(rat(i64::MIN / 4)),
            None => g,
        }
    }

    /// `min_ν (val a_ν - w·ν)` over stored terms.
    fn weighted_gauss(&self, w: &[BigRational]) -> Option<BigRational> {
        self.terms.iter().map(|(nu, c)| self.coef_val(c) - dot(w, nu)).min()
    }

    /// Whether every stored coefficient satisfies val(a_ν) ≥ δ·ν.
    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(nu, c)| self.coef_val(c) >= dot(&self.delta, nu))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|nu| nu.iter().sum::<u32>()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|nu| nu[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|nu| nu[var] > 0)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg(&self.base);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        let mut out = a.clone();
        out.cutoff = min_cut(a.cutoff, b.cutoff);
        if let Some(e) = b.err.clone() {
            out.add_err(e);
        }
        if let Some(t) = out.cutoff {
            out.set_cutoff(Some(t));
        }
        for (nu, c) in b.terms {
            out.add_term(nu, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiplies by an exact constant.
    pub fn scale(&self, c: &Coef<B::Int>) -> Self {
        let c = if c.root() == self.root {
            c.clone()
        } else {
            let m = self.root.lcm(&c.root());
            return self.lift_root(m).scale(&c.lift(&self.base, m));
        };
        let mut out = self.zero_like();
        out.root = self.root;
        out.cutoff = self.cutoff;
        if let Some(e) = &self.err {
            let cv = match c.valuation(&self.base) {
                Valuation::Finite(v) => v,
                Valuation::Infinite => return out,
            };
            out.err = Some(ErrBound { e0: &e.e0 + cv, ..e.clone() });
        }
        for (nu, a) in &self.terms {
            out.add_term(nu.clone(), a.mul(&self.base, &c));
        }
        out
    }

    /// Cauchy product. Exact polynomials multiply exactly; otherwise terms
    /// above the smaller cutoff move into the error bound.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        let mut out = a.zero_like();
        out.root = a.root;
        out.cutoff = min_cut(a.cutoff, b.cutoff);
        let w = match (&a.err, &b.err) {
            (Some(x), Some(y)) => Some(x.clone().with_w(&y.w).w),
            (Some(x), None) => Some(x.w.clone()),
            (None, Some(y)) => Some(y.w.clone()),
            (None, None) => None,
        };
        if let Some(w) = w {
            let ga = a.weighted_gauss(&w);
            let gb = b.weighted_gauss(&w);
            let mut e: Option<ErrBound> = None;
            let mut push = |x: ErrBound| {
                e = Some(match e.take() {
                    Some(o) => o.merge(x),
                    None => x,
                })
            };
            if let Some(ea) = &a.err {
                let ea = ea.clone().with_w(&w);
                if let Some(g) = &gb {
                    push(ErrBound { e0: &ea.e0 + g, ..ea.clone() });
                }
                if let Some(eb) = &b.err {
                    let eb = eb.clone().with_w(&w);
                    push(ErrBound { e0: &ea.e0 + &eb.e0, ..ea.clone().merge(eb) });
                }
            }
            if let Some(eb) = &b.err {
                let eb = eb.clone().with_w(&w);
                if let Some(g) = &ga {
                    push(ErrBound { e0: &eb.e0 + g, ..eb });
                }
            }
            out.err = e;
        }
        let cut = out.cutoff;
        let mut acc: BTreeMap<Vec<u32>, Coef<B::Int>> = BTreeMap::new();
        for (n1, c1) in &a.terms {
            let d1: u32 = n1.iter().sum();
            for (n2, c2) in &b.terms {
                let nu: Vec<u32> = n1.iter().zip(n2).map(|(x, y)| x + y).collect();
                let prod = c1.mul(&a.base, c2);
                if let Some(t) = cut {
                    if d1 + n2.iter().sum::<u32>() > t {
                        out.absorb(&nu, &prod);
                        continue;
                    }
                }
                match acc.get_mut(&nu) {
                    Some(x) => *x = x.add(&a.base, &prod),
                    None => {
                        acc.insert(nu, prod);
                    }
                }
            }
        }
        for (nu, c) in acc {
            out.add_term(nu, c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = self.one_like().lift_root(self.root);
        out.cutoff = self.cutoff;
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Evaluates the fixed coordinates, leaving a polynomial in the free
    /// ones with local coefficients, plus the precision cap (units of 1/n,
    /// `None` when no dropped term can contribute).
    pub fn partial_eval(
        &self,
        point: &[Option<LocalElem<B::Int>>],
    ) -> Result<(BTreeMap<Vec<u32>, LocalElem<B::Int>>, u64, Option<i64>), SeriesError> {
        if point.len() != self.nvars {
            return Err(SeriesError::ArityMismatch(point.len(), self.nvars));
        }
        let b = &self.base;
        let mut n = self.root;
        for x in point.iter().flatten() {
            n = n.lcm(&x.root());
        }
        let pt: Vec<Option<LocalElem<B::Int>>> = point.iter().map(|x| x.as_ref().map(|x| x.lift(b, n))).collect();
        for (i, x) in pt.iter().enumerate() {
            if let Some(x) = x {
                let v = x.valuation(b);
                if let Valuation::Finite(v) = &v {
                    if v < &(-self.delta[i].clone()) {
                        return Err(SeriesError::OutOfDisc(i));
                    }
                }
            }
        }
        let cap = match &self.err {
            None => None,
            Some(e) => {
                let vanishes = e.vars.as_ref().is_some_and(|vars| {
                    vars.iter().zip(&pt).all(|(&used, x)| !used || x.as_ref().is_some_and(|x| x.is_exact_zero()))
                });
                if vanishes {
                    None
                } else {
                    for (i, x) in pt.iter().enumerate() {
                        let v = match x {
                            Some(x) => x.valuation(b).finite().cloned().unwrap_or_else(|| e.w[i].clone().abs()),
                            None => BigRational::zero(),
                        };
                        if &e.w[i] + &v < BigRational::zero() {
                            return Err(SeriesError::OutOfDisc(i));
                        }
                    }
                    let units = (&e.e0 * BigInt::from(n)).ceil().to_integer();
                    Some(i64::try_from(units).unwrap_or(i64::MAX / 4))
                }
            }
        };
        // powers of fixed coordinates
        let mut pows: Vec<Vec<LocalElem<B::Int>>> = Vec::with_capacity(self.nvars);
        for (i, x) in pt.iter().enumerate() {
            let mut v = Vec::new();
            if let Some(x) = x {
                let dmax = self.degree_in(i);
                v.push(LocalElem::from_int(b, b.one()).lift(b, n));
                for k in 1..=dmax as usize {
                    let next = v[k - 1].mul(b, x);
                    v.push(match cap {
                        Some(c) => next.truncate(b, c),
                        None => next,
                    });
                }
            }
            pows.push(v);
        }
        let mut out: BTreeMap<Vec<u32>, LocalElem<B::Int>> = BTreeMap::new();
        for (nu, c) in &self.terms {
            let mut val = c.lift(b, n);
            let mut rest = nu.clone();
            for (i, x) in pt.iter().enumerate() {
                if x.is_some() {
                    if nu[i] > 0 {
                        val = val.mul(b, &pows[i][nu[i] as usize]);
                    }
                    rest[i] = 0;
                }
            }
            if let Some(cp) = cap {
                val = val.truncate(b, cp);
            }
            match out.get_mut(&rest) {
                Some(x) => *x = x.add(b, &val),
                None => {
                    out.insert(rest, val);
                }
            }
        }
        Ok((out, n, cap))
    }

    /// Value at a point, correct to the returned element's precision.
    pub fn evaluate(&self, point: &[LocalElem<B::Int>]) -> Result<LocalElem<B::Int>, SeriesError> {
        let pt: Vec<Option<LocalElem<B::Int>>> = point.iter().cloned().map(Some).collect();
        let (parts, n, cap) = self.partial_eval(&pt)?;
        let b = &self.base;
        let mut acc = match cap {
            Some(c) => LocalElem::zero_to(n, c),
            None => LocalElem::zero(n),
        };
        for v in parts.values() {
            acc = acc.add(b, v);
        }
        Ok(acc)
    }

    /// Substitutes x = t^ε x̃: coefficients become t^(ε·ν) a_ν and the
    /// radius becomes δ - ε. Negative entries undo an earlier scaling and
    /// need exact divisibility.
    pub fn rescale(&self, eps: &[BigRational]) -> Result<Self, SeriesError> {
        if eps.len() != self.nvars {
            return Err(SeriesError::ArityMismatch(eps.len(), self.nvars));
        }
        let integral = eps.iter().all(|e| e.is_integer());
        for (e, d) in eps.iter().zip(&self.delta) {
            if e.is_positive() && !integral && e >= d {
                return Err(SeriesError::RadiusViolation(format!("{e} >= {d}")));
            }
        }
        let mut m = self.root;
        for e in eps {
            let d = u64::try_from(e.denom()).map_err(|_| SeriesError::RootOverflow)?;
            m = m.checked_mul(d / m.gcd(&d)).ok_or(SeriesError::RootOverflow)?;
        }
        let src = self.lift_root(m);
        let mut out = src.zero_like();
        out.root = m;
        out.cutoff = self.cutoff;
        out.delta = self.delta.iter().zip(eps).map(|(d, e)| d - e).collect();
        out.err = self.err.as_ref().map(|e| ErrBound {
            e0: e.e0.clone(),
            w: e.w.iter().zip(eps).map(|(w, x)| w + x).collect(),
            vars: e.vars.clone(),
        });
        for (nu, c) in &src.terms {
            let k = dot(eps, nu) * BigInt::from(m);
            let k = i64::try_from(k.to_integer()).map_err(|_| SeriesError::RootOverflow)?;
            out.terms.insert(nu.clone(), c.shift(&self.base, k)?);
        }
        Ok(out)
    }

    /// Divides every coefficient by t^v for a valuation v attained exactly.
    pub fn divide_t_pow(&self, v: &BigRational) -> Result<Self, SeriesError> {
        let m = {
            let d = u64::try_from(v.denom()).map_err(|_| SeriesError::RootOverflow)?;
            self.root.lcm(&d)
        };
        let src = self.lift_root(m);
        let k = i64::try_from((v * BigInt::from(m)).to_integer()).map_err(|_| SeriesError::RootOverflow)?;
        let mut out = src.clone();
        for c in out.terms.values_mut() {
            *c = c.shift(&self.base, -k)?;
        }
        if let Some(e) = &mut out.err {
            e.e0 = &e.e0 - v;
        }
        Ok(out)
    }

    /// Moves every term of valuation ≥ `p` into the error bound.
    pub fn truncate_precision(&self, p: &BigRational) -> Self {
        let mut out = self.clone();
        let drop: Vec<Vec<u32>> =
            out.terms.iter().filter(|(_, c)| &self.coef_val(c) >= p).map(|(k, _)| k.clone()).collect();
        for nu in drop {
            let c = out.terms.remove(&nu).unwrap();
            out.absorb(&nu, &c);
        }
        out
    }

    /// Splits by powers of `var`: `F = sum_k F_k y^k` with F_k free of y.
    pub fn split_by(&self, var: usize) -> Vec<Self> {
        let deg = self.degree_in(var) as usize;
        let mut parts = vec![self.zero_like().lift_root(self.root); deg + 1];
        for (nu, c) in &self.terms {
            let mut rest = nu.clone();
            rest[var] = 0;
            parts[nu[var] as usize].terms.insert(rest, c.clone());
        }
        for p in &mut parts {
            p.err = self.err.clone();
            p.cutoff = self.cutoff;
        }
        parts
    }

    /// Equality of stored data after aligning root indices.
    pub fn same_terms(&self, other: &Self) -> bool {
        let (a, b) = self.align(other);
        a.terms == b.terms
    }

    /// Terms whose coefficients have valuation exactly `v`.
    pub fn terms_of_valuation(&self, v: &BigRational) -> Vec<(Vec<u32>, Coef<B::Int>)> {
        self.terms.iter().filter(|(_, c)| &self.coef_val(c) == v).map(|(k, c)| (k.clone(), c.clone())).collect()
    }

    pub fn map_exponents(&self, nvars: usize, delta: Vec<BigRational>, f: impl Fn(&[u32]) -> Vec<u32>) -> Self {
        let mut out = Self::zero(&self.base, nvars, delta).lift_root(self.root);
        out.cutoff = self.cutoff;
        out.err = self.err.as_ref().map(|e| ErrBound {
            e0: e.e0.clone(),
            w: vec![BigRational::zero(); nvars],
            vars: None,
        });
        for (nu, c) in &self.terms {
            out.add_term(f(nu), c.clone());
        }
        out
    }

    pub fn fmt_series(&self) -> String {
        let b = &self.base;
        if self.terms.is_empty() {
            return if self.err.is_some() { "O(err)".into() } else { "0".into() };
        }
        let mut parts = Vec::new();
        for (nu, c) in &self.terms {
            let mut coef = Vec::new();
            for (r, a) in c.components() {
                let s = match (*r, self.root) {
                    (0, _) => b.fmt_int(a),
                    (r, n) => format!("({})*t^({r}/{n})", b.fmt_int(a)),
                };
                coef.push(s);
            }
            let coef = coef.join("+");
            let mono: Vec<String> = nu
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
                .collect();
            if mono.is_empty() {
                parts.push(coef);
            } else {
                parts.push(format!("({coef})*{}", mono.join("*")));
            }
        }
        let mut s = parts.join(" + ");
        if let Some(e) = &self.err {
            s.push_str(&format!(" + O(t^{})", e.e0));
        }
        s
    }
}

fn min_cut(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}
