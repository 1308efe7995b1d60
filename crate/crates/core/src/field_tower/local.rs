//! Elements of V[s] with s^N = π, known to a finite absolute precision.
//!
//! `x = sum_r s^r c_r` with `0 <= r < N` and `c_r` in the base ring. The
//! classes r have distinct fractional valuations, so
//! `val(x) = min_r (N val(c_r) + r) / N` with no cancellation across r.
//! Valuations and precisions are stored in units of 1/N.

use num_rational::BigRational;

use super::{Base, FieldError, Frac, Valuation};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalElem<I> {
    n: u64,
    comps: Vec<(u32, I)>,
    /// Absolute precision in units of 1/n; `None` for exact elements.
    prec: Option<i64>,
}

fn add_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    Some(a? + b?)
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<I: Clone + Eq + Ord> LocalElem<I> {
    pub fn zero(n: u64) -> Self {
        LocalElem { n, comps: Vec::new(), prec: None }
    }

    /// Zero known only to precision `prec` (units of 1/n).
    pub fn zero_to(n: u64, prec: i64) -> Self {
        LocalElem { n, comps: Vec::new(), prec: Some(prec) }
    }

    pub fn root(&self) -> u64 {
        self.n
    }

    pub fn prec_units(&self) -> Option<i64> {
        self.prec
    }

    pub fn precision(&self) -> Valuation {
        match self.prec {
            Some(p) => Valuation::from_units(p, self.n),
            None => Valuation::Infinite,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    pub fn components(&self) -> &[(u32, I)] {
        &self.comps
    }

    /// Zero, either exactly or to the known precision.
    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.comps.is_empty() && self.prec.is_none()
    }
}

impl<I: Clone + Eq + Ord + std::fmt::Debug + std::hash::Hash + Send + Sync> LocalElem<I> {
    pub fn from_int<B: Base<Int = I>>(b: &B, a: I) -> Self {
        Self::from_comps(b, 1, vec![(0, a)], None)
    }

    pub fn from_comps<B: Base<Int = I>>(b: &B, n: u64, comps: Vec<(u32, I)>, prec: Option<i64>) -> Self {
        let mut comps = comps;
        comps.sort_by_key(|c| c.0);
        let mut merged: Vec<(u32, I)> = Vec::with_capacity(comps.len());
        for (r, c) in comps {
            assert!((r as u64) < n, "component index out of range");
            match merged.last_mut() {
                Some((lr, lc)) if *lr == r => *lc = b.add(lc, &c),
                _ => merged.push((r, c)),
            }
        }
        let mut out = LocalElem { n, comps: merged, prec };
        out.reduce(b);
        out
    }

    /// `t^(k/n)` exactly.
    pub fn s_pow<B: Base<Int = I>>(b: &B, n: u64, k: u64) -> Self {
        let (j, r) = (k / n, k % n);
        Self::from_comps(b, n, vec![(r as u32, b.pi_pow(j as u32))], None)
    }

    /// Embeds a global fraction with non-negative valuation, to precision
    /// `prec` in units of val(t).
    pub fn from_frac<B: Base<Int = I>>(b: &B, v: &Frac<I>, n: u64, prec: i64) -> Result<Self, FieldError> {
        if b.val(&v.den).unwrap_or(0) > 0 {
            return Err(FieldError::NegativeValuation);
        }
        let k = prec.max(0) as u32;
        let c = if b.is_one(&v.den) {
            v.num.clone()
        } else {
            let inv = b.inv_mod_pi_pow(&v.den, k).ok_or(FieldError::NegativeValuation)?;
            b.mod_pi_pow(&b.mul(&v.num, &inv), k)
        };
        Ok(Self::from_comps(b, n, vec![(0, c)], Some(prec * n as i64)))
    }

    /// Exact embedding of a global fraction whose denominator is 1.
    pub fn from_frac_exact<B: Base<Int = I>>(b: &B, v: &Frac<I>) -> Option<Self> {
        b.is_one(&v.den).then(|| Self::from_int(b, v.num.clone()))
    }

    fn reduce<B: Base<Int = I>>(&mut self, b: &B) {
        let n = self.n as i64;
        let prec = self.prec;
        self.comps.retain_mut(|(r, c)| {
            if let Some(p) = prec {
                let k = (p - *r as i64 + n - 1).div_euclid(n);
                if k <= 0 {
                    return false;
                }
                *c = b.mod_pi_pow(c, k as u32);
            }
            !b.is_zero(c)
        });
    }

    /// Re-expresses in terms of s' with s'^(m/n) = s, for n | m.
    pub fn lift<B: Base<Int = I>>(&self, _b: &B, m: u64) -> Self {
        if m == self.n {
            return self.clone();
        }
        assert!(m % self.n == 0, "root index {} does not divide {}", self.n, m);
        let f = m / self.n;
        LocalElem {
            n: m,
            comps: self.comps.iter().map(|(r, c)| ((*r as u64 * f) as u32, c.clone())).collect(),
            prec: self.prec.map(|p| p * f as i64),
        }
    }

    fn common<B: Base<Int = I>>(&self, b: &B, other: &Self) -> (Self, Self) {
        if self.n == other.n {
            return (self.clone(), other.clone());
        }
        let m = num_integer::lcm(self.n, other.n);
        (self.lift(b, m), other.lift(b, m))
    }

    /// Lowest valuation among components, in units of 1/n.
    pub fn val_units<B: Base<Int = I>>(&self, b: &B) -> Option<i64> {
        self.comps.iter().map(|(r, c)| self.n as i64 * b.val(c).unwrap() as i64 + *r as i64).min()
    }

    /// Certified valuation; zero to precision reports `Infinite` only when
    /// exact, otherwise its precision as a lower bound.
    pub fn valuation<B: Base<Int = I>>(&self, b: &B) -> Valuation {
        match (self.val_units(b), self.prec) {
            (Some(v), _) => Valuation::from_units(v, self.n),
            (None, Some(p)) => Valuation::from_units(p, self.n),
            (None, None) => Valuation::Infinite,
        }
    }

    /// Valuation lower bound in units of 1/n (`None` = +∞).
    fn val_lb<B: Base<Int = I>>(&self, b: &B) -> Option<i64> {
        self.val_units(b).or(self.prec)
    }

    pub fn add<B: Base<Int = I>>(&self, b: &B, other: &Self) -> Self {
        let (x, y) = self.common(b, other);
        let mut comps = x.comps;
        comps.extend(y.comps);
        Self::from_comps(b, x.n, comps, min_opt(x.prec, y.prec))
    }

    pub fn neg<B: Base<Int = I>>(&self, b: &B) -> Self {
        let comps = self.comps.iter().map(|(r, c)| (*r, b.neg(c))).collect();
        Self::from_comps(b, self.n, comps, self.prec)
    }

    pub fn sub<B: Base<Int = I>>(&self, b: &B, other: &Self) -> Self {
        self.add(b, &other.neg(b))
    }

    pub fn mul<B: Base<Int = I>>(&self, b: &B, other: &Self) -> Self {
        let (x, y) = self.common(b, other);
        let n = x.n as u32;
        let prec = min_opt(add_opt(x.val_lb(b), y.prec), add_opt(y.val_lb(b), x.prec));
        let prec = match (x.prec, y.prec) {
            (None, None) => None,
            _ => Some(prec.unwrap_or(i64::MAX / 4)),
        };
        let pi = b.pi();
        let mut comps = Vec::with_capacity(x.comps.len() * y.comps.len());
        for (r1, c1) in &x.comps {
            for (r2, c2) in &y.comps {
                let mut c = b.mul(c1, c2);
                let mut r = r1 + r2;
                if r >= n {
                    r -= n;
                    c = b.mul(&c, &pi);
                }
                comps.push((r, c));
            }
        }
        Self::from_comps(b, x.n, comps, prec)
    }

    pub fn pow<B: Base<Int = I>>(&self, b: &B, e: u32) -> Self {
        let mut out = Self::from_int(b, b.one()).lift(b, self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(b, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(b, &base);
            }
        }
        out
    }

    /// Multiplies by `s^k`; negative `k` requires exact divisibility.
    pub fn shift<B: Base<Int = I>>(&self, b: &B, k: i64) -> Result<Self, FieldError> {
        let n = self.n as i64;
        let mut comps = Vec::with_capacity(self.comps.len());
        for (r, c) in &self.comps {
            let rr = *r as i64 + k;
            let (j, r2) = (rr.div_euclid(n), rr.rem_euclid(n));
            let c = if j >= 0 {
                b.mul(c, &b.pi_pow(j as u32))
            } else {
                let d = b.pi_pow((-j) as u32);
                let (q, rem) = b.divrem(c, &d);
                if !b.is_zero(&rem) {
                    return Err(FieldError::NegativeValuation);
                }
                q
            };
            comps.push((r2 as u32, c));
        }
        Ok(Self::from_comps(b, self.n, comps, self.prec.map(|p| p + k)))
    }

    /// Lowers the precision to `p` (units of 1/n).
    pub fn truncate<B: Base<Int = I>>(&self, b: &B, p: i64) -> Self {
        let prec = min_opt(self.prec, Some(p));
        Self::from_comps(b, self.n, self.comps.clone(), prec)
    }

    /// The image in the residue field V[s]/(s).
    pub fn residue<B: Base<Int = I>>(&self, b: &B) -> I {
        match self.comps.first() {
            Some((0, c)) => b.mod_pi_pow(c, 1),
            _ => b.zero(),
        }
    }

    /// For n = 1 elements: the residue class mod π^P with P the precision.
    pub fn residue_mod_prec<B: Base<Int = I>>(&self, b: &B) -> Option<(I, u32)> {
        if self.comps.iter().any(|(r, _)| *r != 0) {
            return None;
        }
        let p = (self.prec? / self.n as i64).max(0) as u32;
        let c = self.comps.first().map(|(_, c)| c.clone()).unwrap_or_else(|| b.zero());
        Some((b.mod_pi_pow(&c, p), p))
    }

    /// Equality of the two elements up to their common precision.
    pub fn agrees<B: Base<Int = I>>(&self, b: &B, other: &Self) -> bool {
        self.sub(b, other).is_zero()
    }

    pub fn valuation_rational<B: Base<Int = I>>(&self, b: &B) -> Option<BigRational> {
        self.valuation(b).finite().cloned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_tower::{PadicBase, TadicBase};
    use num_bigint::BigInt;

    #[test]
    fn embed_half_in_q5() {
        let b = PadicBase::new(5).unwrap();
        let half = b.frac(1.into(), 2.into()).unwrap();
        let x = LocalElem::from_frac(&b, &half, 1, 5).unwrap();
        assert_eq!(x.residue_mod_prec(&b), Some((BigInt::from(1563), 5)));
        let fifth = b.frac(1.into(), 5.into()).unwrap();
        assert_eq!(LocalElem::from_frac(&b, &fifth, 1, 5), Err(FieldError::NegativeValuation));
        let z = LocalElem::from_frac(&b, &b.f_zero(), 1, 5).unwrap();
        assert!(z.is_zero());
        assert!(LocalElem::<BigInt>::zero(1).valuation(&b).is_infinite());
    }

    #[test]
    fn embed_geometric_series() {
        let b = TadicBase::new(2).unwrap();
        let v = b.parse_frac("1/(t+1)").unwrap();
        let x = LocalElem::from_frac(&b, &v, 1, 4).unwrap();
        let (r, p) = x.residue_mod_prec(&b).unwrap();
        assert_eq!((b.fmt_int(&r).as_str(), p), ("t^3+t^2+t+1", 4));
    }

    #[test]
    fn fractional_powers_multiply() {
        let b = TadicBase::new(2).unwrap();
        let s = LocalElem::s_pow(&b, 3, 1);
        let t = s.pow(&b, 3);
        assert_eq!(t, LocalElem::from_int(&b, b.pi()).lift(&b, 3));
        assert_eq!(s.mul(&b, &s).valuation(&b), Valuation::ratio(2, 3));
        let u = s.shift(&b, 5).unwrap().shift(&b, -6).unwrap();
        assert_eq!(u, LocalElem::from_int(&b, b.one()).lift(&b, 3));
    }

    #[test]
    fn precision_of_products() {
        let b = PadicBase::new(5).unwrap();
        let x = LocalElem::from_frac(&b, &b.f_int(25.into()), 1, 6).unwrap();
        let y = LocalElem::from_frac(&b, &b.f_int(3.into()), 1, 4).unwrap();
        let z = x.mul(&b, &y);
        // 25 known to 5^6, 3 known to 5^4: the product is known to 5^6
        assert_eq!(z.prec_units(), Some(6));
        assert_eq!(z.valuation(&b), Valuation::int(2));
    }
}
