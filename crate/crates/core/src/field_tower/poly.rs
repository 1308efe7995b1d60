//! Polynomials over F_q and the t-adic base ring F_q[t] ⊂ F_q[[t]].

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use super::{Base, FieldError, FieldKind, Fq};

/// Dense coefficients, lowest degree first, no trailing zeros. The zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly(pub Vec<u32>);

impl Poly {
    pub fn from_coeffs(mut c: Vec<u32>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly(c)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: u32) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: u32, k: usize) -> Self {
        if c == 0 {
            return Poly::zero();
        }
        let mut v = vec![0; k + 1];
        v[k] = c;
        Poly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Degree with the convention deg 0 = 0.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn lead(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    /// Order of vanishing at t = 0.
    pub fn trailing_zeros(&self) -> Option<usize> {
        self.0.iter().position(|&c| c != 0)
    }

    pub fn truncate(&self, k: usize) -> Poly {
        Poly::from_coeffs(self.0[..k.min(self.0.len())].to_vec())
    }

    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.0);
        Poly(v)
    }

    pub fn shift_down(&self, k: usize) -> Poly {
        Poly::from_coeffs(self.0.get(k..).map(|s| s.to_vec()).unwrap_or_default())
    }
}

/// F_q[t] with π = t.
#[derive(Clone)]
pub struct TadicBase {
    pub fq: Arc<Fq>,
}

impl fmt::Debug for TadicBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TadicBase(q={})", self.fq.q())
    }
}

impl TadicBase {
    pub fn new(q: u64) -> Result<Self, FieldError> {
        Ok(TadicBase { fq: Arc::new(Fq::new(q)?) })
    }

    pub fn scale(&self, a: &Poly, c: u32) -> Poly {
        if c == 1 {
            return a.clone();
        }
        Poly::from_coeffs(a.0.iter().map(|&x| self.fq.mul(x, c)).collect())
    }

    /// Product truncated below t^k.
    pub fn mul_trunc(&self, a: &Poly, b: &Poly, k: usize) -> Poly {
        if a.is_zero() || b.is_zero() || k == 0 {
            return Poly::zero();
        }
        let len = (a.0.len() + b.0.len() - 1).min(k);
        let mut out = vec![0u32; len];
        let k = &self.fq;
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 || i >= len {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] = k.add(out[i + j], k.mul(x, y));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn eval(&self, a: &Poly, x: u32) -> u32 {
        a.0.iter().rev().fold(0, |acc, &c| self.fq.add(self.fq.mul(acc, x), c))
    }

    fn fmt_coeff(&self, c: u32) -> String {
        if self.fq.degree() == 1 {
            c.to_string()
        } else {
            format!("[{c}]")
        }
    }
}

impl Base for TadicBase {
    type Int = Poly;

    fn kind(&self) -> FieldKind {
        FieldKind::Tadic
    }
    fn p(&self) -> u64 {
        self.fq.p() as u64
    }
    fn q(&self) -> u64 {
        self.fq.q() as u64
    }
    fn characteristic(&self) -> u64 {
        self.fq.p() as u64
    }

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly(vec![1])
    }
    fn from_i64(&self, v: i64) -> Poly {
        Poly::constant(self.fq.from_i64(v))
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let (long, short) = if a.0.len() >= b.0.len() { (a, b) } else { (b, a) };
        let mut out = long.0.clone();
        for (o, &s) in out.iter_mut().zip(&short.0) {
            *o = self.fq.add(*o, s);
        }
        Poly::from_coeffs(out)
    }

    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &Poly) -> Poly {
        if self.fq.p() == 2 {
            return a.clone();
        }
        Poly(a.0.iter().map(|&c| self.fq.neg(c)).collect())
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.mul_trunc(a, b, usize::MAX)
    }

    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }

    fn divrem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        let db = b.degree().expect("division by zero polynomial");
        let inv = self.fq.inv(b.lead()).unwrap();
        let mut r = a.0.clone();
        if r.len() <= db {
            return (Poly::zero(), a.clone());
        }
        let mut quo = vec![0u32; r.len() - db];
        for i in (db..r.len()).rev() {
            let c = self.fq.mul(r[i], inv);
            if c == 0 {
                continue;
            }
            quo[i - db] = c;
            for (j, &bj) in b.0.iter().enumerate() {
                let t = self.fq.mul(c, bj);
                r[i - db + j] = self.fq.sub(r[i - db + j], t);
            }
        }
        r.truncate(db);
        (Poly::from_coeffs(quo), Poly::from_coeffs(r))
    }

    fn normalize(&self, a: &Poly) -> (Poly, Poly) {
        if a.is_zero() {
            return (Poly::zero(), self.one());
        }
        let lc = a.lead();
        (self.scale(a, self.fq.inv(lc).unwrap()), Poly::constant(lc))
    }

    fn is_unit(&self, a: &Poly) -> bool {
        a.0.len() == 1
    }

    fn euclid_size(&self, a: &Poly) -> BigUint {
        match a.degree() {
            None => BigUint::from(0u32),
            Some(d) => BigUint::from(self.q()).pow(d as u32),
        }
    }

    fn pi(&self) -> Poly {
        Poly::monomial(1, 1)
    }
    fn pi_pow(&self, k: u32) -> Poly {
        Poly::monomial(1, k as usize)
    }

    fn strip_pi(&self, a: &Poly) -> (u32, Poly) {
        let k = a.trailing_zeros().unwrap_or(0);
        (k as u32, a.shift_down(k))
    }

    fn mod_pi_pow(&self, a: &Poly, k: u32) -> Poly {
        a.truncate(k as usize)
    }

    fn inv_mod_pi_pow(&self, a: &Poly, k: u32) -> Option<Poly> {
        let c0 = self.fq.inv(a.coeff(0))?;
        let k = k as usize;
        let mut out = vec![0u32; k];
        // out = sum b_i t^i with (a * b)_i = [i == 0]
        for i in 0..k {
            let mut s = if i == 0 { 1 } else { 0 };
            for j in 1..=i.min(a.0.len().saturating_sub(1)) {
                s = self.fq.sub(s, self.fq.mul(a.0[j], out[i - j]));
            }
            out[i] = self.fq.mul(s, c0);
        }
        Some(Poly::from_coeffs(out))
    }

    fn digits(&self) -> Vec<Poly> {
        (0..self.fq.q()).map(Poly::constant).collect()
    }

    fn fmt_int(&self, a: &Poly) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in a.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => self.fmt_coeff(c),
                (1, _) => mono,
                _ => format!("{}*{mono}", self.fmt_coeff(c)),
            });
        }
        parts.join("+")
    }

    fn parse_int(&self, s: &str) -> Result<Poly, FieldError> {
        let err = || FieldError::Parse(s.to_string());
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        let mut acc = Poly::zero();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (negate, body) = match rest.as_bytes()[0] {
                b'+' => (false, &rest[1..]),
                b'-' => (true, &rest[1..]),
                _ => (false, rest),
            };
            let end = body[1..].find(['+', '-']).map(|i| i + 1).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            let (coef_s, mono) = match term.find('t') {
                Some(i) => (term[..i].trim_end_matches('*'), Some(&term[i + 1..])),
                None => (term, None),
            };
            let coef = if coef_s.is_empty() {
                1
            } else {
                let inner = coef_s.trim_start_matches('[').trim_end_matches(']');
                let v: i64 = inner.parse().map_err(|_| err())?;
                if self.fq.degree() > 1 && coef_s.starts_with('[') {
                    if v < 0 || v as u64 >= self.q() {
                        return Err(err());
                    }
                    v as u32
                } else {
                    self.fq.from_i64(v)
                }
            };
            let deg = match mono {
                None => 0,
                Some("") => 1,
                Some(e) => e.strip_prefix('^').ok_or_else(err)?.parse::<usize>().map_err(|_| err())?,
            };
            let mut term = Poly::monomial(coef, deg);
            if negate {
                term = self.neg(&term);
            }
            acc = self.add(&acc, &term);
        }
        Ok(acc)
    }

    fn int_from_digits(&self, digits: &[Vec<i64>]) -> Result<Poly, FieldError> {
        let p = self.p() as i64;
        let mut out = Vec::with_capacity(digits.len());
        for d in digits {
            if d.len() > self.fq.degree() as usize {
                return Err(FieldError::Parse(format!("{d:?}")));
            }
            let code = d.iter().rev().fold(0i64, |acc, &c| acc * p + c.rem_euclid(p));
            out.push(code as u32);
        }
        Ok(Poly::from_coeffs(out))
    }

    fn int_to_digits(&self, a: &Poly) -> Vec<Vec<i64>> {
        let p = self.p() as u32;
        a.0.iter()
            .map(|&c| {
                let mut v = Vec::new();
                let mut c = c;
                for _ in 0..self.fq.degree() {
                    v.push((c % p) as i64);
                    c /= p;
                }
                while v.len() > 1 && v.last() == Some(&0) {
                    v.pop();
                }
                v
            })
            .collect()
    }

    fn height_of(&self, num: &Poly, den: &Poly) -> BigUint {
        let d = num.degree_or_zero().max(den.degree_or_zero());
        BigUint::from(self.q()).pow(d as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let b = TadicBase::new(3).unwrap();
        let a = b.parse_int("t^3+2*t+1").unwrap();
        let d = b.parse_int("t+2").unwrap();
        let (q, r) = b.divrem(&a, &d);
        assert_eq!(b.add(&b.mul(&q, &d), &r), a);
        assert!(r.degree().is_none() || r.degree() < d.degree());
        let g = b.gcd(&b.mul(&a, &d), &b.mul(&d, &d));
        assert_eq!(g, d);
    }

    #[test]
    fn inverse_mod_t_power() {
        let b = TadicBase::new(2).unwrap();
        let inv = b.inv_mod_pi_pow(&b.parse_int("t+1").unwrap(), 4).unwrap();
        assert_eq!(b.fmt_int(&inv), "t^3+t^2+t+1");
        assert!(b.inv_mod_pi_pow(&b.pi(), 3).is_none());
    }

    #[test]
    fn print_parse_round_trip() {
        for q in [2u64, 3, 4, 9] {
            let b = TadicBase::new(q).unwrap();
            for code in 0..200u32 {
                let coeffs: Vec<u32> = (0..4).map(|i| (code / (q as u32).pow(i)) % q as u32).collect();
                let a = Poly::from_coeffs(coeffs);
                assert_eq!(b.parse_int(&b.fmt_int(&a)).unwrap(), a, "q={q}");
                assert_eq!(b.int_from_digits(&b.int_to_digits(&a)).unwrap(), a);
            }
        }
    }
}
