//! Exact arithmetic in Q and F_q(t), their completions at finite precision,
//! rational-valued valuations and heights.
//!
//! Both global fields are driven through the [`Base`] trait: `Int` is the
//! ring of integers (Z or F_q[t]) and π is the distinguished prime (p or t).
//! Fractions over either ring share one generic representation, [`Frac`].

pub mod fq;
pub mod local;
pub mod padic;
pub mod poly;
pub mod reconstruct;
pub mod valuation;

use std::fmt;
use std::hash::Hash;

use num_bigint::BigUint;
use thiserror::Error;

pub use fq::Fq;
pub use local::LocalElem;
pub use padic::PadicBase;
pub use poly::{Poly, TadicBase};
pub use reconstruct::rational_reconstruct;
pub use valuation::Valuation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a supported prime power")]
    NotPrimePower(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("value has negative valuation in this completion")]
    NegativeValuation,
    #[error("precision {have} is too small for height bound (need {need})")]
    InsufficientPrecision { have: i64, need: i64 },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Padic,
    Tadic,
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldKind::Padic => "padic",
            FieldKind::Tadic => "tadic",
        })
    }
}

/// The ring of integers of a global field together with its local prime.
///
/// All methods are pure; implementors are cheap to clone (shared tables
/// sit behind `Arc`).
pub trait Base: Clone + fmt::Debug + Send + Sync + 'static {
    type Int: Clone + fmt::Debug + Eq + Ord + Hash + Send + Sync;

    fn kind(&self) -> FieldKind;
    /// Residue characteristic.
    fn p(&self) -> u64;
    /// Size of the residue field.
    fn q(&self) -> u64;
    /// Characteristic of the global field (0 for Q).
    fn characteristic(&self) -> u64;

    fn zero(&self) -> Self::Int;
    fn one(&self) -> Self::Int;
    fn from_i64(&self, v: i64) -> Self::Int;
    fn add(&self, a: &Self::Int, b: &Self::Int) -> Self::Int;
    fn sub(&self, a: &Self::Int, b: &Self::Int) -> Self::Int;
    fn neg(&self, a: &Self::Int) -> Self::Int;
    fn mul(&self, a: &Self::Int, b: &Self::Int) -> Self::Int;
    fn is_zero(&self, a: &Self::Int) -> bool;
    fn is_one(&self, a: &Self::Int) -> bool {
        *a == self.one()
    }
    /// Euclidean division with `b != 0`.
    fn divrem(&self, a: &Self::Int, b: &Self::Int) -> (Self::Int, Self::Int);
    /// Division known to be exact.
    fn exact_div(&self, a: &Self::Int, b: &Self::Int) -> Self::Int {
        let (q, r) = self.divrem(a, b);
        debug_assert!(self.is_zero(&r), "inexact division");
        q
    }
    /// Canonical associate (non-negative integer, monic polynomial) and the
    /// unit `u` with `a = u * canonical`.
    fn normalize(&self, a: &Self::Int) -> (Self::Int, Self::Int);
    fn is_unit(&self, a: &Self::Int) -> bool;
    /// Euclidean size used to order remainders: |a| or deg a.
    fn euclid_size(&self, a: &Self::Int) -> BigUint;

    fn gcd(&self, a: &Self::Int, b: &Self::Int) -> Self::Int {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !self.is_zero(&y) {
            let (_, r) = self.divrem(&x, &y);
            x = y;
            y = r;
        }
        self.normalize(&x).0
    }

    fn pi(&self) -> Self::Int;
    fn pi_pow(&self, k: u32) -> Self::Int;
    /// π-adic valuation; `None` for zero.
    fn val(&self, a: &Self::Int) -> Option<u32> {
        if self.is_zero(a) {
            None
        } else {
            Some(self.strip_pi(a).0)
        }
    }
    /// Writes `a = π^k u` with π not dividing u.
    fn strip_pi(&self, a: &Self::Int) -> (u32, Self::Int);
    /// Canonical residue of `a` modulo π^k.
    fn mod_pi_pow(&self, a: &Self::Int, k: u32) -> Self::Int;
    fn inv_mod_pi_pow(&self, a: &Self::Int, k: u32) -> Option<Self::Int>;
    /// Canonical representatives of V/π, in a fixed order starting with 0.
    fn digits(&self) -> Vec<Self::Int>;

    fn fmt_int(&self, a: &Self::Int) -> String;
    fn parse_int(&self, s: &str) -> Result<Self::Int, FieldError>;
    /// Coefficient literal `[[c_0],[c_1],...]` read as `sum c_i t^i`
    /// (with t = p in the p-adic case).
    fn int_from_digits(&self, digits: &[Vec<i64>]) -> Result<Self::Int, FieldError>;
    fn int_to_digits(&self, a: &Self::Int) -> Vec<Vec<i64>>;

    /// Height of `num/den` in lowest terms.
    fn height_of(&self, num: &Self::Int, den: &Self::Int) -> BigUint;

    // ---- fractions ------------------------------------------------------

    fn frac(&self, num: Self::Int, den: Self::Int) -> Result<Frac<Self::Int>, FieldError> {
        if self.is_zero(&den) {
            return Err(FieldError::ZeroDenominator);
        }
        if self.is_zero(&num) {
            return Ok(self.f_zero());
        }
        let g = self.gcd(&num, &den);
        let (num, den) = if self.is_one(&g) {
            (num, den)
        } else {
            (self.exact_div(&num, &g), self.exact_div(&den, &g))
        };
        let (den_c, u) = self.normalize(&den);
        let num = if self.is_one(&u) { num } else { self.exact_div(&num, &u) };
        Ok(Frac { num, den: den_c })
    }
    fn f_int(&self, a: Self::Int) -> Frac<Self::Int> {
        Frac { num: a, den: self.one() }
    }
    fn f_zero(&self) -> Frac<Self::Int> {
        Frac { num: self.zero(), den: self.one() }
    }
    fn f_one(&self) -> Frac<Self::Int> {
        Frac { num: self.one(), den: self.one() }
    }
    fn f_is_zero(&self, a: &Frac<Self::Int>) -> bool {
        self.is_zero(&a.num)
    }
    fn f_add(&self, a: &Frac<Self::Int>, b: &Frac<Self::Int>) -> Frac<Self::Int> {
        if a.den == b.den {
            return self.frac(self.add(&a.num, &b.num), a.den.clone()).unwrap();
        }
        let num = self.add(&self.mul(&a.num, &b.den), &self.mul(&b.num, &a.den));
        self.frac(num, self.mul(&a.den, &b.den)).unwrap()
    }
    fn f_neg(&self, a: &Frac<Self::Int>) -> Frac<Self::Int> {
        Frac { num: self.neg(&a.num), den: a.den.clone() }
    }
    fn f_sub(&self, a: &Frac<Self::Int>, b: &Frac<Self::Int>) -> Frac<Self::Int> {
        self.f_add(a, &self.f_neg(b))
    }
    fn f_mul(&self, a: &Frac<Self::Int>, b: &Frac<Self::Int>) -> Frac<Self::Int> {
        if self.f_is_zero(a) || self.f_is_zero(b) {
            return self.f_zero();
        }
        self.frac(self.mul(&a.num, &b.num), self.mul(&a.den, &b.den)).unwrap()
    }
    fn f_inv(&self, a: &Frac<Self::Int>) -> Option<Frac<Self::Int>> {
        (!self.f_is_zero(a)).then(|| self.frac(a.den.clone(), a.num.clone()).unwrap())
    }
    fn f_div(&self, a: &Frac<Self::Int>, b: &Frac<Self::Int>) -> Option<Frac<Self::Int>> {
        Some(self.f_mul(a, &self.f_inv(b)?))
    }
    fn f_pow(&self, a: &Frac<Self::Int>, e: u32) -> Frac<Self::Int> {
        let mut out = self.f_one();
        for _ in 0..e {
            out = self.f_mul(&out, a);
        }
        out
    }
    /// π-adic valuation of a fraction; `None` for zero.
    fn f_val(&self, a: &Frac<Self::Int>) -> Option<i64> {
        let vn = self.val(&a.num)? as i64;
        Some(vn - self.val(&a.den).unwrap_or(0) as i64)
    }
    fn height(&self, a: &Frac<Self::Int>) -> BigUint {
        self.height_of(&a.num, &a.den)
    }
    fn fmt_frac(&self, a: &Frac<Self::Int>) -> String {
        if self.is_one(&a.den) {
            self.fmt_int(&a.num)
        } else {
            format!("{}/{}", wrap(self.fmt_int(&a.num)), wrap(self.fmt_int(&a.den)))
        }
    }
    fn parse_frac(&self, s: &str) -> Result<Frac<Self::Int>, FieldError> {
        let s = s.trim();
        match split_top_slash(s) {
            Some((n, d)) => self.frac(self.parse_int(unwrap_parens(n))?, self.parse_int(unwrap_parens(d))?),
            None => Ok(self.f_int(self.parse_int(unwrap_parens(s))?)),
        }
    }
}

fn wrap(s: String) -> String {
    if s.contains(['+', ' ']) || s[1..].contains('-') {
        format!("({s})")
    } else {
        s
    }
}

fn unwrap_parens(s: &str) -> &str {
    let s = s.trim();
    if s.starts_with('(') && s.ends_with(')') {
        &s[1..s.len() - 1]
    } else {
        s
    }
}

fn split_top_slash(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

/// A fraction in lowest terms with canonical denominator. Construct through
/// [`Base::frac`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frac<I> {
    pub num: I,
    pub den: I,
}

/// Elements of Q.
pub type Rational = Frac<num_bigint::BigInt>;
/// Elements of F_q(t).
pub type RatFunc = Frac<Poly>;

/// Field context: which completion, residue data, root-of-t index and
/// working precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFieldCtx {
    pub kind: FieldKind,
    /// p (p-adic) or q (t-adic).
    pub p_or_q: u64,
    pub p: u64,
    pub f: u32,
    pub sigma: u32,
    pub ramification: u32,
    pub denom: u64,
    /// Working precision in units of val(t) = 1.
    pub work_prec: i64,
}

impl LocalFieldCtx {
    pub fn padic(p: u64, work_prec: i64) -> Result<Self, FieldError> {
        if fq::prime_power(p) != Some((p as u32, 1)) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(LocalFieldCtx { kind: FieldKind::Padic, p_or_q: p, p, f: 1, sigma: 1, ramification: 1, denom: 1, work_prec })
    }

    pub fn tadic(q: u64, work_prec: i64) -> Result<Self, FieldError> {
        let (p, f) = fq::prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Ok(LocalFieldCtx {
            kind: FieldKind::Tadic,
            p_or_q: q,
            p: p as u64,
            f,
            sigma: 1,
            ramification: 1,
            denom: 1,
            work_prec,
        })
    }

    pub fn q(&self) -> u64 {
        self.p_or_q
    }

    pub fn with_prec(&self, work_prec: i64) -> Self {
        LocalFieldCtx { work_prec, ..self.clone() }
    }

    pub fn with_denom(&self, denom: u64) -> Self {
        LocalFieldCtx { denom, ..self.clone() }
    }

    pub fn check(&self) -> Result<(), FieldError> {
        if self.work_prec <= 0 || self.denom == 0 {
            return Err(FieldError::Unsupported("precision and root index must be positive".into()));
        }
        if self.sigma != 1 || self.ramification != 1 {
            return Err(FieldError::Unsupported("only sigma = r = 1 is backed by a concrete field".into()));
        }
        Ok(())
    }
}

/// Embeds a global value into the completion described by `ctx`, to the
/// context's working precision.
pub fn local_embed<B: Base>(b: &B, v: &Frac<B::Int>, ctx: &LocalFieldCtx) -> Result<LocalElem<B::Int>, FieldError> {
    LocalElem::from_frac(b, v, ctx.denom, ctx.work_prec)
}

/// Height of a rational number: max(|num|, den).
pub fn height_rat(v: &Rational) -> BigUint {
    let a = v.num.magnitude().clone();
    let b = v.den.magnitude().clone();
    a.max(b)
}

/// Height of an element of F_q(t): q^max(deg num, deg den), with deg 0 := 0.
pub fn height_ratfunc(v: &RatFunc, q: u64) -> BigUint {
    BigUint::from(q).pow(v.num.degree_or_zero().max(v.den.degree_or_zero()) as u32)
}

/// `log_q H` for H a power of q.
pub fn exact_log(h: &BigUint, q: u64) -> Option<u32> {
    let q = BigUint::from(q);
    let mut acc = BigUint::from(1u32);
    let mut k = 0;
    while &acc < h {
        acc *= &q;
        k += 1;
    }
    (&acc == h).then_some(k)
}
