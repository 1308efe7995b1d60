//! Rational reconstruction: the unique fraction of height ≤ H congruent to
//! a residue mod π^P, via the half-extended Euclidean algorithm.

use num_bigint::BigUint;

use super::{Base, FieldError, FieldKind, Frac, LocalElem};

/// Largest h with q^h ≤ H (H ≥ 1).
pub fn floor_log(h: &BigUint, q: u64) -> u32 {
    if h.bits() <= 64 {
        let (h, q) = (u64::try_from(h).unwrap(), q as u128);
        let mut acc = q;
        let mut k = 0;
        while acc <= h as u128 {
            acc *= q;
            k += 1;
        }
        return k;
    }
    // estimate from the bit length, then correct exactly
    let shift = h.bits().saturating_sub(64);
    let top = u64::try_from(h >> shift).unwrap() as f64;
    let est = (top.log2() + shift as f64) / (q as f64).log2();
    let qb = BigUint::from(q);
    let mut k = (est.floor() as u32).saturating_sub(1);
    while &qb.pow(k) > h {
        k -= 1;
    }
    while &qb.pow(k + 1) <= h {
        k += 1;
    }
    k
}

/// Smallest k with q^k ≥ H (H ≥ 1).
pub fn ceil_log(h: &BigUint, q: u64) -> u32 {
    let k = floor_log(h, q);
    if &BigUint::from(q).pow(k) == h {
        k
    } else {
        k + 1
    }
}

/// Whether precision `prec` (in units of val(π)) separates fractions of
/// height ≤ H: p^P > 2H² (p-adic) or P > 2 log_q H (t-adic).
pub fn precision_suffices<B: Base>(b: &B, prec: u32, height: &BigUint) -> bool {
    match b.kind() {
        FieldKind::Padic => BigUint::from(b.p()).pow(prec) > height * height * 2u32,
        FieldKind::Tadic => prec > 2 * floor_log(height, b.q()),
    }
}

/// Smallest precision passing [`precision_suffices`].
pub fn required_precision<B: Base>(b: &B, height: &BigUint) -> u32 {
    let mut p = 1;
    while !precision_suffices(b, p, height) {
        p += 1;
    }
    p
}

/// Reconstructs from a residue `x` mod π^prec without the precision guard.
pub fn reconstruct_unchecked<B: Base>(b: &B, x: &B::Int, prec: u32, height: &BigUint) -> Option<Frac<B::Int>> {
    let m = b.pi_pow(prec);
    let mut r0 = m.clone();
    let mut r1 = b.mod_pi_pow(x, prec);
    let mut t0 = b.zero();
    let mut t1 = b.one();
    while &b.euclid_size(&r1) > height {
        let (q, r) = b.divrem(&r0, &r1);
        let t = b.sub(&t0, &b.mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    if b.is_zero(&t1) || &b.euclid_size(&t1) > height {
        return None;
    }
    if b.val(&t1) != Some(0) {
        return None;
    }
    if b.is_zero(&r1) {
        return Some(b.f_zero());
    }
    if !b.is_unit(&b.gcd(&r1, &t1)) {
        return None;
    }
    let v = b.frac(r1, t1).ok()?;
    (&b.height(&v) <= height).then_some(v)
}

/// The unique fraction of height ≤ H agreeing with `x` to its precision,
/// or `None` when there is none.
pub fn rational_reconstruct<B: Base>(
    b: &B,
    x: &LocalElem<B::Int>,
    height: &BigUint,
) -> Result<Option<Frac<B::Int>>, FieldError> {
    if x.is_exact() {
        let comps = x.components();
        if comps.iter().any(|(r, _)| *r != 0) {
            return Ok(None);
        }
        let v = b.f_int(comps.first().map(|c| c.1.clone()).unwrap_or_else(|| b.zero()));
        return Ok((&b.height(&v) <= height).then_some(v));
    }
    let Some((res, prec)) = x.residue_mod_prec(b) else {
        return Ok(None);
    };
    if !precision_suffices(b, prec, height) {
        return Err(FieldError::InsufficientPrecision {
            have: prec as i64,
            need: required_precision(b, height) as i64,
        });
    }
    Ok(reconstruct_unchecked(b, &res, prec, height))
}
