//! Z with π = p, for the p-adic completion Q_p.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{fq, Base, FieldError, FieldKind};

#[derive(Clone, Debug)]
pub struct PadicBase {
    p: u64,
    pb: BigInt,
}

impl PadicBase {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        match fq::prime_power(p) {
            Some((_, 1)) => Ok(PadicBase { p, pb: BigInt::from(p) }),
            _ => Err(FieldError::NotPrime(p)),
        }
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

impl Base for PadicBase {
    type Int = BigInt;

    fn kind(&self) -> FieldKind {
        FieldKind::Padic
    }
    fn p(&self) -> u64 {
        self.p
    }
    fn q(&self) -> u64 {
        self.p
    }
    fn characteristic(&self) -> u64 {
        0
    }

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn divrem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        a.div_mod_floor(b)
    }
    fn exact_div(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a / b
    }
    fn normalize(&self, a: &BigInt) -> (BigInt, BigInt) {
        if a.is_negative() {
            (-a, BigInt::from(-1))
        } else {
            (a.clone(), BigInt::one())
        }
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.magnitude().is_one()
    }
    fn euclid_size(&self, a: &BigInt) -> BigUint {
        a.magnitude().clone()
    }
    fn gcd(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a.gcd(b)
    }

    fn pi(&self) -> BigInt {
        self.pb.clone()
    }
    fn pi_pow(&self, k: u32) -> BigInt {
        num_traits::pow(self.pb.clone(), k as usize)
    }
    fn strip_pi(&self, a: &BigInt) -> (u32, BigInt) {
        if a.is_zero() {
            return (0, a.clone());
        }
        let mut k = 0;
        let mut a = a.clone();
        loop {
            let (q, r) = a.div_rem(&self.pb);
            if !r.is_zero() {
                return (k, a);
            }
            a = q;
            k += 1;
        }
    }
    fn mod_pi_pow(&self, a: &BigInt, k: u32) -> BigInt {
        a.mod_floor(&self.pi_pow(k))
    }
    fn inv_mod_pi_pow(&self, a: &BigInt, k: u32) -> Option<BigInt> {
        if k == 0 {
            return Some(BigInt::zero());
        }
        mod_inverse(a, &self.pi_pow(k))
    }
    fn digits(&self) -> Vec<BigInt> {
        (0..self.p).map(BigInt::from).collect()
    }

    fn fmt_int(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn parse_int(&self, s: &str) -> Result<BigInt, FieldError> {
        s.trim().parse().map_err(|_| FieldError::Parse(s.to_string()))
    }
    fn int_from_digits(&self, digits: &[Vec<i64>]) -> Result<BigInt, FieldError> {
        let mut acc = BigInt::zero();
        for d in digits.iter().rev() {
            let c = match d.as_slice() {
                [] => 0,
                [c] => *c,
                _ => return Err(FieldError::Parse(format!("{d:?}"))),
            };
            acc = acc * &self.pb + c;
        }
        Ok(acc)
    }
    fn int_to_digits(&self, a: &BigInt) -> Vec<Vec<i64>> {
        // balanced-sign base-p digits: the sign is carried by every digit
        let neg = a.sign() == Sign::Minus;
        let mut m = a.magnitude().clone();
        let p = BigUint::from(self.p);
        let mut out = Vec::new();
        while !m.is_zero() {
            let (q, r) = m.div_rem(&p);
            let r = i64::try_from(r).unwrap();
            out.push(vec![if neg { -r } else { r }]);
            m = q;
        }
        out
    }

    fn height_of(&self, num: &BigInt, den: &BigInt) -> BigUint {
        num.magnitude().max(den.magnitude()).clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_two_mod_5_pow_5() {
        let b = PadicBase::new(5).unwrap();
        assert_eq!(b.inv_mod_pi_pow(&BigInt::from(2), 5), Some(BigInt::from(1563)));
        assert_eq!(b.inv_mod_pi_pow(&BigInt::from(10), 5), None);
    }

    #[test]
    fn digits_round_trip() {
        let b = PadicBase::new(5).unwrap();
        for v in -300i64..300 {
            let a = BigInt::from(v);
            assert_eq!(b.int_from_digits(&b.int_to_digits(&a)).unwrap(), a);
        }
        assert_eq!(b.strip_pi(&BigInt::from(75)), (2, BigInt::from(3)));
    }
}
