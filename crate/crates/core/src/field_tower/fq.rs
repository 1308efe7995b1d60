//! Finite fields F_q, q = p^f, with elements encoded as integers in `0..q`.
//!
//! An element `a` stands for the polynomial `sum d_i x^i` where `d_i` are the
//! base-p digits of `a`, reduced modulo a primitive polynomial of degree f.
//! Multiplication goes through log/exp tables, so q is capped at 2^16.

use super::FieldError;

pub const MAX_Q: u32 = 1 << 16;

#[derive(Clone, Debug)]
pub struct Fq {
    p: u32,
    f: u32,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits q = p^f, failing when q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 || q > MAX_Q as u64 {
        return None;
    }
    let q = q as u32;
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut m, mut f) = (q, 0);
    while m % p == 0 {
        m /= p;
        f += 1;
    }
    (m == 1 && is_prime(p)).then_some((p, f))
}

impl Fq {
    pub fn new(q: u64) -> Result<Self, FieldError> {
        let (p, f) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        let q = q as u32;
        let mut field = Fq { p, f, q, exp: Vec::new(), log: Vec::new() };
        if q == 2 {
            field.exp = vec![1];
            field.log = vec![0, 0];
            return Ok(field);
        }
        // Search for a modulus (f > 1) or a generator (f = 1) whose powers
        // run through the whole multiplicative group.
        let candidates: Vec<Vec<u32>> = if f == 1 {
            (2..p).map(|g| vec![g]).collect()
        } else {
            (0..q).map(|c| field.digits(c)).collect()
        };
        for cand in candidates {
            if let Some((exp, log)) = field.try_generator(&cand) {
                field.exp = exp;
                field.log = log;
                return Ok(field);
            }
        }
        Err(FieldError::NotPrimePower(q as u64))
    }

    fn try_generator(&self, cand: &[u32]) -> Option<(Vec<u32>, Vec<u32>)> {
        let (p, f, q) = (self.p, self.f as usize, self.q);
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = vec![0u32; f];
        cur[0] = 1;
        for k in 0..q - 1 {
            let code = self.encode(&cur);
            if log[code as usize] != u32::MAX {
                return None;
            }
            log[code as usize] = k;
            exp.push(code);
            if f == 1 {
                cur[0] = ((cur[0] as u64 * cand[0] as u64) % p as u64) as u32;
            } else {
                // multiply by x modulo x^f + cand (cand = lower coefficients of the modulus)
                let top = cur[f - 1];
                for i in (1..f).rev() {
                    cur[i] = cur[i - 1];
                }
                cur[0] = 0;
                for i in 0..f {
                    cur[i] = (cur[i] + (p - cand[i] % p) * top) % p;
                }
            }
        }
        let back = self.encode(&cur);
        (back == 1).then_some((exp, log))
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = vec![0; self.f as usize];
        for slot in d.iter_mut() {
            *slot = a % self.p;
            a /= self.p;
        }
        d
    }

    fn encode(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.f
    }
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            a ^ b
        } else if self.f == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else {
            let (mut a, mut b, mut out, mut scale) = (a, b, 0, 1);
            while a > 0 || b > 0 {
                out += ((a % self.p + b % self.p) % self.p) * scale;
                a /= self.p;
                b /= self.p;
                scale *= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 || a == 0 {
            a
        } else if self.f == 1 {
            self.p - a
        } else {
            let (mut a, mut out, mut scale) = (a, 0, 1);
            while a > 0 {
                out += ((self.p - a % self.p) % self.p) * scale;
                a /= self.p;
                scale *= self.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.q == 2 {
            return 1;
        }
        let n = self.q - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(if s >= n { s - n } else { s }) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if self.q == 2 {
            return Some(1);
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    /// Image of an integer under Z -> F_p -> F_q.
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}
