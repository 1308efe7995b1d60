//! Specialized kernels for 3×3 interpolation determinants with monomials
//! 1, x, y: carry-less u64 arithmetic over F_2[t] and i64 over Z.

use rayon::prelude::*;

/// Product in F_2[t] of bit-packed polynomials (degrees must sum below 64).
#[inline]
pub fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut a = a;
    let mut shift = 0;
    while a != 0 {
        if a & 1 == 1 {
            acc ^= b << shift;
        }
        a >>= 1;
        shift += 1;
    }
    acc
}

/// Rows (d, x d, y d) with d a common denominator of the point's
/// coordinates, d(0) ≠ 0.
pub type Gf2Row = [u64; 3];

#[inline]
pub fn gf2_det3(a: &Gf2Row, b: &Gf2Row, c: &Gf2Row) -> u64 {
    clmul(a[0], clmul(b[1], c[2]) ^ clmul(b[2], c[1]))
        ^ clmul(a[1], clmul(b[0], c[2]) ^ clmul(b[2], c[0]))
        ^ clmul(a[2], clmul(b[0], c[1]) ^ clmul(b[1], c[0]))
}

#[inline]
pub fn i64_det3(a: &[i64; 3], b: &[i64; 3], c: &[i64; 3]) -> i128 {
    let (a, b, c) = (a.map(i128::from), b.map(i128::from), c.map(i128::from));
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

fn vp(mut x: i128, p: i128) -> u32 {
    let mut k = 0;
    while x % p == 0 {
        x /= p;
        k += 1;
    }
    k
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TripleStats {
    pub triples: u64,
    pub nonzero: u64,
    pub max_val: u32,
    /// Nonzero determinants with valuation above the bound.
    pub violations: u64,
}

impl TripleStats {
    fn merge(self, o: TripleStats) -> TripleStats {
        TripleStats {
            triples: self.triples + o.triples,
            nonzero: self.nonzero + o.nonzero,
            max_val: self.max_val.max(o.max_val),
            violations: self.violations + o.violations,
        }
    }
}

/// Valuations of all determinants over unordered triples of distinct rows.
/// Row denominators are units, so val(Δ) is the t-adic order of the
/// cleared determinant.
pub fn gf2_triples(rows: &[Gf2Row], bound: u32) -> TripleStats {
    let n = rows.len();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut s = TripleStats::default();
            for j in i + 1..n {
                for k in j + 1..n {
                    s.triples += 1;
                    let d = gf2_det3(&rows[i], &rows[j], &rows[k]);
                    if d != 0 {
                        let v = d.trailing_zeros();
                        s.nonzero += 1;
                        s.max_val = s.max_val.max(v);
                        if v > bound {
                            s.violations += 1;
                        }
                    }
                }
            }
            s
        })
        .reduce(TripleStats::default, TripleStats::merge)
}

pub fn i64_triples(rows: &[[i64; 3]], p: u64, bound: u32) -> TripleStats {
    let n = rows.len();
    let p = p as i128;
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut s = TripleStats::default();
            for j in i + 1..n {
                for k in j + 1..n {
                    s.triples += 1;
                    let d = i64_det3(&rows[i], &rows[j], &rows[k]);
                    if d != 0 {
                        let v = vp(d, p);
                        s.nonzero += 1;
                        s.max_val = s.max_val.max(v);
                        if v > bound {
                            s.violations += 1;
                        }
                    }
                }
            }
            s
        })
        .reduce(TripleStats::default, TripleStats::merge)
}
