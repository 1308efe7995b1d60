//! Fraction-free elimination over Z and F_q[t].

use crate::field_tower::Base;

/// Determinant by Bareiss elimination with row pivoting.
pub fn bareiss_det<B: Base>(b: &B, mut m: Vec<Vec<B::Int>>) -> B::Int {
    let n = m.len();
    if n == 0 {
        return b.one();
    }
    let mut negate = false;
    let mut prev = b.one();
    for k in 0..n {
        if b.is_zero(&m[k][k]) {
            let Some(r) = (k + 1..n).find(|&r| !b.is_zero(&m[r][k])) else {
                return b.zero();
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = b.sub(&b.mul(&m[i][j], &m[k][k]), &b.mul(&m[i][k], &m[k][j]));
                m[i][j] = b.exact_div(&v, &prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        b.neg(&d)
    } else {
        d
    }
}

/// Cofactor expansion, for cross-checking on small matrices.
pub fn cofactor_det<B: Base>(b: &B, m: &[Vec<B::Int>]) -> B::Int {
    let n = m.len();
    if n == 0 {
        return b.one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = b.zero();
    for j in 0..n {
        let minor: Vec<Vec<B::Int>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
        let t = b.mul(&m[0][j], &cofactor_det(b, &minor));
        acc = if j % 2 == 0 { b.add(&acc, &t) } else { b.sub(&acc, &t) };
    }
    acc
}

fn content<B: Base>(b: &B, row: &[B::Int]) -> B::Int {
    let mut g = b.zero();
    for x in row {
        if !b.is_zero(x) {
            g = if b.is_zero(&g) { b.normalize(x).0 } else { b.gcd(&g, x) };
            if b.is_unit(&g) {
                break;
            }
        }
    }
    g
}

/// Divides out the content and fixes the unit so the first nonzero entry
/// is canonical (positive, or monic).
pub fn normalize_vector<B: Base>(b: &B, v: &mut [B::Int]) {
    let g = content(b, v);
    if b.is_zero(&g) {
        return;
    }
    if !b.is_one(&g) {
        for x in v.iter_mut() {
            *x = b.exact_div(x, &g);
        }
    }
    if let Some(first) = v.iter().find(|x| !b.is_zero(x)).cloned() {
        let (_, u) = b.normalize(&first);
        if !b.is_one(&u) {
            for x in v.iter_mut() {
                *x = b.exact_div(x, &u);
            }
        }
    }
}

/// Rank and one normalized nullspace vector (if the kernel is nonzero),
/// by fraction-free Gauss–Jordan elimination with row content removal.
pub fn nullspace_vector<B: Base>(b: &B, mut m: Vec<Vec<B::Int>>, ncols: usize) -> (usize, Option<Vec<B::Int>>) {
    let rows = m.len();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !b.is_zero(&m[i][c])) else { continue };
        m.swap(r, p);
        for i in 0..rows {
            if i == r || b.is_zero(&m[i][c]) {
                continue;
            }
            let (a, f) = (m[r][c].clone(), m[i][c].clone());
            let mut new_row: Vec<B::Int> =
                (0..ncols).map(|j| b.sub(&b.mul(&a, &m[i][j]), &b.mul(&f, &m[r][j]))).collect();
            normalize_vector(b, &mut new_row);
            m[i] = new_row;
        }
        pivots.push((r, c));
        r += 1;
    }
    let rank = pivots.len();
    let Some(free) = (0..ncols).find(|c| !pivots.iter().any(|p| p.1 == *c)) else {
        return (rank, None);
    };
    // x_free = L, x_pc = -m[r][free] L / m[r][pc] with L the product of pivots
    let mut l = b.one();
    for &(pr, pc) in &pivots {
        if pc < free {
            l = b.mul(&l, &m[pr][pc]);
        }
    }
    let mut x = vec![b.zero(); ncols];
    x[free] = l.clone();
    for &(pr, pc) in &pivots {
        if pc < free {
            let num = b.mul(&m[pr][free], &l);
            x[pc] = b.neg(&b.exact_div(&num, &m[pr][pc]));
        }
    }
    normalize_vector(b, &mut x);
    (rank, Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_tower::PadicBase;
    use num_bigint::BigInt;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let b = PadicBase::new(5).unwrap();
        let m = mat(&[&[0, 2, 3, 1], &[4, 5, 6, 2], &[7, 8, 10, 3], &[1, 0, 2, 9]]);
        assert_eq!(bareiss_det(&b, m.clone()), cofactor_det(&b, &m));
        let z = mat(&[&[1, 2], &[1, 2]]);
        assert_eq!(bareiss_det(&b, z), BigInt::from(0));
    }

    #[test]
    fn line_through_collinear_points() {
        let b = PadicBase::new(5).unwrap();
        // columns 1, x, y at (0,1), (1,3), (2,5): y = 2x + 1
        let m = mat(&[&[1, 0, 1], &[1, 1, 3], &[1, 2, 5]]);
        let (rank, v) = nullspace_vector(&b, m, 3);
        assert_eq!(rank, 2);
        assert_eq!(v.unwrap(), vec![BigInt::from(1), BigInt::from(2), BigInt::from(-1)]);
    }
}
