//! Dense exact linear algebra over ℚ, ℚ[x] and ℚ(x).

use num_traits::{One, Zero};

use super::{Poly, RatFn, Rational};

/// Reduces `rows` to reduced row echelon form in place and returns the pivot
/// columns.
pub fn rref(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let k = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &k * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{v : rows · v = 0}` in `ncols` unknowns, one vector per free column.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// One solution of `a · v = b` (free unknowns set to zero), or `None` when
/// the system is inconsistent.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let ncols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut v = vec![Rational::zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = m[r][ncols].clone();
    }
    Some(v)
}

/// Determinant of a square polynomial matrix by fraction-free (Bareiss)
/// elimination.
pub fn det_poly(matrix: &[Vec<Poly>]) -> Poly {
    let n = matrix.len();
    assert!(n > 0 && matrix.iter().all(|r| r.len() == n), "square matrix expected");
    let ctx = matrix[0][0].ctx().clone();
    let mut m = matrix.to_vec();
    let mut sign = false;
    let mut prev = Poly::one(&ctx);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    sign = !sign;
                }
                None => return Poly::zero(&ctx),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Row echelon reduction over the field of rational functions; returns the
/// pivot columns.
pub fn rref_ratfn(rows: &mut [Vec<RatFn>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip().expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let k = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = &*v - &(&k * pv);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_ratfn(rows: &[Vec<RatFn>]) -> usize {
    let mut m = rows.to_vec();
    rref_ratfn(&mut m).len()
}

/// Determinant of a square rational-function matrix.
pub fn det_ratfn(matrix: &[Vec<RatFn>]) -> RatFn {
    let n = matrix.len();
    assert!(n > 0 && matrix.iter().all(|r| r.len() == n), "square matrix expected");
    if matrix.iter().flatten().all(RatFn::is_polynomial) {
        let polys: Vec<Vec<Poly>> = matrix
            .iter()
            .map(|r| r.iter().map(|e| e.numer().clone()).collect())
            .collect();
        return det_poly(&polys).into();
    }
    let ctx = matrix[0][0].ctx().clone();
    let mut m = matrix.to_vec();
    let mut det = RatFn::one(&ctx);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return RatFn::zero(&ctx);
        };
        if p != k {
            m.swap(k, p);
            det = -det;
        }
        det = &det * &m[k][k];
        let inv = m[k][k].recip().expect("nonzero pivot");
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] * &inv;
            for j in k..n {
                let t = &f * &m[k][j];
                m[i][j] = &m[i][j] - &t;
            }
        }
    }
    det
}
