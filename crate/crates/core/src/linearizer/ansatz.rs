//! Undetermined-coefficient solves: an unknown polynomial `Σ c_m m` over a
//! fixed monomial basis, and a linear operator given by its image on each
//! basis monomial.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{linalg, Monomial, Poly, Rational, VarContext};

/// Monomials of degree `1..=max_degree` in the `active` variables, graded-lex
/// descending.
pub(crate) fn monomial_basis(n: usize, active: &[usize], max_degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    fn rec(active: &[usize], k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k == active.len() {
            if cur.iter().any(|&e| e > 0) {
                out.push(Monomial::from_exponents(cur.clone()));
            }
            return;
        }
        for e in 0..=left {
            cur[active[k]] = e;
            rec(active, k + 1, left - e, cur, out);
        }
        cur[active[k]] = 0;
    }
    rec(active, 0, max_degree, &mut vec![0; n], &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Coefficient matrix of `c ↦ Σ_j c_j · images[j]`, where each image is a
/// tuple of polynomials; one row per (slot, monomial) pair.
fn matrix(images: &[Vec<Poly>]) -> Vec<Vec<Rational>> {
    let mut rows: BTreeMap<(usize, Monomial), Vec<Rational>> = BTreeMap::new();
    let ncols = images.len();
    for (j, img) in images.iter().enumerate() {
        for (slot, p) in img.iter().enumerate() {
            for (m, c) in p.terms() {
                rows.entry((slot, m.clone()))
                    .or_insert_with(|| vec![Rational::zero(); ncols])[j] = c.clone();
            }
        }
    }
    rows.into_values().collect()
}

/// Some `c` with `Σ c_j images[j] = target`.
pub(crate) fn solve_for(images: &[Vec<Poly>], target: &[Poly]) -> Option<Vec<Rational>> {
    let mut all: Vec<Vec<Poly>> = images.to_vec();
    all.push(target.to_vec());
    let m = matrix(&all);
    let ncols = images.len();
    let (a, b): (Vec<Vec<Rational>>, Vec<Rational>) = m
        .into_iter()
        .map(|mut row| {
            let last = row.pop().expect("target column");
            (row, last)
        })
        .unzip();
    if a.is_empty() {
        return target.iter().all(Poly::is_zero).then(|| vec![Rational::zero(); ncols]);
    }
    linalg::solve(&a, &b)
}

/// Basis of `{c : Σ c_j images[j] = 0}`.
pub(crate) fn kernel(images: &[Vec<Poly>]) -> Vec<Vec<Rational>> {
    linalg::nullspace(&matrix(images), images.len())
}

/// `Σ c_j m_j`.
pub(crate) fn assemble(ctx: &VarContext, basis: &[Monomial], coeffs: &[Rational]) -> Poly {
    Poly::from_terms(ctx, basis.iter().cloned().zip(coeffs.iter().cloned()))
}
