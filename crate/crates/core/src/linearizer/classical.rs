use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{linalg, Poly, RatFn, Rational};
use crate::geometry::{lie_bracket, VecField};

use super::{ControlSystem, Warning};

const SAMPLE_POINTS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Involutivity {
    /// Every pairwise bracket lies in the span, certified symbolically.
    Involutive,
    /// The bracket of chain members `i` and `j` leaves the span.
    NotInvolutive { i: usize, j: usize },
    /// Only checked at sample points (the chain is not of full rank).
    Sampled(bool),
}

impl Involutivity {
    pub fn holds(&self) -> bool {
        matches!(self, Involutivity::Involutive | Involutivity::Sampled(true))
    }
}

#[derive(Clone, Debug)]
pub struct Diagnostics {
    /// `g, ad_f g, …, ad_f^{n−1} g`.
    pub chain: Vec<VecField>,
    /// Generic rank of the chain.
    pub rank: usize,
    /// Full rank confirmed by a nonzero symbolic determinant.
    pub rank_certified: bool,
    pub involutivity: Involutivity,
    pub warnings: Vec<Warning>,
    pub elapsed: Duration,
}

impl Diagnostics {
    pub fn accessible(&self) -> bool {
        self.rank == self.chain.len()
    }

    /// Accessibility and involutivity both hold.
    pub fn linearizable(&self) -> bool {
        self.accessible() && self.involutivity.holds()
    }
}

/// `count` points with small random rational coordinates.
pub fn random_points(n: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let num: i64 = rng.gen_range(-9..=9);
                    let den: i64 = rng.gen_range(1..=7);
                    Rational::new(num.into(), den.into())
                })
                .collect()
        })
        .collect()
}

fn evaluate_rows(rows: &[&VecField], point: &[Rational]) -> Option<Vec<Vec<Rational>>> {
    rows.iter()
        .map(|v| {
            v.components()
                .iter()
                .map(|c| c.evaluate(point).ok().flatten())
                .collect::<Option<Vec<_>>>()
        })
        .collect()
}

fn symbolic_det(rows: &[&VecField]) -> RatFn {
    let m: Vec<Vec<RatFn>> = rows.iter().map(|v| v.components().to_vec()).collect();
    linalg::det_ratfn(&m)
}

/// Accessibility rank and involutivity of the controllability chain.
pub fn classical_check(sys: &ControlSystem, seed: u64) -> Diagnostics {
    let start = Instant::now();
    let n = sys.dim();
    let mut chain = vec![sys.g().clone()];
    while chain.len() < n {
        let next = lie_bracket(sys.f(), chain.last().expect("nonempty")).expect("shared context");
        chain.push(next);
    }
    let points = random_points(n, SAMPLE_POINTS, seed);
    let refs: Vec<&VecField> = chain.iter().collect();
    let mut rank = points
        .iter()
        .filter_map(|p| evaluate_rows(&refs, p))
        .map(|m| linalg::rank(&m))
        .max()
        .unwrap_or(0);
    let mut warnings = Vec::new();
    let mut rank_certified = false;
    if rank == n {
        let det = symbolic_det(&refs);
        if det.is_zero() {
            rank = n - 1;
            warnings.push(Warning {
                message: "sampled full rank not confirmed symbolically".into(),
                locus: "det(g, ad_f g, ...) = 0".into(),
            });
        } else {
            rank_certified = true;
            if !det.is_constant() {
                warnings.push(Warning {
                    message: "accessibility fails where the chain determinant vanishes".into(),
                    locus: format!("{} = 0", det.numer()),
                });
            }
        }
    }

    let span = &chain[..n.saturating_sub(1)];
    let involutivity = if span.len() <= 1 {
        Involutivity::Involutive
    } else if rank_certified {
        symbolic_involutivity(span)
    } else {
        warnings.push(Warning {
            message: "involutivity checked only at sample points".into(),
            locus: "chain rank below n".into(),
        });
        Involutivity::Sampled(sampled_involutivity(span, &points))
    };
    Diagnostics {
        chain,
        rank,
        rank_certified,
        involutivity,
        warnings,
        elapsed: start.elapsed(),
    }
}

/// With `n − 1` independent fields, a bracket lies in their span iff the
/// determinant with the bracket appended vanishes.
fn symbolic_involutivity(span: &[VecField]) -> Involutivity {
    for i in 0..span.len() {
        for j in i + 1..span.len() {
            let b = lie_bracket(&span[i], &span[j]).expect("shared context");
            if b.is_zero() {
                continue;
            }
            let mut rows: Vec<&VecField> = span.iter().collect();
            rows.push(&b);
            let det = if rows.iter().all(|v| v.is_polynomial()) {
                let m: Vec<Vec<Poly>> = rows
                    .iter()
                    .map(|v| v.components().iter().map(|c| c.numer().clone()).collect())
                    .collect();
                RatFn::from(linalg::det_poly(&m))
            } else {
                symbolic_det(&rows)
            };
            if !det.is_zero() {
                return Involutivity::NotInvolutive { i, j };
            }
        }
    }
    Involutivity::Involutive
}

fn sampled_involutivity(span: &[VecField], points: &[Vec<Rational>]) -> bool {
    let mut brackets = Vec::new();
    for i in 0..span.len() {
        for j in i + 1..span.len() {
            brackets.push(lie_bracket(&span[i], &span[j]).expect("shared context"));
        }
    }
    points.iter().all(|p| {
        let base: Vec<&VecField> = span.iter().collect();
        let Some(m) = evaluate_rows(&base, p) else {
            return true;
        };
        let r = linalg::rank(&m);
        brackets.iter().all(|b| {
            let mut rows = base.clone();
            rows.push(b);
            evaluate_rows(&rows, p).is_none_or(|m2| linalg::rank(&m2) == r)
        })
    })
}
