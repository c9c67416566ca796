use num_traits::{One, Signed};

use crate::geometry::{is_integrable, pair, KForm, VecField};

use super::ansatz;
use super::{is_nonzero_constant, LinearizerError, Warning};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OmegaSource {
    /// The hint at this position of the iteration's hint list.
    Hint(usize),
    /// `dx_j` with `g_j` a nonzero constant.
    Coordinate(usize),
    /// `dP` from the bounded-degree ansatz `dP·g = 1`.
    Ansatz { degree: u32 },
    /// `dx_j` with `g_j` of lowest degree (final iteration only).
    FinalCoordinate(usize),
    /// Differential of a component of a supplied map (first algorithm).
    MapHint,
}

#[derive(Clone, Debug)]
pub struct OmegaChoice {
    pub omega: KForm,
    pub source: OmegaSource,
    pub warnings: Vec<Warning>,
}

/// Picks the 1-form for one iteration: the first admissible hint, else a
/// coordinate form with constant pairing, else an exact form `dP` with
/// `dP·g = 1` and `deg P ≤ max_degree`. Non-constant pairings are only
/// accepted when `last` is set, since the pairing then becomes the
/// integrating factor. Only the `active` variables are used by the
/// heuristics.
pub fn choose_omega(
    g: &VecField,
    hints: &[KForm],
    iteration: usize,
    last: bool,
    active: &[usize],
    max_degree: u32,
) -> Result<OmegaChoice, LinearizerError> {
    if g.is_zero() {
        return Err(LinearizerError::Precondition(format!(
            "transversal field vanishes at iteration {iteration}"
        )));
    }
    let mut warnings = Vec::new();
    for (k, hint) in hints.iter().enumerate() {
        let Ok(wg) = pair(hint, g) else {
            warnings.push(Warning {
                message: format!("hint {k} at iteration {iteration} is not a 1-form in this context, skipped"),
                locus: hint.to_string(),
            });
            continue;
        };
        if wg.is_zero() {
            warnings.push(Warning {
                message: format!("hint {k} at iteration {iteration} annihilates g, skipped"),
                locus: hint.to_string(),
            });
            continue;
        }
        if !is_integrable(hint) {
            warnings.push(Warning {
                message: format!("hint {k} at iteration {iteration} is not integrable, skipped"),
                locus: hint.to_string(),
            });
            continue;
        }
        if is_nonzero_constant(&wg).is_none() {
            if !last {
                warnings.push(Warning {
                    message: format!(
                        "hint {k} at iteration {iteration} has non-constant pairing before the final iteration, skipped"
                    ),
                    locus: format!("{wg} = 0"),
                });
                continue;
            }
            warnings.push(Warning {
                message: format!("nonvanishing of the pairing at iteration {iteration} is not certified"),
                locus: format!("{wg} = 0"),
            });
        }
        return Ok(OmegaChoice {
            omega: hint.clone(),
            source: OmegaSource::Hint(k),
            warnings,
        });
    }

    let ctx = g.ctx();
    let constant_slot = active
        .iter()
        .filter_map(|&j| is_nonzero_constant(g.component(j)).map(|c| (j, c)))
        .min_by_key(|(j, c)| (!c.abs().is_one(), *j));
    if let Some((j, _)) = constant_slot {
        return Ok(OmegaChoice {
            omega: KForm::coordinate(ctx, j),
            source: OmegaSource::Coordinate(j),
            warnings,
        });
    }

    if g.is_polynomial() {
        let comps: Vec<_> = g.components().iter().map(|c| c.numer().clone()).collect();
        for degree in 1..=max_degree {
            let basis = ansatz::monomial_basis(ctx.dim(), active, degree);
            let images: Vec<Vec<_>> = basis
                .iter()
                .map(|m| {
                    let p = crate::algebra::Poly::monomial(ctx, m.clone(), One::one());
                    let mut acc = crate::algebra::Poly::zero(ctx);
                    for &i in active {
                        if !comps[i].is_zero() {
                            acc = &acc + &(&comps[i] * &p.partial(i));
                        }
                    }
                    vec![acc]
                })
                .collect();
            if let Some(c) = ansatz::solve_for(&images, &[crate::algebra::Poly::one(ctx)]) {
                let p = ansatz::assemble(ctx, &basis, &c);
                return Ok(OmegaChoice {
                    omega: KForm::exact(&p),
                    source: OmegaSource::Ansatz { degree },
                    warnings,
                });
            }
        }
    }

    if last {
        let best = active
            .iter()
            .filter(|&&j| !g.component(j).is_zero())
            .min_by_key(|&&j| {
                let c = g.component(j);
                (c.numer().degree().unwrap_or(0) + c.denom().degree().unwrap_or(0), c.numer().num_terms(), j)
            });
        if let Some(&j) = best {
            let wg = g.component(j).clone();
            warnings.push(Warning {
                message: format!("nonvanishing of the pairing at iteration {iteration} is not certified"),
                locus: format!("{wg} = 0"),
            });
            return Ok(OmegaChoice {
                omega: KForm::coordinate(ctx, j),
                source: OmegaSource::FinalCoordinate(j),
                warnings,
            });
        }
    }

    Err(LinearizerError::HeuristicExhausted {
        iteration,
        reason: format!(
            "no hint, constant coordinate pairing, or exact form of degree <= {max_degree} with pairing 1 for g = {g}"
        ),
    })
}
