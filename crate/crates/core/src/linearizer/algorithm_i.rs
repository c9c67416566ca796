use crate::algebra::{linalg, Poly, RatFn, VarContext};
use crate::algebroid::AlgebroidContext;
use crate::geometry::{
    compose, exterior_derivative, integrate_exact, lie_bracket, pair, pushforward, wedge, KForm, PolyMap, VecField,
};

use super::classical::random_points;
use super::omega::{choose_omega, OmegaSource};
use super::{
    ansatz, normalize_output, verify_relative_degree, ControlSystem, IterationRecord, LinearizationTrace,
    LinearizerError, Method, OmegaHints, Options,
};

const LETTERS: [&str; 9] = ["z", "w", "v", "u", "t", "s", "r", "q", "p"];

/// Coordinates after `i` straightening steps: the system's own names for
/// `i = 0`, then `z1…zn`, `w1…wn`, … skipping prefixes that clash.
pub fn iteration_context(sys: &VarContext, i: usize) -> VarContext {
    if i == 0 {
        return sys.clone();
    }
    let n = sys.dim();
    let free: Vec<String> = LETTERS
        .iter()
        .filter(|p| (1..=n).all(|k| sys.index_of(&format!("{p}{k}")).is_none()))
        .map(|p| p.to_string())
        .collect();
    let prefix = match free.get(i - 1) {
        Some(p) => p.clone(),
        None => format!("c{i}_"),
    };
    VarContext::numbered(&prefix, n).expect("fresh names")
}

/// Per-iteration straightening maps given by the user. Components are
/// expressions in the iteration's coordinates, one per coordinate that is
/// still active; consumed coordinates are carried along unchanged.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MapHints {
    per_iteration: Vec<Option<Vec<Poly>>>,
}

impl MapHints {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn set(&mut self, iteration: usize, comps: Vec<Poly>) {
        if self.per_iteration.len() <= iteration {
            self.per_iteration.resize(iteration + 1, None);
        }
        self.per_iteration[iteration] = Some(comps);
    }

    pub fn at(&self, iteration: usize) -> Option<&[Poly]> {
        self.per_iteration.get(iteration).and_then(|c| c.as_deref())
    }

    pub fn is_empty(&self) -> bool {
        self.per_iteration.iter().all(Option::is_none)
    }
}

fn active_jacobian_rank(polys: &[Poly], active: &[usize], points: &[Vec<crate::algebra::Rational>]) -> usize {
    let grads: Vec<Vec<Poly>> = polys
        .iter()
        .map(|p| active.iter().map(|&j| p.partial(j)).collect())
        .collect();
    points
        .iter()
        .filter_map(|pt| {
            grads
                .iter()
                .map(|row| row.iter().map(|d| d.evaluate(pt).ok()).collect::<Option<Vec<_>>>())
                .collect::<Option<Vec<_>>>()
        })
        .map(|m| linalg::rank(&m))
        .max()
        .unwrap_or(0)
}

/// Kernel of a linear operator on the degree-bounded ansatz space, as
/// polynomials of increasing degree. Monomials involving no active variable
/// are left out.
fn ansatz_kernel<F>(ctx: &VarContext, active: &[usize], max_degree: u32, op: F) -> Vec<Poly>
where
    F: Fn(&Poly) -> Vec<Poly>,
{
    let all: Vec<usize> = (0..ctx.dim()).collect();
    let mut basis: Vec<_> = ansatz::monomial_basis(ctx.dim(), &all, max_degree)
        .into_iter()
        .filter(|m| active.iter().any(|&j| m.exponents()[j] > 0))
        .collect();
    // ascending, so each kernel vector is led by its free (highest) monomial
    basis.reverse();
    let images: Vec<Vec<Poly>> = basis
        .iter()
        .map(|m| op(&Poly::monomial(ctx, m.clone(), num_traits::One::one())))
        .collect();
    let mut out: Vec<Poly> = ansatz::kernel(&images)
        .iter()
        .map(|c| ansatz::assemble(ctx, &basis, c))
        .collect();
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then(a.num_terms().cmp(&b.num_terms()))
            .then_with(|| b.leading_term().map(|t| t.0).cmp(&a.leading_term().map(|t| t.0)))
    });
    out
}

fn clear_denominators(v: &[RatFn]) -> Vec<Poly> {
    let mut den = Poly::one(v[0].ctx());
    for c in v {
        if !c.is_zero() {
            let g = crate::algebra::gcd(&den, c.denom());
            den = &den * &c.denom().div_exact(&g).expect("gcd divides");
        }
    }
    v.iter()
        .map(|c| (c.numer() * &den).div_exact(c.denom()).expect("common denominator"))
        .collect()
}

/// A polynomial automorphism sending `g` to a single coordinate direction:
/// bounded-degree first integrals of `g` in the `active` coordinates, plus a
/// potential `ψ` with `dψ ∧ ω = 0` placed at the last active index.
/// Inactive coordinates are carried along unchanged. The result carries its
/// inverse and has codomain `target`.
pub fn build_straightening_map(
    g: &VecField,
    omega: &KForm,
    active: &[usize],
    target: &VarContext,
    opts: &Options,
) -> Result<PolyMap, LinearizerError> {
    let ctx = g.ctx();
    let Some(&slot) = active.last() else {
        return Err(LinearizerError::Precondition("no active coordinates".into()));
    };
    if pair(omega, g)?.is_zero() {
        return Err(LinearizerError::Precondition("ω annihilates g".into()));
    }
    let gp = clear_denominators(g.components());
    let deriv = |p: &Poly| -> Poly {
        active
            .iter()
            .filter(|&&j| !gp[j].is_zero())
            .fold(Poly::zero(ctx), |acc, &j| &acc + &(&gp[j] * &p.partial(j)))
    };
    let points = random_points(ctx.dim(), 3, opts.seed);

    let closed = exterior_derivative(omega)?.is_zero();
    let psi = if closed && omega.is_polynomial() {
        integrate_exact(omega)?
    } else {
        let omega_p = KForm::one_form_from_polys(ctx, clear_denominators(&omega.components()?))?;
        let wedge_coeffs = |p: &Poly| -> Vec<Poly> {
            let w = wedge(&KForm::exact(p), &omega_p).expect("1-forms");
            (0..ctx.dim())
                .flat_map(|a| (a + 1..ctx.dim()).map(move |b| vec![a, b]))
                .map(|idx| w.coefficient(&idx).numer().clone())
                .collect()
        };
        ansatz_kernel(ctx, active, opts.max_ansatz_degree, wedge_coeffs)
            .into_iter()
            .find(|p| !deriv(p).is_zero())
            .ok_or_else(|| LinearizerError::HeuristicExhausted {
                iteration: 0,
                reason: format!("no potential of degree <= {} for {omega}", opts.max_ansatz_degree),
            })?
    };

    let needed = active.len() - 1;
    let mut chosen: Vec<Poly> = Vec::new();
    if needed > 0 {
        for gamma in ansatz_kernel(ctx, active, opts.max_ansatz_degree, |p| vec![deriv(p)]) {
            let mut trial = chosen.clone();
            trial.push(gamma.clone());
            trial.push(psi.clone());
            if active_jacobian_rank(&trial, active, &points) == trial.len() {
                chosen.push(gamma);
                if chosen.len() == needed {
                    break;
                }
            }
        }
        if chosen.len() < needed {
            return Err(LinearizerError::HeuristicExhausted {
                iteration: 0,
                reason: format!(
                    "found {} of {needed} independent first integrals of degree <= {} for g = {g}",
                    chosen.len(),
                    opts.max_ansatz_degree
                ),
            });
        }
    }

    let mut comps: Vec<Poly> = (0..ctx.dim()).map(|j| Poly::var(ctx, j)).collect();
    let mut it = chosen.into_iter();
    for &j in &active[..needed] {
        comps[j] = it.next().expect("counted");
    }
    comps[slot] = psi;
    let map = PolyMap::new(ctx, target, comps)?;
    Ok(map.ensure_inverse()?)
}

/// Places hint components at the active positions, identity elsewhere.
fn extend_hint(ctx: &VarContext, target: &VarContext, comps: &[Poly], active: &[usize], i: usize) -> Result<PolyMap, LinearizerError> {
    if comps.len() != active.len() {
        return Err(LinearizerError::Precondition(format!(
            "map hint {i} has {} components, expected {}",
            comps.len(),
            active.len()
        )));
    }
    let mut full: Vec<Poly> = (0..ctx.dim()).map(|j| Poly::var(ctx, j)).collect();
    for (&j, c) in active.iter().zip(comps) {
        full[j] = c.relabel(ctx)?;
    }
    Ok(PolyMap::new(ctx, target, full)?.ensure_inverse()?)
}

fn straightened_index(map: &PolyMap, g: &VecField) -> Result<usize, LinearizerError> {
    let pushed = pushforward(map, g)?;
    let nonzero: Vec<usize> = (0..pushed.dim()).filter(|&k| !pushed.component(k).is_zero()).collect();
    match nonzero[..] {
        [k] => Ok(k),
        _ => Err(LinearizerError::Precondition(format!(
            "map does not straighten g: pushed forward to {pushed}"
        ))),
    }
}

/// The first algorithm: straighten `g_i` with `Φ_i`, project `f_i` and
/// `[f_i, g_i]` along the straightened direction, repeat on the remaining
/// coordinates; then pick the component of `Φ_{n−2} ∘ … ∘ Φ_0` that has full
/// relative degree.
///
/// 1-form hints are used only where their coordinates match the iteration's.
pub fn algorithm_i(
    sys: &ControlSystem,
    map_hints: &MapHints,
    omega_hints: &OmegaHints,
    opts: &Options,
) -> Result<LinearizationTrace, LinearizerError> {
    let n = sys.dim();
    let steps = n.saturating_sub(1).max(1);
    let mut trace = LinearizationTrace::new(Method::AlgebroidI, sys);
    let mut active: Vec<usize> = (0..n).collect();
    let mut f = sys.f().clone();
    let mut g = sys.g().clone();
    let mut composed = PolyMap::identity(sys.ctx());
    for i in 0..steps {
        let ctx = iteration_context(sys.ctx(), i);
        let target = iteration_context(sys.ctx(), i + 1);
        let (map, k, omega, source) = match map_hints.at(i) {
            Some(comps) => {
                let map = extend_hint(&ctx, &target, comps, &active, i)?;
                let k = straightened_index(&map, &g)?;
                (map.clone(), k, KForm::exact(map.component(k)), OmegaSource::MapHint)
            }
            None => {
                let hints: Vec<KForm> = omega_hints.at(i).iter().filter(|w| w.ctx() == &ctx).cloned().collect();
                let last = i + 1 == steps;
                let choice = choose_omega(&g, &hints, i, last, &active, opts.max_ansatz_degree)?;
                trace.warnings.extend(choice.warnings);
                let map = build_straightening_map(&g, &choice.omega, &active, &target, opts).map_err(|e| match e {
                    LinearizerError::HeuristicExhausted { reason, .. } => {
                        LinearizerError::HeuristicExhausted { iteration: i, reason }
                    }
                    e => e,
                })?;
                let k = straightened_index(&map, &g)?;
                (map, k, choice.omega, choice.source)
            }
        };
        let alg = AlgebroidContext::new(g.clone(), omega.clone())?.with_straightening(map.clone())?;
        let next_f = alg.anchor_i(&f)?;
        let next_g = alg.anchor_i(&lie_bracket(&f, &g)?)?;
        trace.iterations.push(IterationRecord {
            index: i,
            f: f.clone(),
            g: g.clone(),
            omega,
            omega_source: source,
            map: Some(map.clone()),
            straightened: Some(k),
        });
        composed = compose(&map, &composed)?;
        active.retain(|&j| j != k);
        if i + 1 < steps && next_g.is_zero() {
            return Err(LinearizerError::DegenerateIteration { iteration: i + 1 });
        }
        f = next_f;
        g = next_g;
    }

    let mut candidates = active.clone();
    candidates.extend((0..n).filter(|j| !active.contains(j)));
    for c in candidates {
        let y = normalize_output(&composed.component(c).relabel(sys.ctx())?);
        if verify_relative_degree(&y.clone().into(), sys)? == n {
            trace.composed_map = Some(composed);
            trace.y = Some(y);
            return Ok(trace);
        }
    }
    Err(LinearizerError::AmbiguousOutput)
}
