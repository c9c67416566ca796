use crate::algebroid::AlgebroidContext;
use crate::geometry::{exterior_derivative, integrate_exact, lie_bracket, pair};

use super::omega::choose_omega;
use super::{
    normalize_output, ControlSystem, IterationRecord, LinearizationTrace, LinearizerError, Method, OmegaHints,
    Options,
};

/// Phase 1: `f_{i+1} = an(f_i)`, `g_{i+1} = an([f_i, g_i])` with the anchor
/// `m ↦ m − (ω_i m / ω_i g_i) g_i`, for `i = 0 … n−2`, recording every `ω_i`.
pub fn algorithm_ii_phase1(
    sys: &ControlSystem,
    hints: &OmegaHints,
    opts: &Options,
) -> Result<LinearizationTrace, LinearizerError> {
    let n = sys.dim();
    let active: Vec<usize> = (0..n).collect();
    let mut trace = LinearizationTrace::new(Method::AlgebroidII, sys);
    let mut f = sys.f().clone();
    let mut g = sys.g().clone();
    for i in 0..n {
        let last = i + 1 == n;
        let choice = choose_omega(&g, hints.at(i), i, last, &active, opts.max_ansatz_degree)?;
        trace.warnings.extend(choice.warnings);
        trace.iterations.push(IterationRecord {
            index: i,
            f: f.clone(),
            g: g.clone(),
            omega: choice.omega.clone(),
            omega_source: choice.source,
            map: None,
            straightened: None,
        });
        if last {
            break;
        }
        let alg = AlgebroidContext::new(g.clone(), choice.omega)?;
        let next_f = alg.anchor_ii(&f)?;
        let next_g = alg.anchor_ii(&lie_bracket(&f, &g)?)?;
        if next_g.is_zero() {
            return Err(LinearizerError::DegenerateIteration { iteration: i + 1 });
        }
        for rec in &trace.iterations {
            if !pair(&rec.omega, &next_f)?.is_zero() || !pair(&rec.omega, &next_g)?.is_zero() {
                return Err(LinearizerError::InvariantViolated(format!(
                    "ω_{} does not annihilate f_{}, g_{}",
                    rec.index,
                    i + 1,
                    i + 1
                )));
            }
        }
        f = next_f;
        g = next_g;
    }
    Ok(trace)
}

/// Phase 2: `ν_{n−1} = ω_{n−1}`, `ν_k = ν_{k+1} − (ν_{k+1} g_k / ω_k g_k) ω_k`,
/// then `y = ∫ ν_0 / (ω_{n−1} g_{n−1})`.
pub fn algorithm_ii_phase2(mut trace: LinearizationTrace) -> Result<LinearizationTrace, LinearizerError> {
    let Some(last) = trace.iterations.last() else {
        return Err(LinearizerError::Precondition("empty trace".into()));
    };
    if trace.method != Method::AlgebroidII {
        return Err(LinearizerError::Precondition("trace was not produced by the second algorithm".into()));
    }
    let factor = pair(&last.omega, &last.g)?;
    let mut nu = vec![last.omega.clone()];
    for rec in trace.iterations.iter().rev().skip(1) {
        let prev = nu.last().expect("nonempty");
        let c = &pair(prev, &rec.g)? / &pair(&rec.omega, &rec.g)?;
        let next = if c.is_zero() {
            prev.clone()
        } else {
            prev.checked_sub(&rec.omega.scale(&c)?)?
        };
        nu.push(next);
    }
    nu.reverse();
    let eta = nu[0].scale(&factor.recip()?)?;
    let residual = exterior_derivative(&eta)?;
    if !residual.is_zero() {
        return Err(LinearizerError::NotExact {
            residual: Box::new(residual),
        });
    }
    if !eta.is_polynomial() {
        return Err(LinearizerError::NonPolynomialIntegrand(Box::new(eta)));
    }
    let y = integrate_exact(&eta)?;
    trace.nu = nu;
    trace.integrating_factor = Some(factor);
    trace.y = Some(normalize_output(&y));
    Ok(trace)
}

/// Both phases of the second algorithm.
pub fn algorithm_ii(
    sys: &ControlSystem,
    hints: &OmegaHints,
    opts: &Options,
) -> Result<LinearizationTrace, LinearizerError> {
    algorithm_ii_phase2(algorithm_ii_phase1(sys, hints, opts)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, Poly, VarContext};
    use crate::geometry::{KForm, VecField};

    fn sys(ctx: &VarContext, f: &[&str], g: &[&str]) -> ControlSystem {
        let v = |c: &[&str]| VecField::from_polys(ctx, c.iter().map(|s| parse_poly(s, ctx).unwrap()).collect()).unwrap();
        ControlSystem::new(v(f), v(g)).unwrap()
    }

    #[test]
    fn double_integrator() {
        let ctx = VarContext::numbered("x", 2).unwrap();
        let s = sys(&ctx, &["x2", "0"], &["0", "1"]);
        let t = algorithm_ii(&s, &OmegaHints::none(), &Options::default()).unwrap();
        assert_eq!(t.iterations.len(), 2);
        assert_eq!(t.iterations[1].g, VecField::from_polys(&ctx, vec![Poly::integer(&ctx, -1), Poly::zero(&ctx)]).unwrap());
        assert_eq!(t.y, Some(Poly::var(&ctx, 0)));
    }

    #[test]
    fn scalar_system() {
        let ctx = VarContext::numbered("x", 1).unwrap();
        let s = sys(&ctx, &["x1^2"], &["2"]);
        let t = algorithm_ii(&s, &OmegaHints::none(), &Options::default()).unwrap();
        assert_eq!(t.iterations.len(), 1);
        assert_eq!(t.nu, vec![KForm::coordinate(&ctx, 0)]);
        assert_eq!(t.y, Some(Poly::var(&ctx, 0)));
    }

    #[test]
    fn non_involutive_system_is_not_exact() {
        let ctx = VarContext::numbered("x", 3).unwrap();
        let s = sys(&ctx, &["x2 + x3^2", "x3", "0"], &["0", "0", "1"]);
        let err = algorithm_ii(&s, &OmegaHints::none(), &Options::default()).unwrap_err();
        assert!(matches!(err, LinearizerError::NotExact { .. }), "{err}");
    }
}
