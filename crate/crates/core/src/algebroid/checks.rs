use crate::algebra::RatFn;
use crate::geometry::{lie_bracket, VecField};

use super::{multiple_of, AlgebroidContext, AlgebroidError};

/// Outcome of a symbolic identity check; a failure carries the nonzero
/// difference between the two sides.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Holds,
    Fails { residual: VecField },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    fn exact(lhs: &VecField, rhs: &VecField) -> Result<Verdict, AlgebroidError> {
        let d = lhs.checked_sub(rhs)?;
        Ok(if d.is_zero() {
            Verdict::Holds
        } else {
            Verdict::Fails { residual: d }
        })
    }

    fn modulo(lhs: &VecField, rhs: &VecField, g: &VecField) -> Result<Verdict, AlgebroidError> {
        let d = lhs.checked_sub(rhs)?;
        Ok(if multiple_of(&d, g).is_some() {
            Verdict::Holds
        } else {
            Verdict::Fails { residual: d }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Anchor {
    /// Projection through the straightening map.
    I,
    /// `m − (ωm/ωg)g`.
    II,
}

/// `⟨a,b⟩ + ⟨b,a⟩ ≡ 0` modulo `g`.
pub fn check_antisymmetry(ctx: &AlgebroidContext, a: &VecField, b: &VecField) -> Result<Verdict, AlgebroidError> {
    let ab = ctx.bracket(a, b)?;
    let ba = ctx.bracket(b, a)?;
    Verdict::modulo(&ab, &-&ba, ctx.g())
}

/// `⟨m1 + αg, m2 + βg⟩ ≡ ⟨m1, m2⟩` modulo `g`.
pub fn check_representative_independence(
    ctx: &AlgebroidContext,
    m1: &VecField,
    m2: &VecField,
    alpha: &RatFn,
    beta: &RatFn,
) -> Result<Verdict, AlgebroidError> {
    let s1 = m1.checked_add(&ctx.g().scale(alpha)?)?;
    let s2 = m2.checked_add(&ctx.g().scale(beta)?)?;
    Verdict::modulo(&ctx.bracket(&s1, &s2)?, &ctx.bracket(m1, m2)?, ctx.g())
}

/// `an(m)(α)` as a function of the original coordinates.
fn anchored_derivative(
    ctx: &AlgebroidContext,
    anchor: Anchor,
    m: &VecField,
    alpha: &RatFn,
) -> Result<RatFn, AlgebroidError> {
    match anchor {
        Anchor::II => Ok(ctx.anchor_ii(m)?.apply(alpha)?),
        Anchor::I => {
            let s = ctx.straightening().ok_or(AlgebroidError::MissingStraightening)?;
            let inv = s.map().inverse().expect("straightening maps carry an inverse");
            let moved = alpha.substitute(inv.components())?;
            let d = ctx.anchor_i(m)?.apply(&moved)?;
            Ok(s.map().pull_ratfn(&d)?)
        }
    }
}

/// Leibniz rule `⟨m1, αm2⟩ ≡ α⟨m1,m2⟩ + (an(m1)α)·m2` modulo `g`.
///
/// For the first anchor `α` must be constant along `g`, otherwise a
/// precondition error is returned.
pub fn check_leibniz(
    ctx: &AlgebroidContext,
    anchor: Anchor,
    m1: &VecField,
    m2: &VecField,
    alpha: &RatFn,
) -> Result<Verdict, AlgebroidError> {
    if anchor == Anchor::I {
        if ctx.straightening().is_none() {
            return Err(AlgebroidError::MissingStraightening);
        }
        if !ctx.derivative_along_g(alpha)?.is_zero() {
            return Err(AlgebroidError::Precondition(format!(
                "L_g α must vanish for the first anchor, α = {alpha}"
            )));
        }
    }
    let lhs = ctx.bracket(m1, &m2.scale(alpha)?)?;
    let d = anchored_derivative(ctx, anchor, m1, alpha)?;
    let rhs = ctx.bracket(m1, m2)?.scale(alpha)?.checked_add(&m2.scale(&d)?)?;
    Verdict::modulo(&lhs, &rhs, ctx.g())
}

/// `an(⟨m1,m2⟩) = [an(m1), an(m2)]` exactly.
pub fn check_homomorphism(
    ctx: &AlgebroidContext,
    anchor: Anchor,
    m1: &VecField,
    m2: &VecField,
) -> Result<Verdict, AlgebroidError> {
    let an = |m: &VecField| match anchor {
        Anchor::I => ctx.anchor_i(m),
        Anchor::II => ctx.anchor_ii(m),
    };
    let lhs = an(&ctx.bracket(m1, m2)?)?;
    let rhs = lie_bracket(&an(m1)?, &an(m2)?)?;
    Verdict::exact(&lhs, &rhs)
}

/// Cyclic sum `⟨m1,⟨m2,m3⟩⟩ + ⟨m2,⟨m3,m1⟩⟩ + ⟨m3,⟨m1,m2⟩⟩ ≡ 0` modulo `g`.
pub fn check_jacobi(
    ctx: &AlgebroidContext,
    m1: &VecField,
    m2: &VecField,
    m3: &VecField,
) -> Result<Verdict, AlgebroidError> {
    let a = ctx.bracket(m1, &ctx.bracket(m2, m3)?)?;
    let b = ctx.bracket(m2, &ctx.bracket(m3, m1)?)?;
    let c = ctx.bracket(m3, &ctx.bracket(m1, m2)?)?;
    let sum = a.checked_add(&b)?.checked_add(&c)?;
    Verdict::modulo(&sum, &VecField::zero(ctx.ctx()), ctx.g())
}

/// The first anchor is a bracket homomorphism, and it agrees with pushing the
/// second anchor through the straightening map.
pub fn crosscheck_isomorphism(
    ctx: &AlgebroidContext,
    m1: &VecField,
    m2: &VecField,
) -> Result<Verdict, AlgebroidError> {
    let s = ctx.straightening().ok_or(AlgebroidError::MissingStraightening)?;
    let hom = check_homomorphism(ctx, Anchor::I, m1, m2)?;
    if !hom.holds() {
        return Ok(hom);
    }
    let b = ctx.bracket(m1, m2)?;
    let via_ii = crate::geometry::pushforward(s.map(), &ctx.anchor_ii(&b)?)?;
    let via_ii = via_ii.with_component(s.index(), RatFn::zero(via_ii.ctx()));
    Verdict::exact(&ctx.anchor_i(&b)?, &via_ii)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, parse_ratfn, VarContext};
    use crate::geometry::{KForm, PolyMap};

    fn ctx() -> VarContext {
        VarContext::numbered("x", 3).unwrap()
    }

    fn field(comps: &[&str]) -> VecField {
        VecField::from_polys(&ctx(), comps.iter().map(|s| parse_poly(s, &ctx()).unwrap()).collect()).unwrap()
    }

    fn straight() -> AlgebroidContext {
        AlgebroidContext::new(VecField::coordinate(&ctx(), 2), KForm::coordinate(&ctx(), 2))
            .unwrap()
            .with_straightening(PolyMap::identity(&ctx()))
            .unwrap()
    }

    #[test]
    fn trivial_cases() {
        let a = straight();
        let m = field(&["x1*x3", "x2^2", "x1 + x3"]);
        let n = field(&["1", "x3", "x2"]);
        let one = RatFn::one(&ctx());
        assert!(check_leibniz(&a, Anchor::II, &m, &n, &one).unwrap().holds());
        assert!(check_homomorphism(&a, Anchor::II, &m, &m).unwrap().holds());
        assert!(check_jacobi(&a, &m, &m, &n).unwrap().holds());
        assert!(crosscheck_isomorphism(&a, a.g(), &m).unwrap().holds());
    }

    #[test]
    fn leibniz_guard_for_first_anchor() {
        let a = straight();
        let m = field(&["x1", "x2", "0"]);
        let alpha = parse_ratfn("x3", &ctx()).unwrap();
        assert!(matches!(
            check_leibniz(&a, Anchor::I, &m, &m, &alpha),
            Err(AlgebroidError::Precondition(_))
        ));
        let ok = parse_ratfn("x1*x2 + 1", &ctx()).unwrap();
        assert!(check_leibniz(&a, Anchor::I, &m, &field(&["x3", "1", "x1"]), &ok).unwrap().holds());
    }

    #[test]
    fn failures_carry_a_residual() {
        let a = straight();
        let m = field(&["x2", "0", "0"]);
        let n = field(&["0", "1", "0"]);
        let Verdict::Fails { residual } = Verdict::modulo(&m, &n, a.g()).unwrap() else {
            panic!("expected failure");
        };
        assert_eq!(residual, field(&["x2", "-1", "0"]));
    }
}
