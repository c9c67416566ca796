//! The bracket on sections of `Tℝⁿ / span g`, its two anchors and executable
//! versions of the algebroid axioms.

mod checks;

pub use checks::{
    check_antisymmetry, check_homomorphism, check_jacobi, check_leibniz,
    check_representative_independence, crosscheck_isomorphism, Anchor, Verdict,
};

use crate::algebra::{RatFn, VarContext};
use crate::geometry::{
    exterior_derivative, is_integrable, lie_bracket, pair, pushforward, wedge, GeometryError, KForm, PolyMap,
    VecField,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebroidError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("1-form is not integrable")]
    NotIntegrable,
    #[error("pairing of the 1-form with g vanishes identically")]
    ZeroPairing,
    #[error("no straightening map attached")]
    MissingStraightening,
    #[error("invalid straightening map: {0}")]
    InvalidStraightening(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl From<crate::algebra::AlgebraError> for AlgebroidError {
    fn from(e: crate::algebra::AlgebraError) -> Self {
        AlgebroidError::Geometry(e.into())
    }
}

/// A polynomial coordinate change sending `g` to a multiple of `∂/∂z_k`
/// whose `k`-th component is a first integral of `ω`'s foliation.
#[derive(Clone, Debug, PartialEq)]
pub struct Straightening {
    map: PolyMap,
    index: usize,
}

impl Straightening {
    pub fn map(&self) -> &PolyMap {
        &self.map
    }

    /// The coordinate `g` is straightened onto.
    pub fn index(&self) -> usize {
        self.index
    }
}

/// Transversal field `g`, integrable 1-form `ω` with `ωg ≢ 0`, and optionally
/// a straightening map for the first anchor.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebroidContext {
    g: VecField,
    omega: KForm,
    omega_g: RatFn,
    straightening: Option<Straightening>,
}

impl AlgebroidContext {
    pub fn new(g: VecField, omega: KForm) -> Result<Self, AlgebroidError> {
        let omega_g = pair(&omega, &g)?;
        if omega_g.is_zero() {
            return Err(AlgebroidError::ZeroPairing);
        }
        if !is_integrable(&omega) {
            return Err(AlgebroidError::NotIntegrable);
        }
        Ok(AlgebroidContext {
            g,
            omega,
            omega_g,
            straightening: None,
        })
    }

    /// Attaches `map` (inverting it if needed) after checking that it sends
    /// `g` to a single coordinate direction `k` and that `dΦ_k ∧ ω = 0`.
    pub fn with_straightening(mut self, map: PolyMap) -> Result<Self, AlgebroidError> {
        self.g.ctx().ensure_same(map.domain())?;
        let map = map.ensure_inverse()?;
        let pushed = pushforward(&map, &self.g)?;
        let nonzero: Vec<usize> = (0..pushed.dim()).filter(|&i| !pushed.component(i).is_zero()).collect();
        let [k] = nonzero[..] else {
            return Err(AlgebroidError::InvalidStraightening(format!(
                "g is sent to {pushed}, not a single coordinate direction"
            )));
        };
        let dpsi = KForm::exact(map.component(k));
        if !wedge(&dpsi, &self.omega)?.is_zero() {
            return Err(AlgebroidError::InvalidStraightening(format!(
                "component {} is not a first integral of the 1-form",
                k + 1
            )));
        }
        self.straightening = Some(Straightening { map, index: k });
        Ok(self)
    }

    pub fn ctx(&self) -> &VarContext {
        self.g.ctx()
    }

    pub fn g(&self) -> &VecField {
        &self.g
    }

    pub fn omega(&self) -> &KForm {
        &self.omega
    }

    /// `⟨ω, g⟩`.
    pub fn omega_g(&self) -> &RatFn {
        &self.omega_g
    }

    pub fn straightening(&self) -> Option<&Straightening> {
        self.straightening.as_ref()
    }

    fn ratio(&self, m: &VecField) -> Result<RatFn, AlgebroidError> {
        Ok(&pair(&self.omega, m)? / &self.omega_g)
    }

    /// Representative `[m1,m2] + (ωm2/ωg)[g,m1] − (ωm1/ωg)[g,m2]` of the bracket class.
    pub fn bracket(&self, m1: &VecField, m2: &VecField) -> Result<VecField, AlgebroidError> {
        let mut out = lie_bracket(m1, m2)?;
        let c2 = self.ratio(m2)?;
        if !c2.is_zero() {
            out = out.checked_add(&lie_bracket(&self.g, m1)?.scale(&c2)?)?;
        }
        let c1 = self.ratio(m1)?;
        if !c1.is_zero() {
            out = out.checked_sub(&lie_bracket(&self.g, m2)?.scale(&c1)?)?;
        }
        Ok(out)
    }

    pub fn bracket_class(&self, m1: &SectionClass, m2: &SectionClass) -> Result<SectionClass, AlgebroidError> {
        Ok(SectionClass::new(self.bracket(&m1.rep, &m2.rep)?))
    }

    /// `m − (ωm/ωg)·g`, the representative annihilated by `ω`.
    pub fn anchor_ii(&self, m: &VecField) -> Result<VecField, AlgebroidError> {
        let c = self.ratio(m)?;
        if c.is_zero() {
            return Ok(m.clone());
        }
        Ok(m.checked_sub(&self.g.scale(&c)?)?)
    }

    /// `Φ_* m` with the straightened component set to zero, in the target
    /// coordinates; the dropped coordinate stays available as a parameter.
    pub fn anchor_i(&self, m: &VecField) -> Result<VecField, AlgebroidError> {
        let s = self.straightening.as_ref().ok_or(AlgebroidError::MissingStraightening)?;
        let pushed = pushforward(&s.map, m)?;
        Ok(pushed.with_component(s.index, RatFn::zero(pushed.ctx())))
    }

    /// The remaining `n − 1` components of an `anchor_i` result.
    pub fn project(&self, v: &VecField) -> Result<Vec<RatFn>, AlgebroidError> {
        let s = self.straightening.as_ref().ok_or(AlgebroidError::MissingStraightening)?;
        Ok(v.components()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != s.index)
            .map(|(_, c)| c.clone())
            .collect())
    }

    /// Whether `m` and `m2` differ by a function multiple of `g`.
    pub fn equivalent(&self, m1: &VecField, m2: &VecField) -> Result<bool, AlgebroidError> {
        Ok(multiple_of(&m1.checked_sub(m2)?, &self.g).is_some())
    }

    /// `L_g a`.
    pub fn derivative_along_g(&self, a: &RatFn) -> Result<RatFn, AlgebroidError> {
        Ok(self.g.apply(a)?)
    }

    /// Whether `d(ωg)` vanishes, i.e. the pairing is a constant.
    pub fn has_constant_pairing(&self) -> bool {
        self.omega_g.is_constant()
    }

    pub fn omega_is_closed(&self) -> bool {
        exterior_derivative(&self.omega).is_ok_and(|d| d.is_zero())
    }
}

/// `α` with `v = α·g`, if one exists.
pub fn multiple_of(v: &VecField, g: &VecField) -> Option<RatFn> {
    if v.is_zero() {
        return Some(RatFn::zero(v.ctx()));
    }
    let i = (0..g.dim()).find(|&i| !g.component(i).is_zero())?;
    let alpha = v.component(i) / g.component(i);
    let scaled = g.scale(&alpha).ok()?;
    (scaled == *v).then_some(alpha)
}

/// A vector field read modulo `span g`.
#[derive(Clone, Debug)]
pub struct SectionClass {
    rep: VecField,
}

impl SectionClass {
    pub fn new(rep: VecField) -> Self {
        SectionClass { rep }
    }

    pub fn representative(&self) -> &VecField {
        &self.rep
    }

    /// Equality of classes modulo `span g`.
    pub fn equivalent(&self, other: &SectionClass, g: &VecField) -> bool {
        self.rep
            .checked_sub(&other.rep)
            .ok()
            .is_some_and(|d| multiple_of(&d, g).is_some())
    }
}

impl From<VecField> for SectionClass {
    fn from(v: VecField) -> Self {
        SectionClass::new(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn ctx() -> VarContext {
        VarContext::numbered("x", 3).unwrap()
    }

    fn field(comps: &[&str]) -> VecField {
        VecField::from_polys(&ctx(), comps.iter().map(|s| parse_poly(s, &ctx()).unwrap()).collect()).unwrap()
    }

    fn worked_ctx() -> AlgebroidContext {
        let g0 = field(&["0", "-2*x3", "1"]);
        let omega0 = KForm::exact(&parse_poly("x3^4 + 2*x2*x3^2 + x3 + x2^2", &ctx()).unwrap());
        AlgebroidContext::new(g0, omega0).unwrap()
    }

    #[test]
    fn bracket_with_g_vanishes() {
        let a = worked_ctx();
        let m = field(&["x1*x2", "x3", "x1^2 + 1"]);
        let b = a.bracket(a.g(), &m).unwrap();
        assert!(b.is_zero() || a.equivalent(&b, &VecField::zero(&ctx())).unwrap());
    }

    #[test]
    fn anchor_ii_kills_g_and_is_idempotent() {
        let a = worked_ctx();
        assert!(a.anchor_ii(a.g()).unwrap().is_zero());
        let m = field(&["x1*x2", "x3", "x1^2 + 1"]);
        let once = a.anchor_ii(&m).unwrap();
        assert_eq!(a.anchor_ii(&once).unwrap(), once);
        assert!(pair(a.omega(), &once).unwrap().is_zero());
    }

    #[test]
    fn rejects_degenerate_contexts() {
        let g = field(&["1", "0", "0"]);
        assert!(matches!(
            AlgebroidContext::new(g.clone(), KForm::coordinate(&ctx(), 1)),
            Err(AlgebroidError::ZeroPairing)
        ));
        let w = KForm::one_form_from_polys(&ctx(), vec![parse_poly("1", &ctx()).unwrap(), parse_poly("0", &ctx()).unwrap(), parse_poly("x1", &ctx()).unwrap()]).unwrap();
        let bad = KForm::one_form_from_polys(&ctx(), vec![parse_poly("x2", &ctx()).unwrap(), parse_poly("0", &ctx()).unwrap(), parse_poly("1", &ctx()).unwrap()]).unwrap();
        assert!(AlgebroidContext::new(g.clone(), w).is_ok());
        assert!(matches!(AlgebroidContext::new(g, bad), Err(AlgebroidError::NotIntegrable)));
    }

    #[test]
    fn anchor_i_needs_a_map() {
        let a = worked_ctx();
        assert!(matches!(a.anchor_i(a.g()), Err(AlgebroidError::MissingStraightening)));
        let zs = VarContext::numbered("z", 3).unwrap();
        let phi0 = PolyMap::parse(&ctx(), &zs, &["x1", "x3^2 + x2", "x3^4 + 2*x2*x3^2 + x3 + x2^2"]).unwrap();
        let a = a.with_straightening(phi0).unwrap();
        assert_eq!(a.straightening().unwrap().index(), 2);
        assert!(a.anchor_i(a.g()).unwrap().is_zero());
    }

    #[test]
    fn straightening_must_match_the_form() {
        let a = worked_ctx();
        let id = PolyMap::identity(&ctx());
        assert!(matches!(
            a.with_straightening(id),
            Err(AlgebroidError::InvalidStraightening(_))
        ));
    }

    #[test]
    fn classes_modulo_g() {
        let g = field(&["0", "-2*x3", "1"]);
        let m = SectionClass::new(field(&["x1", "x2", "x3"]));
        let shifted = SectionClass::new(field(&["x1", "x2 - 2*x1*x3^2", "x3 + x1*x3"]));
        assert!(m.equivalent(&shifted, &g));
        let other = SectionClass::new(field(&["x1 + 1", "x2", "x3"]));
        assert!(!m.equivalent(&other, &g));
    }
}
