//! Linearizing outputs of single-input affine systems `ẋ = f(x) + g(x)u`.

mod algorithm_i;
mod algorithm_ii;
mod ansatz;
mod classical;
mod omega;

pub use algorithm_i::{algorithm_i, build_straightening_map, iteration_context, MapHints};
pub use algorithm_ii::{algorithm_ii, algorithm_ii_phase1, algorithm_ii_phase2};
pub use classical::{classical_check, random_points, Diagnostics, Involutivity};
pub use omega::{choose_omega, OmegaChoice, OmegaSource};

use std::fmt;

use crate::algebra::{Poly, RatFn, Rational, VarContext};
use crate::algebroid::AlgebroidError;
use crate::geometry::{jacobian_determinant, GeometryError, KForm, PolyMap, VecField};

/// Seed used when `ALGEBROID_SEED` is unset or unparsable.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Reads `ALGEBROID_SEED`, falling back to [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var("ALGEBROID_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LinearizerError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Algebroid(#[from] AlgebroidError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no admissible choice at iteration {iteration}: {reason}")]
    HeuristicExhausted { iteration: usize, reason: String },
    #[error("iteration {iteration} produced a zero transversal field")]
    DegenerateIteration { iteration: usize },
    #[error("scaled form is not closed: d = {residual}")]
    NotExact { residual: Box<KForm> },
    #[error("integrand has non-polynomial coefficients: {0}")]
    NonPolynomialIntegrand(Box<KForm>),
    #[error("no composed coordinate has full relative degree")]
    AmbiguousOutput,
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
}

impl From<crate::algebra::AlgebraError> for LinearizerError {
    fn from(e: crate::algebra::AlgebraError) -> Self {
        LinearizerError::Geometry(e.into())
    }
}

/// `ẋ = f(x) + g(x)u`.
#[derive(Clone, Debug, PartialEq)]
pub struct ControlSystem {
    f: VecField,
    g: VecField,
}

impl ControlSystem {
    pub fn new(f: VecField, g: VecField) -> Result<Self, LinearizerError> {
        f.ctx().ensure_same(g.ctx())?;
        if g.is_zero() {
            return Err(LinearizerError::Precondition("g is identically zero".into()));
        }
        Ok(ControlSystem { f, g })
    }

    pub fn ctx(&self) -> &VarContext {
        self.f.ctx()
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    pub fn f(&self) -> &VecField {
        &self.f
    }

    pub fn g(&self) -> &VecField {
        &self.g
    }
}

/// Candidate 1-forms per iteration, tried in order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OmegaHints {
    per_iteration: Vec<Vec<KForm>>,
}

impl OmegaHints {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn push(&mut self, iteration: usize, omega: KForm) {
        if self.per_iteration.len() <= iteration {
            self.per_iteration.resize(iteration + 1, Vec::new());
        }
        self.per_iteration[iteration].push(omega);
    }

    pub fn at(&self, iteration: usize) -> &[KForm] {
        self.per_iteration.get(iteration).map_or(&[], Vec::as_slice)
    }

    pub fn is_empty(&self) -> bool {
        self.per_iteration.iter().all(Vec::is_empty)
    }
}

impl FromIterator<KForm> for OmegaHints {
    /// One hint per iteration, in order.
    fn from_iter<T: IntoIterator<Item = KForm>>(iter: T) -> Self {
        OmegaHints {
            per_iteration: iter.into_iter().map(|w| vec![w]).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Degree bound for the exact-form and first-integral ansätze.
    pub max_ansatz_degree: u32,
    /// Seed for the random evaluation points.
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_ansatz_degree: 4,
            seed: DEFAULT_SEED,
        }
    }
}

/// A note attached to a result, with the symbolic locus that triggered it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Warning {
    pub message: String,
    pub locus: String,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [locus: {}]", self.message, self.locus)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    AlgebroidI,
    AlgebroidII,
}

/// One Phase-1 step.
#[derive(Clone, Debug)]
pub struct IterationRecord {
    pub index: usize,
    pub f: VecField,
    pub g: VecField,
    /// The 1-form used at this step.
    pub omega: KForm,
    pub omega_source: OmegaSource,
    /// Straightening map (first algorithm only).
    pub map: Option<PolyMap>,
    /// Coordinate the map straightens `g` onto (first algorithm only).
    pub straightened: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct LinearizationTrace {
    pub method: Method,
    pub system: ControlSystem,
    pub iterations: Vec<IterationRecord>,
    /// `ν₀, …, ν_{n−1}` (second algorithm, after Phase 2).
    pub nu: Vec<KForm>,
    /// `ω_{n−1}·g_{n−1}` (second algorithm, after Phase 2).
    pub integrating_factor: Option<RatFn>,
    /// Composed forward map (first algorithm).
    pub composed_map: Option<PolyMap>,
    pub y: Option<Poly>,
    pub warnings: Vec<Warning>,
}

impl LinearizationTrace {
    fn new(method: Method, system: &ControlSystem) -> Self {
        LinearizationTrace {
            method,
            system: system.clone(),
            iterations: Vec::new(),
            nu: Vec::new(),
            integrating_factor: None,
            composed_map: None,
            y: None,
            warnings: Vec::new(),
        }
    }
}

/// Canonical representative of `{a·y + b}`: zero constant term, and within
/// the lowest-degree homogeneous part the graded-lex greatest monomial has
/// coefficient 1.
pub fn normalize_output(y: &Poly) -> Poly {
    let shifted = y - &Poly::constant(y.ctx(), y.constant_term());
    let Some(low) = shifted.terms().map(|(m, _)| m.degree()).min() else {
        return shifted;
    };
    let lead = shifted
        .terms()
        .filter(|(m, _)| m.degree() == low)
        .max_by(|a, b| a.0.cmp(b.0))
        .map(|(_, c)| c.clone())
        .expect("nonempty");
    shifted.scale(&lead.recip())
}

/// `L_v a`.
pub fn lie_derivative(v: &VecField, a: &RatFn) -> Result<RatFn, LinearizerError> {
    Ok(v.apply(a)?)
}

/// Smallest `k` with `L_g L_f^{k−1} y ≢ 0`, or 0 when no `k ≤ n` qualifies.
pub fn verify_relative_degree(y: &RatFn, sys: &ControlSystem) -> Result<usize, LinearizerError> {
    sys.ctx().ensure_same(y.ctx())?;
    if y.is_constant() {
        return Err(LinearizerError::Precondition("output is constant".into()));
    }
    let mut h = y.clone();
    for k in 1..=sys.dim() {
        if !sys.g().apply(&h)?.is_zero() {
            return Ok(k);
        }
        h = sys.f().apply(&h)?;
    }
    Ok(0)
}

/// `(y, L_f y, …, L_f^{n−1} y)`.
pub fn output_chain(y: &RatFn, sys: &ControlSystem) -> Result<Vec<RatFn>, LinearizerError> {
    let mut out = vec![y.clone()];
    for _ in 1..sys.dim() {
        let next = sys.f().apply(out.last().expect("nonempty"))?;
        out.push(next);
    }
    Ok(out)
}

/// Jacobian determinant of `x ↦ (y, L_f y, …)` when that map is polynomial.
pub fn output_map_determinant(y: &Poly, sys: &ControlSystem) -> Result<Option<Poly>, LinearizerError> {
    let chain = output_chain(&y.clone().into(), sys)?;
    let Some(polys) = chain.iter().map(|c| c.as_poly().cloned()).collect::<Option<Vec<_>>>() else {
        return Ok(None);
    };
    let map = PolyMap::new(sys.ctx(), sys.ctx(), polys)?;
    Ok(Some(jacobian_determinant(&map)))
}

/// `(Φ⁻¹)_*(z₂∂z₁ + … + z_n∂z_{n−1})`: the drift that `Φ` turns into a chain
/// of integrators.
pub fn chain_drift(map: &PolyMap) -> Result<VecField, LinearizerError> {
    let map = map.ensure_inverse()?;
    let z = map.codomain();
    let n = z.dim();
    let comps = (0..n)
        .map(|i| if i + 1 < n { Poly::var(z, i + 1) } else { Poly::zero(z) })
        .collect();
    let chain = VecField::from_polys(z, comps)?;
    Ok(crate::geometry::pushforward(map.inverse().expect("ensured"), &chain)?)
}

pub(crate) fn is_nonzero_constant(a: &RatFn) -> Option<Rational> {
    a.constant_value().filter(|c| !num_traits::Zero::is_zero(c))
}
