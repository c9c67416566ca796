//! Vector fields, differential forms up to degree 3 and polynomial coordinate maps.

mod field;
mod form;
mod map;

pub use field::{lie_bracket, VecField};
pub use form::{
    exterior_derivative, integrate_exact, is_closed, is_integrable, pair, wedge, wedge_21, KForm,
    MAX_DEGREE,
};
pub use map::{compose, invert_triangular, jacobian_determinant, pullback, pushforward, PolyMap};

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("expected a form of degree {expected}, got degree {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("forms of degree {0} are not supported")]
    DegreeOverflow(usize),
    #[error("form is not closed: d = {0}")]
    NotClosed(Box<KForm>),
    #[error("form has non-polynomial coefficients")]
    NonPolynomial,
    #[error("map has no inverse attached")]
    MissingInverse,
    #[error("inversion failed: {0}")]
    InversionFailed(String),
}
