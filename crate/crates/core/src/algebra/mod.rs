//! Exact sparse multivariate polynomials and rational functions over ℚ.

mod context;
mod gcd;
pub mod linalg;
mod monomial;
mod parse;
mod poly;
mod ratfn;

pub use context::VarContext;
pub use gcd::{content, gcd};
pub use monomial::Monomial;
pub use parse::{parse_poly, parse_ratfn, parse_rational};
pub use poly::Poly;
pub use ratfn::RatFn;


/// Arbitrary-precision rational coefficient.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n/d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("variable context is empty")]
    EmptyContext,
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("context mismatch: [{left}] vs [{right}]")]
    ContextMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
