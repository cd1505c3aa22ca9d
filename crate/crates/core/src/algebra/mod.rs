//! Exact arithmetic kernel.

pub mod det;
pub mod eisenstein;
pub mod laurent;
pub mod rational;
pub mod unipoly;

pub use det::{det_exact, ExactRing};
pub use eisenstein::Eisenstein;
pub use laurent::MultiLaurent;
pub use rational::Rational;
pub use unipoly::{interpolate, parse_factored, pochhammer, UniPoly};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("interpolation failed: {0}")]
    Interpolation(String),
    #[error("operation requires nonnegative exponents")]
    NotPolynomial,
    #[error("matrix is not square")]
    NonSquare,
    #[error("fraction-free elimination hit an inexact division")]
    InexactDivision,
    #[error("parse error: {0}")]
    Parse(String),
}
