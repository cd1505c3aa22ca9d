//! Crate-wide error wrapping each module's error type.

use crate::algebra::AlgebraError;
use crate::conjectures::ConjectureError;
use crate::identities::IdentityError;
use crate::limits::LimitError;
use crate::paths::PathError;
use crate::tableaux::TableauxError;
use crate::trapezoid::TrapezoidError;
use crate::weights::WeightError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Trapezoid(#[from] TrapezoidError),
    #[error(transparent)]
    Tableaux(#[from] TableauxError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error(transparent)]
    Conjecture(#[from] ConjectureError),
    #[error(transparent)]
    Limit(#[from] LimitError),
}

impl Error {
    /// The resource guard that stopped the computation, if any.
    pub fn limit(&self) -> Option<&LimitError> {
        fn weight(e: &WeightError) -> Option<&LimitError> {
            match e {
                WeightError::Limit(l) => Some(l),
                WeightError::Trapezoid(TrapezoidError::Limit(l)) => Some(l),
                _ => None,
            }
        }
        match self {
            Error::Limit(l) | Error::Trapezoid(TrapezoidError::Limit(l)) => Some(l),
            Error::Weight(w) | Error::Identity(IdentityError::Weight(w)) | Error::Conjecture(ConjectureError::Weight(w)) => {
                weight(w)
            }
            Error::Identity(IdentityError::Limit(l) | IdentityError::Trapezoid(TrapezoidError::Limit(l)))
            | Error::Conjecture(ConjectureError::Limit(l)) => Some(l),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
