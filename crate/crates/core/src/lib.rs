//! Alternating sign trapezoids refined by centred Catalan sets and Motzkin
//! paths: enumeration, weight polynomials, closed forms and conjecture
//! sweeps.

pub mod algebra;
pub mod conjectures;
pub mod error;
pub mod identities;
pub mod limits;
pub mod paths;
pub mod tableaux;
pub mod tables;
pub mod trapezoid;
pub mod weights;

pub use error::{Error, Result};
