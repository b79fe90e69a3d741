//! Exact polynomials over big rationals.
//!
//! [`MultiPoly`] is a sparse map from exponent vectors to coefficients over a
//! named variable list; [`UniPoly`] is dense. Real roots of univariate
//! polynomials are isolated with Sturm sequences and refined by bisection,
//! which keeps every reported interval a proof of root existence.

mod multi;
mod resultant;
mod roots;
mod uni;

pub use multi::{MultiPoly, TermJson};
pub use resultant::{resultant, resultant_uni};
pub use roots::{
    isolate_roots, positive_roots, real_root_count, sign_changes, sturm_chain, sturm_count,
    IsolatedRoot, IsolatedRootJson, ENDPOINT_SHIFT_BITS,
};
pub use uni::UniPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable lists differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("division is not exact")]
    NotDivisible,
    #[error("polynomial involves variables other than {0:?}")]
    NotUnivariate(String),
    #[error("interval endpoint {0} is a root")]
    EndpointIsRoot(String),
    #[error("empty interval: {0} >= {1}")]
    EmptyInterval(String, String),
    #[error("bad polynomial JSON: {0}")]
    Json(String),
}
