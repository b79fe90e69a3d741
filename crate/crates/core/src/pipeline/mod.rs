//! Einstein metrics of the symmetric ansatz on `SO(k1 + (p-1) k)`.
//!
//! [`build_system`] writes the Einstein condition as three polynomials in
//! `(x1, x2, x23)` with `x12 = 1`; [`eliminate_to_h1`] reduces them to one
//! polynomial in `x23`; [`solve`] isolates its positive roots and turns each
//! into an [`EinsteinCertificate`] using exact interval arithmetic.
//! [`numeric_solve_general`] is an uncertified Newton solver for any
//! partition.

mod certify;
mod closed_forms;
mod elimination;
mod newton;
mod report;
mod system;

pub use certify::{
    certify_root, check_ordering, classify_natural_reductivity, solve, solve_with_options,
    EinsteinCertificate, NrReason, OrderingReport, Positivity, SolveOptions, Verdict,
};
pub use closed_forms::{
    derived_h1_at_zero, g1_at_one, h1_at_one, h1_at_two, h1_at_two_thirds_expansion, p_j,
    printed_h1_at_zero, rho, rho_window_display, sign_certificates, SignReport,
};
pub use elimination::{eliminate_to_h1, Elimination};
pub use newton::{
    numeric_solve_general, symmetric_distance, NewtonOptions, NumericSolution, StartSpec,
};
pub use report::{
    certificate_json, h1_for, scan_row, CertificateJson, IntervalJson, ParamsJson, PositivityJson,
    ResidualJson, RootJson, ScanRow, ValueJson, CSV_HEADER,
};
pub use system::{
    build_system, derive_system_from_ricci, is_einstein_point, printed_g2, printed_system,
    same_up_to_content, systems_agree, EinsteinSystem, RatFn, VARS,
};

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("parameters need k1 >= 3, k >= 3, p >= 3 (got k1={k1}, k={k}, p={p})")]
    InvalidParameters { k1: usize, k: usize, p: usize },
    #[error("elimination step failed: {0}")]
    DegenerateElimination(String),
    #[error("no positive real roots of {0}")]
    NoPositiveRoots(String),
    #[error("residual bound {bound} exceeds tolerance {tolerance} for root {root}")]
    ResidualTooLarge {
        root: String,
        bound: String,
        tolerance: String,
    },
    #[error("precision must be at least 53 bits, got {0}")]
    PrecisionTooLow(u32),
}

/// `(k1, k, p)` for the partition `(k1, k, ..., k)` with `p` blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AnsatzParams {
    pub k1: usize,
    pub k: usize,
    pub p: usize,
}

impl AnsatzParams {
    pub fn new(k1: usize, k: usize, p: usize) -> Result<Self, PipelineError> {
        if k1 < 3 || k < 3 || p < 3 {
            return Err(PipelineError::InvalidParameters { k1, k, p });
        }
        Ok(AnsatzParams { k1, k, p })
    }

    pub fn n(&self) -> usize {
        self.k1 + self.k * (self.p - 1)
    }

    pub fn as_i64(&self) -> (i64, i64, i64) {
        (self.k1 as i64, self.k as i64, self.p as i64)
    }
}

impl std::fmt::Display for AnsatzParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(k1={}, k={}, p={})", self.k1, self.k, self.p)
    }
}
