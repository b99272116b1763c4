//! Named comparisons between two independently computed values.

use serde::{Deserialize, Serialize};

/// Outcome of comparing two independent computations of the same quantity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
}

impl CheckReport {
    /// Passes when either the absolute or the relative discrepancy is within `tol`.
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let abs_err = (lhs - rhs).abs();
        let denom = lhs.abs().max(rhs.abs());
        let rel_err = if denom == 0.0 { 0.0 } else { abs_err / denom };
        let pass = abs_err.is_finite() && (abs_err <= tol || rel_err <= tol);
        CheckReport { name: name.into(), lhs, rhs, abs_err, rel_err, tol, pass }
    }

    /// A check that could not be computed.
    pub fn failed(name: impl Into<String>, tol: f64) -> Self {
        CheckReport {
            name: name.into(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            abs_err: f64::NAN,
            rel_err: f64::NAN,
            tol,
            pass: false,
        }
    }
}
