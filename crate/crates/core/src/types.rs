//! Shared value types.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A computed complex value together with a rigorous absolute error bound.
///
/// The bound covers both the truncation error of the underlying method and
/// an estimate of accumulated floating-point rounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: Complex64,
    pub abs_error_bound: f64,
}

impl EvalResult {
    pub fn new(value: Complex64, abs_error_bound: f64) -> Self {
        debug_assert!(abs_error_bound >= 0.0 && abs_error_bound.is_finite());
        Self {
            value,
            abs_error_bound,
        }
    }
}

/// Reject NaN and infinite components at the API boundary.
pub(crate) fn ensure_finite(s: Complex64) -> Result<()> {
    if s.re.is_finite() && s.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(s))
    }
}
