//! Error type shared by all evaluators.

use num_complex::Complex64;
use thiserror::Error;

/// Errors surfaced by the numerical kernels and the catalog I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// Argument hit a pole of the gamma function (nonpositive integer).
    #[error("gamma pole at s = {0}")]
    GammaPole(Complex64),

    /// Evaluation requested at a pole of the target function.
    #[error("pole of {what} at s = {s}")]
    Pole { what: &'static str, s: Complex64 },

    /// Argument outside the operation's domain.
    #[error("domain violation: {0}")]
    Domain(String),

    /// A non-finite component reached a numerical kernel.
    #[error("non-finite argument: {0}")]
    NonFinite(Complex64),

    /// Truncation plan does not satisfy N > C|t|/2pi (or N < min_N).
    #[error("truncation plan violated at t = {t}: N = {n} <= C|t|/2pi = {required}")]
    PlanViolation { n: u64, t: f64, required: f64 },

    /// Denominator of the direct ratio is numerically indistinguishable from zero.
    #[error("near-zero denominator: |zeta(1-s)| = {modulus} within 10x error bound {bound}")]
    NearZeroDenominator { modulus: f64, bound: f64 },

    /// An indexed partial sum in a ratio vanished.
    #[error("vanishing denominator at N = {n} (numerator index {num_index}, denominator index {den_index})")]
    VanishingDenominator {
        n: u64,
        num_index: u64,
        den_index: u64,
    },

    /// Series acceleration failed to stabilize within the iteration cap.
    #[error("series acceleration did not reach target {target:e} (achieved {achieved:e})")]
    ConvergenceFailure { target: f64, achieved: f64 },

    /// Lambda on the critical line came out with an imaginary part above its bound.
    #[error("imaginary part {imag:e} of Lambda(1/2+it) exceeds error bound {bound:e} at t = {t}")]
    ImaginaryResidue { t: f64, imag: f64, bound: f64 },

    /// Zero catalog file could not be parsed.
    #[error("malformed catalog at line {line}: {msg}")]
    MalformedCatalog { line: usize, msg: String },

    /// Zero catalog content violates a record invariant.
    #[error("catalog invariant violated: {0}")]
    InvariantViolation(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
