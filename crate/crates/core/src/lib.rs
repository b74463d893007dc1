//! Numerical laboratory for the Riemann zeta function in the critical strip.
//!
//! The crate is organized around five subsystems:
//!
//! * [`special`] -- complex log-gamma, the completed function
//!   `Lambda(s) = pi^(-s/2) Gamma(s/2) zeta(s)`, the functional-equation
//!   ratio `F(s) = zeta(s)/zeta(1-s)` with its gamma continuation across
//!   zeros, and the gamma-ratio modulus bound.
//! * [`zeta`] -- the series evaluators: Euler-Maclaurin zeta under a
//!   truncation plan, the telescoped `h_n`/`H_N` sums, eta partial sums and
//!   their term-by-term derivatives, accelerated eta limits, and plain
//!   truncated power sums.
//! * [`approximants`] -- ceiling-indexed partial-sum ratios, their limit
//!   estimation over geometric schedules, and the monotone-subsequence
//!   probe.
//! * [`zeros`] -- critical-line zero location by sign changes of the real
//!   completed function, with a line-delimited catalog format.
//! * [`criteria`] -- the checkers: `|F| = 1` at zeros, derivative ratios,
//!   the small-height region predicate, winding-number disc certification
//!   for partial sums, and the `|F|` grid sweep.
//!
//! Everything is a pure function of its arguments; evaluation grids are
//! data-parallel with deterministic, order-preserving assembly.

pub mod approximants;
pub mod criteria;
pub mod error;
pub mod special;
pub mod types;
pub mod zeros;
pub mod zeta;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use types::EvalResult;

pub use approximants::{
    default_schedule, estimate_limit, index_f, monotonicity_probe, ratio_approximant, IndexRule,
    IndexScale, IndexVariant, LimitEstimate, MonotonicityReport, Trend,
};
pub use criteria::{
    certify_disc, check_derivative_ratio, check_f_modulus, derivative_ratio_target,
    region_predicate, saidak_zvengrowski_t0, sweep_f_modulus, CombinationParams, CriterionReport,
    DiscCertificate, Evaluator, PerNCertificate, RegionVerdict, SweepRow, SweepTable, Verdict,
};
pub use special::{
    f_ratio_continued, f_ratio_direct, gamma_ratio_bound, lambda_completed, log_gamma,
};
pub use zeros::{
    catalog_read, catalog_write, real_lambda_on_line, scan_and_refine, ScanReport, ScanWarning,
    ZeroRecord,
};
pub use zeta::{
    eta_accelerated, eta_partial_sum, h_partial_sum, h_term, zeta_euler_maclaurin,
    zeta_plain_partial, zeta_via_eta, LogTable, TruncationPlan,
};
