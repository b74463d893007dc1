//! Series-based evaluators for the zeta function and its relatives.
//!
//! Everything here is built from three series: the power sum with its
//! Euler-Maclaurin tail (`zeta_euler_maclaurin`, `h_partial_sum`), the
//! alternating eta series and its term-by-term derivatives
//! (`eta_partial_sum`, `eta_accelerated`), and the plain truncated power sum
//! (`zeta_plain_partial`). The two convergent routes to zeta -- the
//! Euler-Maclaurin formula and `(1 - 2^(1-s))^(-1) * eta` -- are independent
//! and are cross-checked against each other in the test suite.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::types::{ensure_finite, EvalResult};

/// Left edge of the evaluation domain: evaluators require `Re(s) >= SIGMA_MIN`.
pub const SIGMA_MIN: f64 = 0.05;

/// Default height-coupling constant of the truncation plan (must exceed 1).
pub const DEFAULT_PLAN_C: f64 = 2.0;

/// Default floor on the truncation index.
pub const DEFAULT_MIN_N: u64 = 64;

/// Default target for automatically sized evaluations.
pub const DEFAULT_TARGET_ERROR: f64 = 1e-12;

const TWO_PI: f64 = std::f64::consts::TAU;
const EPS: f64 = f64::EPSILON;

/// B_{2k} / (2k)! for k = 1..=4. The k = 4 entry only feeds the error bound.
const EM_COEFF: [f64; 4] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
];

/// Truncation plan for Euler-Maclaurin evaluation: the index `n` must stay
/// above `c * |t| / 2pi` (with `c > 1`) for the uniform tail estimate to hold,
/// and never below `min_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPlan {
    pub n: u64,
    pub c: f64,
    pub min_n: u64,
}

impl TruncationPlan {
    pub fn new(n: u64, c: f64, min_n: u64) -> Self {
        debug_assert!(c > 1.0);
        Self { n, c, min_n }
    }

    /// Smallest admissible index at height `t` for coupling constant `c`.
    pub fn required_n(t: f64, c: f64) -> u64 {
        (c * t.abs() / TWO_PI).floor() as u64 + 1
    }

    /// Plan sized so the predicted Euler-Maclaurin bound at `s` stays below
    /// `target`, while honoring the validity threshold and the `min_n` floor.
    pub fn auto_with(s: Complex64, target: f64, c: f64, min_n: u64) -> Self {
        let validity = Self::required_n(s.im, c);
        // Invert 2 * |B8/8!| * (|s|+7)^7 * n^-(sigma+7) = target for n.
        let scale = 2.0 * EM_COEFF[3].abs() * (s.norm() + 7.0).powi(7);
        let sigma = s.re.max(SIGMA_MIN);
        let accuracy = if scale > target {
            (scale / target).powf(1.0 / (sigma + 7.0)).ceil() as u64
        } else {
            0
        };
        Self::new(validity.max(accuracy).max(min_n).max(16), c, min_n)
    }

    /// `auto_with` using the default constants and target.
    pub fn auto(s: Complex64) -> Self {
        Self::auto_with(s, DEFAULT_TARGET_ERROR, DEFAULT_PLAN_C, DEFAULT_MIN_N)
    }

    /// Check the plan invariant at height `t`.
    pub fn validate_for(&self, t: f64) -> Result<()> {
        let required = self.c * t.abs() / TWO_PI;
        if self.n < self.min_n || (self.n as f64) <= required {
            return Err(Error::PlanViolation {
                n: self.n,
                t,
                required: required.max(self.min_n as f64),
            });
        }
        Ok(())
    }
}

/// Precomputed `ln n` table for large sweeps; index 0 is unused.
pub struct LogTable {
    lns: Vec<f64>,
}

impl LogTable {
    pub fn new(n_max: u64) -> Self {
        let mut lns = Vec::with_capacity(n_max as usize + 1);
        lns.push(0.0);
        for n in 1..=n_max {
            lns.push((n as f64).ln());
        }
        Self { lns }
    }

    pub fn len(&self) -> u64 {
        self.lns.len() as u64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.lns.len() <= 1
    }

    #[inline]
    pub fn ln(&self, n: u64) -> f64 {
        match self.lns.get(n as usize) {
            Some(&v) => v,
            None => (n as f64).ln(),
        }
    }
}

/// `n^(-s)` as `exp(-s ln n)`, from a precomputed `ln n`.
#[inline]
fn pow_neg_s(ln_n: f64, s: Complex64) -> Complex64 {
    Complex64::from_polar((-s.re * ln_n).exp(), -s.im * ln_n)
}

/// Rounding bound for a sequentially accumulated sum of `terms` terms with
/// modulus total `norm_sum`: `(terms-1) eps` for the additions plus the
/// per-term `exp(-s ln n)` evaluation error, `eps (|s| ln n + O(1))` each.
fn sum_fp_bound(norm_sum: f64, terms: f64, s: Complex64, ln_max: f64) -> f64 {
    EPS * norm_sum * (terms + s.norm() * ln_max.max(1.0) + 8.0)
}

fn reject_pole_at_one(s: Complex64, what: &'static str) -> Result<()> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole { what, s });
    }
    Ok(())
}

/// Power sum plus tail term, with the sum of term moduli for rounding bounds.
/// Returns `(sum_{k<=n} k^-s + n^(1-s)/(s-1), sum of moduli)`.
fn h_sum_parts(n: u64, s: Complex64, table: Option<&LogTable>) -> (Complex64, f64) {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut norm_sum = 0.0;
    for k in 1..=n {
        let ln_k = match table {
            Some(t) => t.ln(k),
            None => (k as f64).ln(),
        };
        let term = pow_neg_s(ln_k, s);
        sum += term;
        norm_sum += (-s.re * ln_k).exp();
    }
    let ln_n = match table {
        Some(t) => t.ln(n),
        None => (n as f64).ln(),
    };
    // n^(1-s)/(s-1) = exp((1-s) ln n) / (s-1)
    let tail = Complex64::from_polar(((1.0 - s.re) * ln_n).exp(), -s.im * ln_n)
        / (s - Complex64::new(1.0, 0.0));
    (sum + tail, norm_sum + tail.norm())
}

/// Euler-Maclaurin evaluation of `zeta(s)` under a truncation plan.
///
/// Computes `H_N(s) - N^(-s)/2` plus the Bernoulli corrections through the
/// `N^(-sigma-5)` term; the error bound is twice the modulus of the first
/// omitted correction plus a floating-point accumulation estimate.
pub fn zeta_euler_maclaurin(s: Complex64, plan: &TruncationPlan) -> Result<EvalResult> {
    ensure_finite(s)?;
    reject_pole_at_one(s, "zeta")?;
    if s.re < SIGMA_MIN {
        return Err(Error::Domain(format!(
            "zeta_euler_maclaurin requires Re(s) >= {SIGMA_MIN}, got {}",
            s.re
        )));
    }
    plan.validate_for(s.im)?;

    let n = plan.n;
    let nf = n as f64;
    let ln_n = nf.ln();
    let (h, mut norm_sum) = h_sum_parts(n, s, None);

    let half = 0.5 * pow_neg_s(ln_n, s);
    norm_sum += half.norm();

    // Corrections B_{2k}/(2k)! * s(s+1)...(s+2k-2) * n^(-s-2k+1), k = 1..3.
    let mut value = h - half;
    let n_inv2 = Complex64::new(nf.powi(-2), 0.0);
    let mut npow = pow_neg_s(ln_n, s) / nf; // n^(-s-1)
    let mut poch = s; // s(s+1)...(s+2k-2)
    let mut factor = s + 1.0;
    for (k, coeff) in EM_COEFF.iter().enumerate() {
        if k == 3 {
            // First omitted term: feeds the bound only.
            let omitted = coeff.abs() * poch.norm() * npow.norm();
            let bound = 2.0 * omitted + sum_fp_bound(norm_sum, nf, s, ln_n);
            return Ok(EvalResult::new(value, bound));
        }
        let corr = *coeff * poch * npow;
        value += corr;
        norm_sum += corr.norm();
        poch *= factor;
        poch *= factor + 1.0;
        factor += 2.0;
        npow *= n_inv2;
    }
    unreachable!()
}

/// One term of the telescoped representation of `H_N`:
/// `h_1(s) = 1 + 1/(s-1)`, `h_n(s) = n^-s - (n^(1-s) - (n-1)^(1-s))/(1-s)`.
pub fn h_term(n: u64, s: Complex64) -> Result<Complex64> {
    ensure_finite(s)?;
    reject_pole_at_one(s, "h_n")?;
    assert!(n >= 1, "h_term index starts at 1");
    let one = Complex64::new(1.0, 0.0);
    if n == 1 {
        return Ok(one + one / (s - one));
    }
    let one_minus_s = one - s;
    let ln_n = (n as f64).ln();
    let ln_n1 = ((n - 1) as f64).ln();
    let npow = pow_neg_s(ln_n, s);
    let n_1ms = Complex64::from_polar(((1.0 - s.re) * ln_n).exp(), -s.im * ln_n);
    let n1_1ms = Complex64::from_polar(((1.0 - s.re) * ln_n1).exp(), -s.im * ln_n1);
    Ok(npow - (n_1ms - n1_1ms) / one_minus_s)
}

/// `H_N(s) = sum_{n<=N} n^-s + N^(1-s)/(s-1)`, by the closed form.
pub fn h_partial_sum(n: u64, s: Complex64) -> Result<Complex64> {
    Ok(h_partial_sum_bounded(n, s)?.value)
}

/// `H_N(s)` together with a floating-point rounding bound (the partial sum is
/// exact as a finite expression; only accumulation noise enters).
pub fn h_partial_sum_bounded(n: u64, s: Complex64) -> Result<EvalResult> {
    ensure_finite(s)?;
    reject_pole_at_one(s, "H_N")?;
    assert!(n >= 1, "H_N index starts at 1");
    let (value, norm_sum) = h_sum_parts(n, s, None);
    let bound = sum_fp_bound(norm_sum, n as f64, s, (n as f64).ln());
    Ok(EvalResult::new(value, bound))
}

pub(crate) fn h_partial_sum_with_table(
    table: &LogTable,
    n: u64,
    s: Complex64,
) -> (Complex64, f64) {
    let (value, norm_sum) = h_sum_parts(n, s, Some(table));
    let bound = sum_fp_bound(norm_sum, n as f64, s, table.ln(n));
    (value, bound)
}

/// Signed alternating sum `sum_{n<=N} (-1)^(n-1) (ln n)^m n^-s` plus the sum
/// of term moduli. `(ln n)^m` follows the convention `(ln 1)^0 = 1` and
/// `(ln 1)^m = 0` for `m >= 1`.
fn alt_sum_parts(n: u64, s: Complex64, m: u32, table: Option<&LogTable>) -> (Complex64, f64) {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut norm_sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=n {
        let ln_k = match table {
            Some(t) => t.ln(k),
            None => (k as f64).ln(),
        };
        let log_factor = log_power(ln_k, m, k);
        if log_factor != 0.0 {
            let term = pow_neg_s(ln_k, s) * (sign * log_factor);
            sum += term;
            norm_sum += term.norm();
        }
        sign = -sign;
    }
    (sum, norm_sum)
}

/// `(ln n)^m` via `exp(m ln ln n)` for `n >= 2`; degenerate cases explicit.
#[inline]
fn log_power(ln_n: f64, m: u32, n: u64) -> f64 {
    if m == 0 {
        1.0
    } else if n == 1 {
        0.0
    } else {
        (m as f64 * ln_n.ln()).exp()
    }
}

/// N-term partial sum of the m-th derivative series of eta:
/// `sum_{n<=N} (-1)^(n+m-1) (ln n)^m n^-s` (m = 0 gives `phi_N`).
pub fn eta_partial_sum(n: u64, s: Complex64, m: u32) -> Result<Complex64> {
    Ok(eta_partial_sum_bounded(n, s, m)?.value)
}

/// `eta_partial_sum` with a floating-point rounding bound.
pub fn eta_partial_sum_bounded(n: u64, s: Complex64, m: u32) -> Result<EvalResult> {
    ensure_finite(s)?;
    if s.re <= 0.0 {
        return Err(Error::Domain(format!(
            "eta_partial_sum requires Re(s) > 0, got {}",
            s.re
        )));
    }
    let (raw, norm_sum) = alt_sum_parts(n, s, m, None);
    let value = if m % 2 == 1 { -raw } else { raw };
    let bound = sum_fp_bound(norm_sum, n as f64, s, (n.max(1) as f64).ln());
    Ok(EvalResult::new(value, bound))
}

pub(crate) fn eta_partial_sum_with_table(
    table: &LogTable,
    n: u64,
    s: Complex64,
    m: u32,
) -> (Complex64, f64) {
    let (raw, norm_sum) = alt_sum_parts(n, s, m, Some(table));
    let value = if m % 2 == 1 { -raw } else { raw };
    let bound = sum_fp_bound(norm_sum, n as f64, s, table.ln(n.max(1)));
    (value, bound)
}

/// Head length for low-sigma acceleration: sum this many terms directly, then
/// accelerate the remaining tail.
const ETA_DIRECT_HEAD: u64 = 10_000;
/// Sigma threshold below which the direct head is used.
const ETA_HEAD_SIGMA: f64 = 0.3;
/// Cap on the Chebyshev acceleration order. (3+sqrt(8))^n must stay finite in
/// f64, which limits n to ~400; 350 is far more accuracy than f64 can hold.
const CVZ_MAX_ORDER: usize = 350;
/// Overall cap on terms consumed by the acceleration stage.
const CVZ_TERM_CAP: usize = 2000;

/// Chebyshev-polynomial acceleration of `sum_{k>=0} (-1)^k a_k`
/// (Cohen-Rodriguez Villegas-Zagier, d_k weights from (3+sqrt 8)^n).
/// Returns the accelerated sum and the weight-scaled term-norm total.
fn cvz_accelerate(order: usize, mut term: impl FnMut(usize) -> Complex64) -> (Complex64, f64) {
    let base = 3.0 + 8.0f64.sqrt();
    let mut d = base.powi(order as i32);
    d = 0.5 * (d + 1.0 / d);
    let nf = order as f64;
    let mut b = -1.0f64;
    let mut c = -d;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut wnorm = 0.0;
    for k in 0..order {
        let kf = k as f64;
        c = b - c;
        let a = term(k);
        sum += c * a;
        wnorm += c.abs() * a.norm();
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    (sum / d, wnorm / d)
}

/// Limit of the alternating eta-derivative series to within `target_error`,
/// via direct head summation (for small sigma) plus Chebyshev acceleration of
/// the tail. The acceleration order grows until two successive accelerated
/// values stabilize; failure to stabilize within the term cap is an error.
pub fn eta_accelerated(s: Complex64, m: u32, target_error: f64) -> Result<EvalResult> {
    ensure_finite(s)?;
    if s.re < SIGMA_MIN {
        return Err(Error::Domain(format!(
            "eta_accelerated requires Re(s) >= {SIGMA_MIN}, got {}",
            s.re
        )));
    }
    if !(target_error > 0.0) {
        return Err(Error::Domain(format!(
            "target_error must be positive, got {target_error}"
        )));
    }

    let head_len = if s.re < ETA_HEAD_SIGMA {
        ETA_DIRECT_HEAD
    } else {
        0
    };
    let (head, head_norm) = alt_sum_parts(head_len, s, m, None);

    // Tail after the head: sum_{k>=0} (-1)^k g(head_len+1+k), with the sign
    // (-1)^head_len in front (head_len is even by construction).
    debug_assert!(head_len % 2 == 0);
    let tail_term = |k: usize| {
        let n = head_len + 1 + k as u64;
        let ln_n = (n as f64).ln();
        pow_neg_s(ln_n, s) * log_power(ln_n, m, n)
    };

    let ln_base = (3.0 + 8.0f64.sqrt()).ln();
    let mut order = (((1.0 / target_error).ln() + 0.5 * s.im.abs() + 10.0) / ln_base).ceil()
        as usize;
    order = order.clamp(20, CVZ_MAX_ORDER);

    let (mut prev, _) = cvz_accelerate(order, tail_term);
    let mut consumed = order;
    loop {
        let next_order = (order + (order / 4).max(10)).min(CVZ_MAX_ORDER);
        let (cur, wnorm) = cvz_accelerate(next_order, tail_term);
        consumed += next_order;
        let diff = (cur - prev).norm();
        let head_fp = sum_fp_bound(head_norm, head_len as f64, s, ((head_len + 2) as f64).ln());
        let accel_fp = sum_fp_bound(
            wnorm,
            next_order as f64,
            s,
            ((head_len + next_order as u64 + 1) as f64).ln(),
        );
        if diff <= (0.5 * target_error).max(4.0 * EPS * (head_norm + wnorm)) {
            let raw = head + cur;
            let value = if m % 2 == 1 { -raw } else { raw };
            let bound = 2.0 * diff + head_fp + accel_fp;
            return Ok(EvalResult::new(value, bound));
        }
        if next_order == CVZ_MAX_ORDER || consumed >= CVZ_TERM_CAP {
            return Err(Error::ConvergenceFailure {
                target: target_error,
                achieved: 2.0 * diff,
            });
        }
        prev = cur;
        order = next_order;
    }
}

/// Plain truncated power sum `zeta_N(s) = sum_{n<=N} n^-s`.
pub fn zeta_plain_partial(n: u64, s: Complex64) -> Result<Complex64> {
    ensure_finite(s)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..=n {
        sum += pow_neg_s((k as f64).ln(), s);
    }
    Ok(sum)
}

/// `zeta(s)` through the eta representation `(1 - 2^(1-s))^(-1) * eta(s)`.
/// Independent of the Euler-Maclaurin route; used for cross-checks.
pub fn zeta_via_eta(s: Complex64, target_error: f64) -> Result<EvalResult> {
    ensure_finite(s)?;
    reject_pole_at_one(s, "zeta")?;
    let eta = eta_accelerated(s, 0, target_error)?;
    let ln2 = std::f64::consts::LN_2;
    let two_pow = Complex64::from_polar(((1.0 - s.re) * ln2).exp(), -s.im * ln2);
    let denom = Complex64::new(1.0, 0.0) - two_pow;
    let q = Complex64::new(1.0, 0.0) / denom;
    let value = q * eta.value;
    let rel_fp = EPS * (0.7 * (Complex64::new(1.0, 0.0) - s).norm() + 8.0);
    let bound = q.norm() * eta.abs_error_bound + value.norm() * rel_fp;
    Ok(EvalResult::new(value, bound))
}
