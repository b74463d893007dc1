//! Checkers for the equivalent-criterion statements: the `|F| = 1` test at
//! zeros, the derivative-ratio test, the small-height region predicate where
//! `|F| != 1` provably, disc-nonvanishing certification for partial sums by
//! winding numbers, and the `|F|` grid sweep.

use std::io::Write as IoWrite;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::f_ratio_continued;
use crate::types::ensure_finite;
use crate::zeros::ZeroRecord;
use crate::zeta::{
    eta_accelerated, eta_partial_sum, eta_partial_sum_with_table, h_partial_sum_with_table,
    LogTable,
};

const EPS: f64 = f64::EPSILON;
const TAU: f64 = std::f64::consts::TAU;

/// Default tolerance for the `|F(s0)| = 1` check.
pub const DEFAULT_F_MODULUS_TOL: f64 = 1e-8;
/// Default tolerance for the derivative-ratio check.
pub const DEFAULT_DERIVATIVE_TOL: f64 = 1e-3;
/// Accumulated boundary argument must be this close to a multiple of 2pi.
pub const WINDING_INTEGRALITY_TOL: f64 = 1e-6;
/// Adaptive boundary refinement cap.
pub const BOUNDARY_POINT_CAP: u64 = 1 << 20;

/// Modulus `2 pi e^0.0212411` below which the small-height analysis applies.
pub fn sz_modulus() -> f64 {
    TAU * 0.021_241_1_f64.exp()
}

/// Height `t0` with `|1/2 + i t0| = 2 pi e^0.0212411 = 6.418...`; annotation
/// only, no criterion depends on it quantitatively.
pub fn saidak_zvengrowski_t0() -> f64 {
    let m = sz_modulus();
    (m * m - 0.25).sqrt()
}

/// Membership of a point in the two regions where `|F| != 1` is proven, and
/// consistency of the actual `|F|` value with the strict inequality there.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RegionVerdict {
    pub point: Complex64,
    /// `0 < sigma < 1/2` and `sqrt((1+sigma)^2 + t^2) < 2 pi`.
    pub in_left_region: bool,
    /// `1/2 < sigma < 1` and `sqrt((2-sigma)^2 + t^2) < 2 pi`.
    pub in_right_region: bool,
    pub f_modulus: f64,
    /// left => |F| < 1, right => |F| > 1.
    pub consistent: bool,
}

/// Evaluate the region predicate at a strip point.
pub fn region_predicate(s: Complex64) -> Result<RegionVerdict> {
    ensure_finite(s)?;
    if s.re <= 0.0 || s.re >= 1.0 {
        return Err(Error::Domain(format!(
            "region_predicate requires 0 < Re(s) < 1, got {}",
            s.re
        )));
    }
    let (sigma, t) = (s.re, s.im);
    let in_left_region = sigma < 0.5 && ((1.0 + sigma).powi(2) + t * t).sqrt() < TAU;
    let in_right_region = sigma > 0.5 && ((2.0 - sigma).powi(2) + t * t).sqrt() < TAU;
    let f_modulus = f_ratio_continued(s)?.value.norm();
    let consistent =
        (!in_left_region || f_modulus < 1.0) && (!in_right_region || f_modulus > 1.0);
    Ok(RegionVerdict {
        point: s,
        in_left_region,
        in_right_region,
        f_modulus,
        consistent,
    })
}

/// Report for the per-zero criteria. Each check fills its own side; `pass`
/// holds iff every present deviation is below its tolerance and the
/// computation was conclusive.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub zero: ZeroRecord,
    pub f_modulus_deviation: Option<f64>,
    pub f_modulus_tol: Option<f64>,
    pub derivative_ratio: Option<f64>,
    pub derivative_target: Option<f64>,
    pub derivative_tol: Option<f64>,
    /// Partial-sum ratio along the supplied N-schedule (convergence evidence
    /// for the accelerated limit).
    pub partial_ratio_samples: Option<Vec<(u64, f64)>>,
    pub inconclusive: bool,
    pub pass: bool,
}

/// `||F(s0)| - 1|` at `s0 = 1/2 + i t`, by the gamma-continued formula
/// (the direct ratio is 0/0 at a zero).
pub fn check_f_modulus(zero: &ZeroRecord, tol: f64) -> Result<CriterionReport> {
    let s0 = Complex64::new(0.5, zero.ordinate);
    let f = f_ratio_continued(s0)?;
    let deviation = (f.value.norm() - 1.0).abs();
    Ok(CriterionReport {
        zero: *zero,
        f_modulus_deviation: Some(deviation),
        f_modulus_tol: Some(tol),
        derivative_ratio: None,
        derivative_target: None,
        derivative_tol: None,
        partial_ratio_samples: None,
        inconclusive: false,
        pass: deviation < tol,
    })
}

/// `|(1 - 2^(1-s0)) / (1 - 2^s0)|`, the derivative-ratio target.
pub fn derivative_ratio_target(s0: Complex64) -> f64 {
    let ln2 = std::f64::consts::LN_2;
    let one = Complex64::new(1.0, 0.0);
    let num = one - ((one - s0) * ln2).exp();
    let den = one - (s0 * ln2).exp();
    num.norm() / den.norm()
}

/// Ratio of the m-th eta-derivative series at `s0` and `1 - s0` against the
/// target `|(1-2^(1-s0))/(1-2^s0)|`. Acceleration failure is reported as an
/// inconclusive result, not an error.
pub fn check_derivative_ratio(
    zero: &ZeroRecord,
    m: u32,
    n_schedule: &[u64],
    tol: f64,
) -> Result<CriterionReport> {
    if m < 1 {
        return Err(Error::Domain("derivative order m must be >= 1".into()));
    }
    let s0 = Complex64::new(0.5, zero.ordinate);
    let one_minus_s0 = Complex64::new(1.0, 0.0) - s0;
    let target = derivative_ratio_target(s0);

    let mut samples = Vec::with_capacity(n_schedule.len());
    for &n in n_schedule {
        let num = eta_partial_sum(n, s0, m)?;
        let den = eta_partial_sum(n, one_minus_s0, m)?;
        let den_norm = den.norm();
        let ratio = if den_norm < 1e-300 {
            f64::INFINITY
        } else {
            num.norm() / den_norm
        };
        samples.push((n, ratio));
    }

    let accel_target = (tol * 1e-4).min(1e-10).max(1e-14);
    let num = eta_accelerated(s0, m, accel_target);
    let den = eta_accelerated(one_minus_s0, m, accel_target);
    let (ratio, inconclusive) = match (num, den) {
        (Ok(a), Ok(b)) if b.value.norm() >= 1e-300 => {
            (Some(a.value.norm() / b.value.norm()), false)
        }
        (Err(Error::ConvergenceFailure { .. }), _) | (_, Err(Error::ConvergenceFailure { .. })) => {
            (None, true)
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
        _ => (None, true),
    };

    let pass = !inconclusive && ratio.map_or(false, |r| (r - target).abs() < tol);
    Ok(CriterionReport {
        zero: *zero,
        f_modulus_deviation: None,
        f_modulus_tol: None,
        derivative_ratio: ratio,
        derivative_target: Some(target),
        derivative_tol: Some(tol),
        partial_ratio_samples: Some(samples),
        inconclusive,
        pass,
    })
}

/// Which partial-sum family a disc certificate is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Evaluator {
    #[serde(rename = "H_N")]
    HN,
    #[serde(rename = "phi_N")]
    PhiN,
    #[serde(rename = "combination")]
    Combination,
}

/// Parameters of the generalized combination
/// `f(N,s) + a_1 H_N + a_2 H_{N+L_1} + ... + a_d H_{N+L_{d-1}} + (1 - sum a_i) H_{N+L_d}`.
///
/// `f(N,s)` is restricted to a constant perturbation: at any fixed `N` only
/// its value enters a certificate, so a constant exercises the theorem shape;
/// the uniform-vanishing hypothesis concerns the `N -> infinity` limit only.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CombinationParams {
    /// Explicit coefficients a_1..a_d; the final coefficient is derived as
    /// `1 - sum a_i` (the affine constraint).
    pub alphas: Vec<Complex64>,
    /// Offsets L_1..L_d.
    pub offsets: Vec<i64>,
    /// The constant perturbation standing in for f(N, s).
    pub perturbation: Complex64,
}

impl CombinationParams {
    /// The arithmetic mean of `H_N` and `H_{N-1}`: d = 1, a_1 = 1/2, L_1 = -1.
    pub fn arithmetic_mean() -> Self {
        Self {
            alphas: vec![Complex64::new(0.5, 0.0)],
            offsets: vec![-1],
            perturbation: Complex64::new(0.0, 0.0),
        }
    }

    /// The derived last coefficient `1 - sum a_i`.
    pub fn last_coefficient(&self) -> Complex64 {
        Complex64::new(1.0, 0.0) - self.alphas.iter().sum::<Complex64>()
    }

    /// The full term list as (coefficient, index offset) pairs.
    fn terms(&self) -> Vec<(Complex64, i64)> {
        let d = self.alphas.len();
        let mut terms = Vec::with_capacity(d + 1);
        terms.push((self.alphas[0], 0));
        for i in 1..d {
            terms.push((self.alphas[i], self.offsets[i - 1]));
        }
        terms.push((self.last_coefficient(), self.offsets[d - 1]));
        terms
    }
}

/// Per-N outcome of a disc certification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerNCertificate {
    pub n: u64,
    /// Minimum modulus over the boundary and the interior grid.
    pub min_modulus: f64,
    /// Evaluation error bound at the minimizing point.
    pub eval_error_bound: f64,
    /// Zeros inside the disc counted by argument continuation.
    pub winding_number: i64,
    /// Boundary discretization that met the < pi/2 step requirement.
    pub boundary_points: u64,
    /// Distance of the accumulated argument from `2 pi * winding_number`.
    pub arg_integrality: f64,
    /// Adaptive refinement hit its cap; winding untrusted.
    pub capped: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "certified-nonvanishing")]
    CertifiedNonvanishing,
    #[serde(rename = "zero-detected")]
    ZeroDetected,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

/// A disc-nonvanishing certificate for a partial-sum evaluator.
#[derive(Debug, Clone, Serialize)]
pub struct DiscCertificate {
    pub center: Complex64,
    pub radius: f64,
    pub evaluator: Evaluator,
    pub combination_params: Option<CombinationParams>,
    pub n_values: Vec<u64>,
    pub per_n: Vec<PerNCertificate>,
    pub verdict: Verdict,
}

struct DiscEvaluator<'a> {
    evaluator: Evaluator,
    terms: Vec<(Complex64, i64)>,
    perturbation: Complex64,
    table: &'a LogTable,
}

impl DiscEvaluator<'_> {
    /// Value and rounding bound of the chosen evaluator at `s` for outer
    /// index `n`.
    fn eval(&self, n: u64, s: Complex64) -> (Complex64, f64) {
        match self.evaluator {
            Evaluator::HN => h_partial_sum_with_table(self.table, n, s),
            Evaluator::PhiN => eta_partial_sum_with_table(self.table, n, s, 0),
            Evaluator::Combination => {
                let mut value = self.perturbation;
                let mut bound = 2.0 * EPS * self.perturbation.norm();
                for &(coef, offset) in &self.terms {
                    let idx = (n as i64 + offset) as u64;
                    let (h, b) = h_partial_sum_with_table(self.table, idx, s);
                    value += coef * h;
                    bound += coef.norm() * (b + 2.0 * EPS * h.norm());
                }
                (value, bound + 4.0 * EPS * value.norm())
            }
        }
    }
}

/// Certify nonvanishing of the chosen evaluator on a closed disc, for each
/// `N` in `n_values`, by boundary winding numbers plus minimum-modulus
/// screening of the boundary and an interior polar grid.
///
/// The boundary starts at `grid_density` points and doubles until every
/// consecutive argument step is below pi/2 (cap 2^20, beyond which the per-N
/// result is marked capped and the verdict cannot certify).
pub fn certify_disc(
    center: Complex64,
    radius: f64,
    evaluator: Evaluator,
    combination_params: Option<&CombinationParams>,
    n_values: &[u64],
    grid_density: u32,
) -> Result<DiscCertificate> {
    ensure_finite(center)?;
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::Domain(format!("radius must be positive, got {radius}")));
    }
    if n_values.is_empty() {
        return Err(Error::Domain("n_values must be nonempty".into()));
    }
    if grid_density == 0 {
        return Err(Error::Domain("grid_density must be positive".into()));
    }
    let (lo, hi) = (center.re - radius, center.re + radius);
    let margin = 1e-6;
    let inside_left = lo > margin && hi < 0.5 - margin;
    let inside_right = lo > 0.5 + margin && hi < 1.0 - margin;
    if !(inside_left || inside_right) {
        return Err(Error::Domain(format!(
            "disc [{lo}, {hi}] x i[..] must lie strictly inside one open half of the strip"
        )));
    }

    let zero_c = Complex64::new(0.0, 0.0);
    let one_c = Complex64::new(1.0, 0.0);
    let mut effective = evaluator;
    let terms = match (evaluator, combination_params) {
        (Evaluator::Combination, Some(p)) => {
            if p.alphas.is_empty() || p.offsets.len() != p.alphas.len() {
                return Err(Error::Domain(
                    "combination needs d >= 1 coefficients and exactly d offsets".into(),
                ));
            }
            // Zero coefficients contribute exactly nothing; dropping them
            // keeps a degenerate combination bit-identical to its reduced
            // form (alpha_1 = 1 reproduces plain H_N).
            let t: Vec<(Complex64, i64)> = p
                .terms()
                .into_iter()
                .filter(|&(coef, _)| coef != zero_c)
                .collect();
            for &n in n_values {
                for &(_, offset) in &t {
                    if n as i64 + offset < 1 {
                        return Err(Error::Domain(format!(
                            "offset {offset} drives index below 1 at N = {n}"
                        )));
                    }
                }
            }
            if t == [(one_c, 0)] && p.perturbation == zero_c {
                effective = Evaluator::HN;
            }
            t
        }
        (Evaluator::Combination, None) => {
            return Err(Error::Domain(
                "combination evaluator requires combination parameters".into(),
            ))
        }
        _ => Vec::new(),
    };

    let max_offset = terms.iter().map(|&(_, o)| o).max().unwrap_or(0);
    let max_index = n_values
        .iter()
        .map(|&n| (n as i64 + max_offset) as u64)
        .max()
        .unwrap();
    let table = LogTable::new(max_index);
    let disc = DiscEvaluator {
        evaluator: effective,
        terms,
        perturbation: combination_params.map(|p| p.perturbation).unwrap_or(zero_c),
        table: &table,
    };

    let mut per_n = Vec::with_capacity(n_values.len());
    for &n in n_values {
        per_n.push(certify_one_n(&disc, center, radius, n, grid_density));
    }

    let trusted = |p: &PerNCertificate| !p.capped && p.arg_integrality <= WINDING_INTEGRALITY_TOL;
    let verdict = if per_n
        .iter()
        .all(|p| trusted(p) && p.winding_number == 0 && p.min_modulus > p.eval_error_bound)
    {
        Verdict::CertifiedNonvanishing
    } else if per_n.iter().any(|p| trusted(p) && p.winding_number >= 1) {
        Verdict::ZeroDetected
    } else {
        Verdict::Inconclusive
    };

    Ok(DiscCertificate {
        center,
        radius,
        evaluator,
        combination_params: combination_params.cloned(),
        n_values: n_values.to_vec(),
        per_n,
        verdict,
    })
}

fn certify_one_n(
    disc: &DiscEvaluator<'_>,
    center: Complex64,
    radius: f64,
    n: u64,
    grid_density: u32,
) -> PerNCertificate {
    let mut m = u64::from(grid_density).max(8);
    let (mut boundary, capped);
    loop {
        boundary = (0..m)
            .into_par_iter()
            .map(|j| {
                let theta = TAU * j as f64 / m as f64;
                let s = center + Complex64::from_polar(radius, theta);
                disc.eval(n, s)
            })
            .collect::<Vec<_>>();
        let steps_ok = (0..m as usize).all(|j| {
            let a = boundary[j].0;
            let b = boundary[(j + 1) % m as usize].0;
            let d = (b * a.conj()).arg();
            d.is_finite() && d.abs() < std::f64::consts::FRAC_PI_2
        });
        if steps_ok {
            capped = false;
            break;
        }
        if m >= BOUNDARY_POINT_CAP {
            capped = true;
            break;
        }
        m *= 2;
    }

    let mut total_arg = 0.0;
    for j in 0..m as usize {
        let a = boundary[j].0;
        let b = boundary[(j + 1) % m as usize].0;
        total_arg += (b * a.conj()).arg();
    }
    let winding_number = (total_arg / TAU).round() as i64;
    let arg_integrality = (total_arg - winding_number as f64 * TAU).abs();

    // Interior polar grid: 7 rings of 32 points plus the center.
    let mut min_modulus = f64::INFINITY;
    let mut eval_error_bound = 0.0;
    let mut consider = |value: Complex64, bound: f64| {
        let norm = value.norm();
        if norm < min_modulus {
            min_modulus = norm;
            eval_error_bound = bound;
        }
    };
    for &(v, b) in &boundary {
        consider(v, b);
    }
    let interior: Vec<(Complex64, f64)> = (0..7u32 * 32 + 1)
        .into_par_iter()
        .map(|idx| {
            let s = if idx == 0 {
                center
            } else {
                let ring = ((idx - 1) / 32 + 1) as f64;
                let theta = TAU * ((idx - 1) % 32) as f64 / 32.0;
                center + Complex64::from_polar(radius * ring / 8.0, theta)
            };
            disc.eval(n, s)
        })
        .collect();
    for &(v, b) in &interior {
        consider(v, b);
    }

    PerNCertificate {
        n,
        min_modulus,
        eval_error_bound,
        winding_number,
        boundary_points: m,
        arg_integrality,
        capped,
    }
}

/// One row of the `|F|` sweep grid.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub sigma: f64,
    pub t: f64,
    /// `|F|` by the gamma-continued formula.
    pub f_modulus_gamma: f64,
    /// `|F(s)|_N` at the first schedule endpoint.
    pub f_approx_n1: f64,
    /// `|F(s)|_N` at the last schedule endpoint.
    pub f_approx_n2: f64,
    /// Plain same-index ratio `|H_N2(s)/H_N2(1-s)|`.
    pub plain_ratio_n2: f64,
    /// "left", "right" or "none" per the region predicate.
    pub region_flag: &'static str,
    /// "above-t0" or "below-t0" relative to the Saidak-Zvengrowski height.
    pub regime_flag: &'static str,
}

/// The sweep table plus the schedule endpoints it used.
#[derive(Debug, Clone, Serialize)]
pub struct SweepTable {
    pub n1: u64,
    pub n2: u64,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// Exact CSV layout:
    /// `sigma,t,f_modulus_gamma,f_approx_N1,f_approx_N2,plain_ratio_N2,region_flag,regime_flag`.
    pub fn write_csv(&self, mut w: impl IoWrite) -> Result<()> {
        writeln!(
            w,
            "sigma,t,f_modulus_gamma,f_approx_N1,f_approx_N2,plain_ratio_N2,region_flag,regime_flag"
        )?;
        for r in &self.rows {
            writeln!(
                w,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{},{}",
                r.sigma,
                r.t,
                r.f_modulus_gamma,
                r.f_approx_n1,
                r.f_approx_n2,
                r.plain_ratio_n2,
                r.region_flag,
                r.regime_flag
            )?;
        }
        Ok(())
    }
}

fn grid_1d(min: f64, max: f64, step: f64) -> Vec<f64> {
    let mut points = Vec::new();
    let mut k = 0u64;
    loop {
        let v = min + k as f64 * step;
        if v > max + step * 1e-6 {
            break;
        }
        points.push(v);
        k += 1;
    }
    points
}

/// Sweep `|F|` and its approximants over a strip grid. Evaluation failures
/// are recorded per cell (`inf` for vanishing denominators, `NaN`
/// otherwise), never fatal.
pub fn sweep_f_modulus(
    sigma_range: (f64, f64),
    t_range: (f64, f64),
    step: f64,
    schedule: &[u64],
) -> Result<SweepTable> {
    let (sigma_min, sigma_max) = sigma_range;
    let (t_min, t_max) = t_range;
    if !(sigma_min > 0.0 && sigma_min <= sigma_max && sigma_max < 1.0) {
        return Err(Error::Domain(format!(
            "sigma range [{sigma_min}, {sigma_max}] must lie inside (0, 1)"
        )));
    }
    if !(t_min <= t_max) || !t_min.is_finite() || !t_max.is_finite() {
        return Err(Error::Domain(format!("bad t range [{t_min}, {t_max}]")));
    }
    if !(step > 0.0) {
        return Err(Error::Domain(format!("step must be positive, got {step}")));
    }
    if schedule.is_empty() {
        return Err(Error::Domain("schedule must be nonempty".into()));
    }
    let n1 = schedule[0];
    let n2 = *schedule.last().unwrap();

    let sigmas = grid_1d(sigma_min, sigma_max, step);
    let ts = grid_1d(t_min, t_max, step);
    let table = LogTable::new(n2.max(4));
    let t0 = saidak_zvengrowski_t0();

    let cells: Vec<(f64, f64)> = sigmas
        .iter()
        .flat_map(|&sg| ts.iter().map(move |&t| (sg, t)))
        .collect();

    let rows: Vec<SweepRow> = cells
        .par_iter()
        .map(|&(sigma, t)| sweep_cell(sigma, t, n1, n2, t0, &table))
        .collect();

    Ok(SweepTable { n1, n2, rows })
}

fn sweep_cell(sigma: f64, t: f64, n1: u64, n2: u64, t0: f64, table: &LogTable) -> SweepRow {
    let s = Complex64::new(sigma, t);
    let one_minus_s = Complex64::new(1.0, 0.0) - s;

    let f_modulus_gamma = match f_ratio_continued(s) {
        Ok(r) => r.value.norm(),
        Err(_) => f64::NAN,
    };

    let approx = |n: u64| -> f64 {
        let num_scale = match f_ratio_continued(s) {
            Ok(r) => r.value.norm(),
            Err(_) => return f64::NAN,
        };
        let den_scale = match f_ratio_continued(one_minus_s) {
            Ok(r) => r.value.norm(),
            Err(_) => return f64::NAN,
        };
        let fi = (num_scale.powf(-1.0 / (2.0 * sigma)) * (n as f64).powf(1.0 - sigma)).ceil()
            as u64;
        let gi = (den_scale.powf(-1.0 / (2.0 * (1.0 - sigma)))
            * (n as f64).powf(sigma))
        .ceil() as u64;
        let (num, _) = h_partial_sum_with_table(table, fi.max(1), s);
        let (den, _) = h_partial_sum_with_table(table, gi.max(1), one_minus_s);
        let dn = den.norm();
        if dn < 1e-300 {
            f64::INFINITY
        } else {
            num.norm() / dn
        }
    };
    let f_approx_n1 = approx(n1);
    let f_approx_n2 = approx(n2);

    let (pn, _) = h_partial_sum_with_table(table, n2, s);
    let (pd, _) = h_partial_sum_with_table(table, n2, one_minus_s);
    let plain_ratio_n2 = if pd.norm() < 1e-300 {
        f64::INFINITY
    } else {
        pn.norm() / pd.norm()
    };

    let region_flag = match region_predicate(s) {
        Ok(v) if v.in_left_region => "left",
        Ok(v) if v.in_right_region => "right",
        Ok(_) => "none",
        Err(_) => "none",
    };
    let regime_flag = if t.abs() > t0 { "above-t0" } else { "below-t0" };

    SweepRow {
        sigma,
        t,
        f_modulus_gamma,
        f_approx_n1,
        f_approx_n2,
        plain_ratio_n2,
        region_flag,
        regime_flag,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn zero_record(ordinate: f64) -> ZeroRecord {
        ZeroRecord {
            index: 1,
            ordinate,
            refinement_tolerance: 1e-9,
            residual: 1e-10,
        }
    }

    #[test]
    fn t0_matches_reported_modulus() {
        assert_relative_eq!(sz_modulus(), 6.418, epsilon = 1e-3);
        let t0 = saidak_zvengrowski_t0();
        assert!((0.25 + t0 * t0).sqrt() - sz_modulus() < 1e-12);
    }

    #[test]
    fn region_examples() {
        let v = region_predicate(c(0.25, 3.0)).unwrap();
        assert!(v.in_left_region);
        assert!(v.f_modulus < 1.0);
        assert!(v.consistent);

        let v = region_predicate(c(0.25, 7.0)).unwrap();
        assert!(!v.in_left_region);

        let v = region_predicate(c(0.5, 3.0)).unwrap();
        assert!(!v.in_left_region && !v.in_right_region);

        assert!(region_predicate(c(1.3, 0.5)).is_err());
    }

    #[test]
    fn f_modulus_check_at_first_zero() {
        let rep = check_f_modulus(&zero_record(14.134725141734693), 1e-8).unwrap();
        assert!(rep.pass, "deviation {:?}", rep.f_modulus_deviation);
    }

    #[test]
    fn f_modulus_off_line_point_deviates() {
        // A hypothetical off-line "zero" would need |F| = 1 there; it is not.
        let s = c(0.6, 14.134725141734693);
        let f = f_ratio_continued(s).unwrap();
        assert!((f.value.norm() - 1.0).abs() > 1e-3);
    }

    #[test]
    fn derivative_target_reciprocal_identity() {
        let s0 = c(0.6, 20.0);
        let prod = derivative_ratio_target(s0) * derivative_ratio_target(c(1.0, 0.0) - s0);
        assert_relative_eq!(prod, 1.0, epsilon = 1e-12);
        // On the line the target collapses to 1.
        assert_relative_eq!(derivative_ratio_target(c(0.5, 33.0)), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn derivative_ratio_at_first_zero() {
        let rep =
            check_derivative_ratio(&zero_record(14.134725141734693), 1, &[100, 1000], 1e-3)
                .unwrap();
        assert!(!rep.inconclusive);
        assert!(rep.pass, "ratio {:?}", rep.derivative_ratio);
        assert_eq!(rep.partial_ratio_samples.as_ref().unwrap().len(), 2);
    }

    #[test]
    fn derivative_ratio_rejects_m_zero() {
        assert!(check_derivative_ratio(&zero_record(14.2), 0, &[100], 1e-3).is_err());
    }

    #[test]
    fn certify_small_disc_h_n() {
        let cert = certify_disc(c(0.75, 20.0), 0.1, Evaluator::HN, None, &[100, 400], 64)
            .unwrap();
        assert_eq!(cert.verdict, Verdict::CertifiedNonvanishing, "{cert:?}");
        for p in &cert.per_n {
            assert_eq!(p.winding_number, 0);
            assert!(p.arg_integrality < WINDING_INTEGRALITY_TOL);
        }
    }

    #[test]
    fn certify_trivial_combination_matches_plain() {
        let n_values = [100u64, 400];
        let plain =
            certify_disc(c(0.75, 20.0), 0.1, Evaluator::HN, None, &n_values, 64).unwrap();
        let params = CombinationParams {
            alphas: vec![c(1.0, 0.0)],
            offsets: vec![1],
            perturbation: c(0.0, 0.0),
        };
        let combo = certify_disc(
            c(0.75, 20.0),
            0.1,
            Evaluator::Combination,
            Some(&params),
            &n_values,
            64,
        )
        .unwrap();
        assert_eq!(plain.verdict, combo.verdict);
        assert_eq!(plain.per_n, combo.per_n);
    }

    #[test]
    fn certify_arithmetic_mean_disc() {
        let cert = certify_disc(
            c(0.75, 20.0),
            0.1,
            Evaluator::Combination,
            Some(&CombinationParams::arithmetic_mean()),
            &[100],
            64,
        )
        .unwrap();
        assert_eq!(cert.verdict, Verdict::CertifiedNonvanishing);
    }

    #[test]
    fn certify_rejects_straddling_disc() {
        assert!(certify_disc(c(0.5, 20.0), 0.1, Evaluator::HN, None, &[100], 64).is_err());
        assert!(certify_disc(c(0.55, 20.0), 0.1, Evaluator::HN, None, &[100], 64).is_err());
    }

    #[test]
    fn sweep_critical_line_column_is_one() {
        let table = sweep_f_modulus((0.5, 0.5), (9.0, 9.0), 1.0, &[100, 1000]).unwrap();
        assert_eq!(table.rows.len(), 1);
        let row = &table.rows[0];
        assert!((row.f_modulus_gamma - 1.0).abs() < 1e-12);
        assert_eq!(row.f_approx_n1, 1.0);
        assert_eq!(row.plain_ratio_n2, 1.0);
        assert_eq!(row.region_flag, "none");
        assert_eq!(row.regime_flag, "above-t0");
    }

    #[test]
    fn sweep_row_count_and_csv_shape() {
        let table = sweep_f_modulus((0.2, 0.7), (1.0, 2.0), 0.5, &[100, 200]).unwrap();
        // sigma in {0.2, 0.7}, t in {1.0, 1.5, 2.0}.
        assert_eq!(table.rows.len(), 2 * 3);
        let mut buf = Vec::new();
        table.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "sigma,t,f_modulus_gamma,f_approx_N1,f_approx_N2,plain_ratio_N2,region_flag,regime_flag"
        );
        assert_eq!(lines.count(), 6);
    }
}
