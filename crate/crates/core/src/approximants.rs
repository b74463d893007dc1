//! Ceiling-indexed ratio approximants.
//!
//! The index map sends a positive scale `a` and outer index `N` to
//! `ceil(a^(-1/(2 sigma)) N^(1-sigma))`; ratios of `H` partial sums indexed
//! this way at `s` and `1-s` converge to `|F(s)|` off the zeros and to
//! `sqrt(A/B)` at zeros when the scales are constants `A`, `B`. The limit
//! functional is estimated over a geometric `N`-schedule with one Richardson
//! refinement; the monotone-subsequence probe records (but never asserts)
//! whether a common monotone subsequence exists on a disc stencil.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::f_ratio_continued;
use crate::types::ensure_finite;
use crate::zeta::h_partial_sum;

/// How the index scale is obtained at an evaluation point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum IndexScale {
    /// A fixed positive constant.
    Constant(f64),
    /// Evaluate `|F|` at the point through the gamma-continued formula
    /// (valid at zeros, where the direct ratio is 0/0).
    FRatioModulus,
}

/// Ceiling or ceiling-plus-one indexing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IndexVariant {
    Ceiling,
    CeilingPlusOne,
}

/// An index rule: scale source plus ceiling variant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IndexRule {
    pub scale: IndexScale,
    pub variant: IndexVariant,
}

impl IndexRule {
    pub fn constant(a: f64) -> Self {
        Self {
            scale: IndexScale::Constant(a),
            variant: IndexVariant::Ceiling,
        }
    }

    pub fn f_modulus() -> Self {
        Self {
            scale: IndexScale::FRatioModulus,
            variant: IndexVariant::Ceiling,
        }
    }

    pub fn plus_one(mut self) -> Self {
        self.variant = IndexVariant::CeilingPlusOne;
        self
    }
}

fn check_strip(s: Complex64) -> Result<()> {
    if s.re <= 0.0 || s.re >= 1.0 {
        return Err(Error::Domain(format!(
            "index rules require 0 < Re(s) < 1, got {}",
            s.re
        )));
    }
    Ok(())
}

/// Resolve the scale value of a rule at an evaluation point.
fn resolve_scale(rule: &IndexRule, point: Complex64) -> Result<f64> {
    match rule.scale {
        IndexScale::Constant(a) => {
            if !(a > 0.0) || !a.is_finite() {
                return Err(Error::Domain(format!("index scale must be positive, got {a}")));
            }
            Ok(a)
        }
        IndexScale::FRatioModulus => Ok(f_ratio_continued(point)?.value.norm()),
    }
}

fn raw_index(scale: f64, variant: IndexVariant, n: u64, sigma: f64) -> u64 {
    let x = scale.powf(-1.0 / (2.0 * sigma)) * (n as f64).powf(1.0 - sigma);
    let base = (x.ceil() as u64).max(1);
    match variant {
        IndexVariant::Ceiling => base,
        IndexVariant::CeilingPlusOne => base + 1,
    }
}

/// The ceiling index `ceil(scale^(-1/(2 sigma)) N^(1-sigma))`
/// (plus one for the second variant); always at least 1.
pub fn index_f(rule: &IndexRule, n: u64, s: Complex64) -> Result<u64> {
    ensure_finite(s)?;
    check_strip(s)?;
    let scale = resolve_scale(rule, s)?;
    Ok(raw_index(scale, rule.variant, n, s.re))
}

/// Modulus of the indexed partial-sum ratio:
/// `|H_{f_num(N,s)}(s) / H_{f_den(N,1-s)}(1-s)|`.
pub fn ratio_approximant(
    n: u64,
    s: Complex64,
    num_rule: &IndexRule,
    den_rule: &IndexRule,
) -> Result<f64> {
    ensure_finite(s)?;
    check_strip(s)?;
    let one_minus_s = Complex64::new(1.0, 0.0) - s;
    let num_index = raw_index(resolve_scale(num_rule, s)?, num_rule.variant, n, s.re);
    let den_index = raw_index(
        resolve_scale(den_rule, one_minus_s)?,
        den_rule.variant,
        n,
        one_minus_s.re,
    );
    ratio_from_indices(n, s, num_index, den_index)
}

fn ratio_from_indices(n: u64, s: Complex64, num_index: u64, den_index: u64) -> Result<f64> {
    let one_minus_s = Complex64::new(1.0, 0.0) - s;
    let num = h_partial_sum(num_index, s)?;
    let den = h_partial_sum(den_index, one_minus_s)?;
    let den_norm = den.norm();
    if den_norm < 1e-300 {
        return Err(Error::VanishingDenominator {
            n,
            num_index,
            den_index,
        });
    }
    Ok(num.norm() / den_norm)
}

/// Direction of a sample sequence; differences within the tie tolerance
/// count as ties and break toward `NonMonotone`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Trend {
    Increasing,
    Decreasing,
    NonMonotone,
}

/// Tie tolerance for trend classification: floating noise must not
/// fabricate monotonicity.
pub const TREND_TIE_TOL: f64 = 1e-13;

/// Samples of the ratio approximant along an `N`-schedule, the extrapolated
/// limit, and the observed trend.
#[derive(Debug, Clone, Serialize)]
pub struct LimitEstimate {
    pub samples: Vec<(u64, f64)>,
    pub extrapolated: f64,
    pub trend: Trend,
}

/// The default geometric schedule `{1000 * 2^k}, k = 0..=10`.
pub fn default_schedule() -> Vec<u64> {
    (0..=10).map(|k| 1000u64 << k).collect()
}

fn classify_trend(values: &[f64]) -> Trend {
    let mut up = true;
    let mut down = true;
    for w in values.windows(2) {
        let d = w[1] - w[0];
        if d <= TREND_TIE_TOL {
            up = false;
        }
        if d >= -TREND_TIE_TOL {
            down = false;
        }
    }
    if up {
        Trend::Increasing
    } else if down {
        Trend::Decreasing
    } else {
        Trend::NonMonotone
    }
}

/// One Richardson step on the last three samples, assuming a roughly
/// geometric schedule; falls back to the median of the trailing samples when
/// the empirical order fit is invalid (oscillating tails).
fn extrapolate(samples: &[(u64, f64)]) -> f64 {
    let len = samples.len();
    let y1 = samples[len - 3].1;
    let y2 = samples[len - 2].1;
    let y3 = samples[len - 1].1;
    let d1 = y1 - y2;
    let d2 = y2 - y3;
    if d1 != 0.0 && d2 != 0.0 && d1.signum() == d2.signum() {
        let r = d1 / d2;
        if r.is_finite() && r > 1.0 + 1e-9 {
            let l = y3 + d2 * d2 / (d1 - d2);
            if l.is_finite() && l > 0.0 {
                return l;
            }
        }
    }
    let tail_len = len.min(5);
    let mut tail: Vec<f64> = samples[len - tail_len..].iter().map(|p| p.1).collect();
    tail.sort_by(|a, b| a.partial_cmp(b).unwrap());
    tail[tail_len / 2]
}

/// Evaluate the ratio approximant along a schedule and estimate the limit.
///
/// `use-|F|` scales are resolved once per point (at `s` for the numerator
/// rule, at `1-s` for the denominator rule) before the schedule runs.
pub fn estimate_limit(
    s: Complex64,
    num_rule: &IndexRule,
    den_rule: &IndexRule,
    schedule: &[u64],
) -> Result<LimitEstimate> {
    ensure_finite(s)?;
    check_strip(s)?;
    if schedule.len() < 4 || schedule.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain(
            "schedule must be strictly increasing with length >= 4".into(),
        ));
    }
    let one_minus_s = Complex64::new(1.0, 0.0) - s;
    let num_scale = resolve_scale(num_rule, s)?;
    let den_scale = resolve_scale(den_rule, one_minus_s)?;
    let mut samples = Vec::with_capacity(schedule.len());
    for &n in schedule {
        let num_index = raw_index(num_scale, num_rule.variant, n, s.re);
        let den_index = raw_index(den_scale, den_rule.variant, n, one_minus_s.re);
        samples.push((n, ratio_from_indices(n, s, num_index, den_index)?));
    }
    let values: Vec<f64> = samples.iter().map(|p| p.1).collect();
    let trend = classify_trend(&values);
    let extrapolated = extrapolate(&samples);
    Ok(LimitEstimate {
        samples,
        extrapolated,
        trend,
    })
}

/// Report of the monotone-subsequence probe on a 9-point disc stencil.
#[derive(Debug, Clone, Serialize)]
pub struct MonotonicityReport {
    pub center: Complex64,
    pub radius: f64,
    pub schedule: Vec<u64>,
    pub stencil: Vec<Complex64>,
    /// `|F(s)|_N` samples, one row per stencil point.
    pub samples_f: Vec<Vec<f64>>,
    /// `|F_m(s)|_N` samples (ceiling-plus-one numerator), same layout.
    pub samples_m: Vec<Vec<f64>>,
    /// Longest schedule-index chain along which every stencil sequence
    /// (both variants) strictly increases.
    pub longest_increasing: Vec<usize>,
    /// Same for strictly decreasing.
    pub longest_decreasing: Vec<usize>,
    /// Whether a common monotone subsequence of meaningful length exists
    /// (trivially true for one-point schedules). Recorded as data; the
    /// underlying convergence hypothesis is never asserted.
    pub uniform_direction_exists: bool,
}

/// Default stencil radius for the probe.
pub const DEFAULT_PROBE_RADIUS: f64 = 1e-3;

fn stencil_points(center: Complex64, radius: f64) -> Vec<Complex64> {
    let d = radius / std::f64::consts::SQRT_2;
    vec![
        center,
        center + Complex64::new(radius, 0.0),
        center - Complex64::new(radius, 0.0),
        center + Complex64::new(0.0, radius),
        center - Complex64::new(0.0, radius),
        center + Complex64::new(d, d),
        center + Complex64::new(d, -d),
        center + Complex64::new(-d, d),
        center + Complex64::new(-d, -d),
    ]
}

/// Longest common strict chain over all sample rows, in the given direction
/// (+1 increasing, -1 decreasing). O(L^2) DP; L is the schedule length.
fn longest_common_chain(rows: &[&[f64]], direction: f64) -> Vec<usize> {
    let len = rows.first().map_or(0, |r| r.len());
    if len == 0 {
        return Vec::new();
    }
    let compatible = |i: usize, j: usize| {
        rows.iter()
            .all(|row| direction * (row[j] - row[i]) > TREND_TIE_TOL)
    };
    let mut best_len = vec![1usize; len];
    let mut prev = vec![usize::MAX; len];
    for j in 1..len {
        for i in 0..j {
            if compatible(i, j) && best_len[i] + 1 > best_len[j] {
                best_len[j] = best_len[i] + 1;
                prev[j] = i;
            }
        }
    }
    let (mut idx, _) = best_len
        .iter()
        .enumerate()
        .max_by_key(|(_, &l)| l)
        .unwrap();
    let mut chain = vec![idx];
    while prev[idx] != usize::MAX {
        idx = prev[idx];
        chain.push(idx);
    }
    chain.reverse();
    chain
}

/// Probe monotone convergence of `|F(s)|_N` and `|F_m(s)|_N` on a 9-point
/// stencil around `s`. Records the longest schedule subsequence along which
/// all 18 sample sequences move strictly in one common direction.
pub fn monotonicity_probe(
    s: Complex64,
    radius: f64,
    schedule: &[u64],
) -> Result<MonotonicityReport> {
    ensure_finite(s)?;
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::Domain(format!("radius must be positive, got {radius}")));
    }
    if s.re - radius <= 0.5 || s.re + radius >= 1.0 {
        return Err(Error::Domain(format!(
            "probe disc must stay in the open right half strip: center {} radius {radius}",
            s
        )));
    }
    if schedule.is_empty() || schedule.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain(
            "schedule must be nonempty and strictly increasing".into(),
        ));
    }

    let stencil = stencil_points(s, radius);
    let mut samples_f = Vec::with_capacity(stencil.len());
    let mut samples_m = Vec::with_capacity(stencil.len());
    for &p in &stencil {
        let one_minus_p = Complex64::new(1.0, 0.0) - p;
        let num_scale = f_ratio_continued(p)?.value.norm();
        let den_scale = f_ratio_continued(one_minus_p)?.value.norm();
        let mut row_f = Vec::with_capacity(schedule.len());
        let mut row_m = Vec::with_capacity(schedule.len());
        for &n in schedule {
            let fi = raw_index(num_scale, IndexVariant::Ceiling, n, p.re);
            let mi = raw_index(num_scale, IndexVariant::CeilingPlusOne, n, p.re);
            debug_assert_eq!(mi, fi + 1);
            let gi = raw_index(den_scale, IndexVariant::Ceiling, n, one_minus_p.re);
            row_f.push(ratio_from_indices(n, p, fi, gi)?);
            row_m.push(ratio_from_indices(n, p, mi, gi)?);
        }
        samples_f.push(row_f);
        samples_m.push(row_m);
    }

    let rows: Vec<&[f64]> = samples_f
        .iter()
        .chain(samples_m.iter())
        .map(|r| r.as_slice())
        .collect();
    let longest_increasing = longest_common_chain(&rows, 1.0);
    let longest_decreasing = longest_common_chain(&rows, -1.0);
    let uniform_direction_exists = if schedule.len() == 1 {
        true
    } else {
        longest_increasing.len().max(longest_decreasing.len()) >= 2
    };

    Ok(MonotonicityReport {
        center: s,
        radius,
        schedule: schedule.to_vec(),
        stencil,
        samples_f,
        samples_m,
        longest_increasing,
        longest_decreasing,
        uniform_direction_exists,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn index_examples() {
        let r = IndexRule::constant(1.0);
        assert_eq!(index_f(&r, 100, c(0.5, 3.0)).unwrap(), 10);
        let r = IndexRule::constant(4.0);
        assert_eq!(index_f(&r, 100, c(0.5, 3.0)).unwrap(), 3);
    }

    #[test]
    fn plus_one_variant_differs_by_one() {
        let base = IndexRule::constant(1.7);
        let plus = base.plus_one();
        for n in [10u64, 100, 1000, 12345] {
            let s = c(0.37, 2.0);
            let a = index_f(&base, n, s).unwrap();
            let b = index_f(&plus, n, s).unwrap();
            assert_eq!(b, a + 1);
        }
    }

    #[test]
    fn index_domain_and_scale_errors() {
        let r = IndexRule::constant(1.0);
        assert!(index_f(&r, 10, c(1.2, 0.0)).is_err());
        let bad = IndexRule::constant(-2.0);
        assert!(index_f(&bad, 10, c(0.5, 1.0)).is_err());
    }

    #[test]
    fn critical_line_ratio_is_exactly_one() {
        let r = IndexRule::constant(2.5);
        for n in [100u64, 1000, 65536] {
            let v = ratio_approximant(n, c(0.5, 21.3), &r, &r).unwrap();
            assert_eq!(v, 1.0);
        }
    }

    #[test]
    fn estimate_limit_on_critical_line_is_constant_one() {
        let r = IndexRule::constant(1.0);
        let schedule: Vec<u64> = vec![1000, 2000, 4000, 8000, 16000];
        let est = estimate_limit(c(0.5, 10.0), &r, &r, &schedule).unwrap();
        assert!(est.samples.iter().all(|&(_, v)| v == 1.0));
        assert_eq!(est.trend, Trend::NonMonotone);
        assert_eq!(est.extrapolated, 1.0);
    }

    #[test]
    fn estimate_limit_rejects_bad_schedule() {
        let r = IndexRule::constant(1.0);
        assert!(estimate_limit(c(0.6, 5.0), &r, &r, &[10, 20, 30]).is_err());
        assert!(estimate_limit(c(0.6, 5.0), &r, &r, &[10, 20, 20, 40]).is_err());
    }

    #[test]
    fn default_schedule_shape() {
        let s = default_schedule();
        assert_eq!(s.len(), 11);
        assert_eq!(s[0], 1000);
        assert_eq!(s[10], 1_024_000);
    }

    #[test]
    fn probe_single_point_schedule_is_trivially_monotone() {
        let rep = monotonicity_probe(c(0.75, 25.0), 1e-3, &[1000]).unwrap();
        assert!(rep.uniform_direction_exists);
        assert_eq!(rep.stencil.len(), 9);
        assert_eq!(rep.samples_f[0].len(), 1);
    }

    #[test]
    fn probe_rejects_disc_leaving_right_half() {
        assert!(monotonicity_probe(c(0.5005, 25.0), 1e-2, &[1000]).is_err());
        assert!(monotonicity_probe(c(0.999, 25.0), 1e-2, &[1000]).is_err());
    }

    #[test]
    fn trend_classifier_tie_breaks_to_non_monotone() {
        assert_eq!(classify_trend(&[1.0, 1.0, 1.0]), Trend::NonMonotone);
        assert_eq!(classify_trend(&[1.0, 2.0, 3.0]), Trend::Increasing);
        assert_eq!(classify_trend(&[3.0, 2.0, 1.0]), Trend::Decreasing);
        assert_eq!(classify_trend(&[1.0, 2.0, 1.5]), Trend::NonMonotone);
    }
}
