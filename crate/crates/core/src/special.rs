//! Complex log-gamma, the completed function Lambda, the ratio
//! `F(s) = zeta(s)/zeta(1-s)` in both its direct and gamma-continued forms,
//! and the gamma-ratio modulus bound on the shifted strip.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::types::{ensure_finite, EvalResult};
use crate::zeta::{self, TruncationPlan, SIGMA_MIN};

/// ln(pi).
pub const LN_PI: f64 = 1.144_729_885_849_400_2;

const EPS: f64 = f64::EPSILON;

/// Stirling coefficients B_{2k} / (2k (2k-1)) for k = 1..=13.
/// Terms k = 1..=12 enter the series; k = 13 feeds the error bound.
const STIRLING: [f64; 13] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1_260.0,
    -1.0 / 1_680.0,
    1.0 / 1_188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3_617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
    854_513.0 / 63_756.0,
    -236_364_091.0 / 1_506_960.0,
    8_553_103.0 / 3_900.0,
];

/// Radius beyond which the Stirling series is applied directly.
const STIRLING_RADIUS: f64 = 10.0;

/// Principal-branch log-gamma by the Stirling asymptotic series, after
/// shifting the argument up by the recurrence until it is safely inside the
/// series' region of accuracy (`|z| >= 10` and `Re(z) >= 0`; the real-part
/// condition keeps the remainder factor bounded near the negative axis).
pub fn log_gamma(s: Complex64) -> Result<EvalResult> {
    ensure_finite(s)?;
    if s.im == 0.0 && s.re <= 0.0 && (s.re - s.re.round()).abs() < 1e-12 {
        return Err(Error::GammaPole(s));
    }

    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    let mut shift_norm = 0.0;
    while z.re < 0.0 || z.norm() < STIRLING_RADIUS {
        let ln_z = z.ln();
        shift -= ln_z;
        shift_norm += ln_z.norm();
        z += 1.0;
    }

    // (z - 1/2) ln z - z + ln(2 pi)/2 + sum B_2k / (2k(2k-1) z^(2k-1))
    let ln_z = z.ln();
    let half_ln_two_pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    let mut value = (z - 0.5) * ln_z - z + half_ln_two_pi + shift;
    let z2_inv = 1.0 / (z * z);
    let mut zpow = 1.0 / z; // z^-(2k-1)
    for coeff in &STIRLING[..12] {
        value += *coeff * zpow;
        zpow *= z2_inv;
    }
    let omitted = STIRLING[12].abs() * zpow.norm();

    // Remainder factor sec(arg(z)/2)^(2K+2); Re(z) >= 0 keeps it <= 2^13.
    let sec = 1.0 / (0.5 * z.arg()).cos();
    let bound = omitted * sec.powi(26)
        + 2.0 * EPS * (shift_norm + value.norm() + z.norm() + 1.0);
    Ok(EvalResult::new(value, bound))
}

/// `Lambda(s) = pi^(-s/2) Gamma(s/2) zeta(s)`, from a supplied zeta value.
pub fn lambda_completed(s: Complex64, zeta_eval: EvalResult) -> Result<EvalResult> {
    ensure_finite(s)?;
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    if (s - zero).norm() < 1e-12 || (s - one).norm() < 1e-12 {
        return Err(Error::Pole { what: "Lambda", s });
    }
    let lg = log_gamma(0.5 * s)?;
    let prefactor = (lg.value - 0.5 * s * LN_PI).exp();
    let value = prefactor * zeta_eval.value;
    let rel_fp = EPS * (0.6 * s.norm() + 8.0);
    let bound = prefactor.norm() * zeta_eval.abs_error_bound
        + value.norm() * (lg.abs_error_bound + rel_fp);
    Ok(EvalResult::new(value, bound))
}

/// The ratio `F(s) = zeta(s)/zeta(1-s)` by direct evaluation of both sides.
///
/// Fails with a near-zero-denominator error when `|zeta(1-s)|` is within ten
/// times its own error bound of zero; callers should switch to
/// [`f_ratio_continued`] there.
pub fn f_ratio_direct(s: Complex64) -> Result<EvalResult> {
    ensure_finite(s)?;
    if s.re < SIGMA_MIN || s.re > 1.0 - SIGMA_MIN {
        return Err(Error::Domain(format!(
            "f_ratio_direct requires {SIGMA_MIN} <= Re(s) <= {}, got {}",
            1.0 - SIGMA_MIN,
            s.re
        )));
    }
    let one_minus_s = Complex64::new(1.0, 0.0) - s;
    let num = zeta::zeta_euler_maclaurin(s, &TruncationPlan::auto(s))?;
    let den = zeta::zeta_euler_maclaurin(one_minus_s, &TruncationPlan::auto(one_minus_s))?;
    let den_norm = den.value.norm();
    if den_norm < 10.0 * den.abs_error_bound {
        return Err(Error::NearZeroDenominator {
            modulus: den_norm,
            bound: den.abs_error_bound,
        });
    }
    let value = num.value / den.value;
    let bound = 1.2 * (num.abs_error_bound + value.norm() * den.abs_error_bound) / den_norm
        + 4.0 * EPS * value.norm();
    Ok(EvalResult::new(value, bound))
}

/// The analytic continuation of `F` across zeta zeros:
/// `F(s) = pi^(s-1/2) Gamma((1-s)/2) / Gamma(s/2)`, valid in the open strip
/// and never zero there.
pub fn f_ratio_continued(s: Complex64) -> Result<EvalResult> {
    ensure_finite(s)?;
    if s.re <= 0.0 || s.re >= 1.0 {
        return Err(Error::Domain(format!(
            "f_ratio_continued requires 0 < Re(s) < 1, got {}",
            s.re
        )));
    }
    let one_minus_s = Complex64::new(1.0, 0.0) - s;
    let lg_num = log_gamma(0.5 * one_minus_s)?;
    let lg_den = log_gamma(0.5 * s)?;
    let exponent = (s - 0.5) * LN_PI + lg_num.value - lg_den.value;
    let value = exponent.exp();
    let rel_fp = EPS * (0.6 * s.norm() + 8.0);
    let bound =
        value.norm() * (lg_num.abs_error_bound + lg_den.abs_error_bound + rel_fp);
    Ok(EvalResult::new(value, bound))
}

/// The gamma-ratio modulus bound `|(1+s)/2|^(1/2-sigma)`, valid for
/// `-1/2 <= sigma <= 1/2`:
/// `|Gamma((1-s)/2) / Gamma(s/2)| <= |(1+s)/2|^(1/2-sigma)`.
pub fn gamma_ratio_bound(s: Complex64) -> Result<f64> {
    ensure_finite(s)?;
    if !(-0.5..=0.5).contains(&s.re) {
        return Err(Error::Domain(format!(
            "gamma_ratio_bound requires -1/2 <= Re(s) <= 1/2, got {}",
            s.re
        )));
    }
    let base = (0.5 * (s + 1.0)).norm();
    Ok(base.powf(0.5 - s.re))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn log_gamma_at_one_and_five() {
        let r = log_gamma(c(1.0, 0.0)).unwrap();
        assert!(r.value.norm() <= r.abs_error_bound.max(1e-14));
        let r = log_gamma(c(5.0, 0.0)).unwrap();
        assert_relative_eq!(r.value.re, 24.0f64.ln(), epsilon = 1e-13);
        assert!(r.value.im.abs() < 1e-13);
    }

    #[test]
    fn log_gamma_pole_detection() {
        assert!(matches!(log_gamma(c(0.0, 0.0)), Err(Error::GammaPole(_))));
        assert!(matches!(log_gamma(c(-3.0, 0.0)), Err(Error::GammaPole(_))));
        assert!(log_gamma(c(-3.5, 0.0)).is_ok());
    }

    #[test]
    fn log_gamma_bound_is_tight_at_moderate_height() {
        let r = log_gamma(c(0.25, 7.0673625)).unwrap();
        assert!(r.abs_error_bound <= 1e-12, "bound {}", r.abs_error_bound);
    }

    #[test]
    fn lambda_pole_rejection() {
        let z = EvalResult::new(c(1.0, 0.0), 0.0);
        assert!(matches!(
            lambda_completed(c(0.0, 0.0), z),
            Err(Error::Pole { .. })
        ));
        assert!(matches!(
            lambda_completed(c(1.0, 0.0), z),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn lambda_at_two_is_pi_over_six() {
        let s = c(2.0, 0.0);
        let zeta = zeta::zeta_euler_maclaurin(s, &TruncationPlan::auto(s)).unwrap();
        let lam = lambda_completed(s, zeta).unwrap();
        assert_relative_eq!(lam.value.re, std::f64::consts::PI / 6.0, epsilon = 1e-10);
        assert!(lam.value.im.abs() <= lam.abs_error_bound);
    }

    #[test]
    fn lambda_real_on_critical_line() {
        let s = c(0.5, 10.0);
        let zeta = zeta::zeta_euler_maclaurin(s, &TruncationPlan::auto(s)).unwrap();
        let lam = lambda_completed(s, zeta).unwrap();
        assert!(lam.value.im.abs() <= lam.abs_error_bound);
    }

    #[test]
    fn f_direct_modulus_one_on_line() {
        let r = f_ratio_direct(c(0.5, 9.0)).unwrap();
        assert!((r.value.norm() - 1.0).abs() <= r.abs_error_bound);
    }

    #[test]
    fn f_direct_reciprocal_identity() {
        let s = c(0.3, 7.0);
        let a = f_ratio_direct(s).unwrap();
        let b = f_ratio_direct(Complex64::new(1.0, 0.0) - s).unwrap();
        let prod = a.value * b.value;
        assert!((prod - Complex64::new(1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn f_direct_small_in_left_low_region() {
        let r = f_ratio_direct(c(0.25, 3.0)).unwrap();
        assert!(r.value.norm() < 1.0);
    }

    #[test]
    fn f_continued_modulus_one_on_line() {
        for t in [0.5, 3.0, 14.0, 55.5] {
            let r = f_ratio_continued(c(0.5, t)).unwrap();
            assert!(
                (r.value.norm() - 1.0).abs() < 1e-12,
                "t = {t}: |F| = {}",
                r.value.norm()
            );
        }
    }

    #[test]
    fn f_continued_agrees_with_direct() {
        let s = c(0.3, 7.0);
        let a = f_ratio_direct(s).unwrap();
        let b = f_ratio_continued(s).unwrap();
        assert!((a.value - b.value).norm() <= a.abs_error_bound + b.abs_error_bound);
    }

    #[test]
    fn f_continued_small_in_left_low_region() {
        let r = f_ratio_continued(c(0.25, 3.0)).unwrap();
        assert!(r.value.norm() < 1.0);
    }

    #[test]
    fn f_continued_domain() {
        assert!(matches!(
            f_ratio_continued(c(0.0, 3.0)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            f_ratio_continued(c(1.0, 3.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn gamma_ratio_bound_examples() {
        // Exponent vanishes at sigma = 1/2.
        assert_relative_eq!(gamma_ratio_bound(c(0.5, 5.0)).unwrap(), 1.0);
        // sigma = 0, t = 4: (sqrt(17)/2)^(1/2).
        let expected = (17.0f64.sqrt() / 2.0).sqrt();
        assert_relative_eq!(gamma_ratio_bound(c(0.0, 4.0)).unwrap(), expected, epsilon = 1e-15);
        assert!(matches!(
            gamma_ratio_bound(c(0.7, 1.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn near_zero_denominator_at_a_zero_ordinate() {
        // 1 - s for s near a zero makes the denominator vanish.
        let s = c(0.5, 14.134725141734693);
        match f_ratio_direct(s) {
            Err(Error::NearZeroDenominator { .. }) => {}
            other => panic!("expected near-zero denominator, got {other:?}"),
        }
        // The continued form shrugs it off.
        let r = f_ratio_continued(s).unwrap();
        assert!((r.value.norm() - 1.0).abs() < 1e-12);
    }

}
