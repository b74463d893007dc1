//! Critical-line zero location via sign changes of the real-valued
//! completed function, plus the line-delimited zero catalog.
//!
//! `Lambda(1/2 + it)` is real (up to rounding, which the evaluator checks
//! against its propagated bound), so zeros on the line are bracketed by sign
//! changes on a grid and refined by bisection. Sign changes give robust
//! brackets where `|zeta|` minima do not.

use std::fmt;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::lambda_completed;
use crate::zeta::{zeta_euler_maclaurin, TruncationPlan};

/// A refined zero ordinate on the critical line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    /// Rank by increasing ordinate, 1-based.
    pub index: u64,
    /// Imaginary part t of the zero 1/2 + it.
    pub ordinate: f64,
    /// Bisection bracket width at termination.
    pub refinement_tolerance: f64,
    /// `|zeta(1/2 + it)|` at the refined ordinate, default plan.
    pub residual: f64,
}

/// Non-fatal observations from a scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ScanWarning {
    /// Two sign changes were detected inside one grid cell; the step is too
    /// coarse and a zero could have been missed elsewhere.
    StepTooCoarse { cell_start: f64, cell_end: f64 },
}

impl fmt::Display for ScanWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScanWarning::StepTooCoarse {
                cell_start,
                cell_end,
            } => write!(
                f,
                "step too coarse: two sign changes inside [{cell_start}, {cell_end}]"
            ),
        }
    }
}

/// Result of `scan_and_refine`: refined records plus warnings.
#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub records: Vec<ZeroRecord>,
    pub warnings: Vec<ScanWarning>,
}

/// `Lambda(1/2 + it)` as a real number. The imaginary part is discarded
/// after checking it against the propagated error bound.
pub fn real_lambda_on_line(t: f64) -> Result<f64> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::Domain(format!(
            "real_lambda_on_line requires t >= 0, got {t}"
        )));
    }
    let s = Complex64::new(0.5, t);
    let zeta = zeta_euler_maclaurin(s, &TruncationPlan::auto(s))?;
    let lambda = lambda_completed(s, zeta)?;
    if lambda.value.im.abs() > lambda.abs_error_bound {
        return Err(Error::ImaginaryResidue {
            t,
            imag: lambda.value.im,
            bound: lambda.abs_error_bound,
        });
    }
    Ok(lambda.value.re)
}

/// `|zeta(1/2 + it)|` under the default plan; the catalog residual.
pub fn line_residual(t: f64) -> Result<f64> {
    let s = Complex64::new(0.5, t);
    Ok(zeta_euler_maclaurin(s, &TruncationPlan::auto(s))?.value.norm())
}

fn bisect(mut lo: f64, mut hi: f64, f_lo: f64, tol: f64) -> Result<f64> {
    let mut sign_lo = f_lo.signum();
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = real_lambda_on_line(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == sign_lo {
            lo = mid;
            sign_lo = f_mid.signum();
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Scan `[t_min, t_max]` on a grid of the given step for sign changes of
/// `Lambda(1/2 + it)` and refine each bracket by bisection to width `tol`.
///
/// Cells without a sign change are probed at their midpoint; a sign change
/// hiding in either half is still caught and reported as a step-too-coarse
/// warning.
pub fn scan_and_refine(t_min: f64, t_max: f64, step: f64, tol: f64) -> Result<ScanReport> {
    if !(t_min >= 0.0 && t_min < t_max && t_max.is_finite()) {
        return Err(Error::Domain(format!(
            "invalid scan interval [{t_min}, {t_max}]"
        )));
    }
    if !(step > 0.0 && step <= 0.5) {
        return Err(Error::Domain(format!("step must be in (0, 0.5], got {step}")));
    }
    if !(tol >= 1e-12) {
        return Err(Error::Domain(format!("tol must be >= 1e-12, got {tol}")));
    }

    let n_cells = ((t_max - t_min) / step).ceil() as usize;
    let mut grid: Vec<f64> = (0..=n_cells)
        .map(|k| (t_min + k as f64 * step).min(t_max))
        .collect();
    grid.dedup();

    let values: Vec<f64> = grid
        .par_iter()
        .map(|&t| real_lambda_on_line(t))
        .collect::<Result<Vec<_>>>()?;
    let mids: Vec<f64> = grid
        .par_windows(2)
        .map(|w| real_lambda_on_line(0.5 * (w[0] + w[1])))
        .collect::<Result<Vec<_>>>()?;

    let mut brackets: Vec<(f64, f64, f64)> = Vec::new();
    let mut warnings = Vec::new();
    for i in 0..grid.len() - 1 {
        let (a, b) = (grid[i], grid[i + 1]);
        let (fa, fb) = (values[i], values[i + 1]);
        let m = 0.5 * (a + b);
        let fm = mids[i];
        let change_left = fa.signum() != fm.signum();
        let change_right = fm.signum() != fb.signum();
        if change_left && change_right {
            warnings.push(ScanWarning::StepTooCoarse {
                cell_start: a,
                cell_end: b,
            });
        }
        if change_left {
            brackets.push((a, m, fa));
        }
        if change_right {
            brackets.push((m, b, fm));
        }
    }

    let mut records = Vec::with_capacity(brackets.len());
    for (i, &(lo, hi, f_lo)) in brackets.iter().enumerate() {
        let ordinate = bisect(lo, hi, f_lo, tol)?;
        records.push(ZeroRecord {
            index: i as u64 + 1,
            ordinate,
            refinement_tolerance: tol,
            residual: line_residual(ordinate)?,
        });
    }

    Ok(ScanReport { records, warnings })
}

fn validate_records(records: &[ZeroRecord]) -> Result<()> {
    let mut prev = f64::NEG_INFINITY;
    for (i, r) in records.iter().enumerate() {
        if r.index != i as u64 + 1 {
            return Err(Error::InvariantViolation(format!(
                "record {} has index {}, expected {}",
                i,
                r.index,
                i + 1
            )));
        }
        if !(r.ordinate > 14.0) {
            return Err(Error::InvariantViolation(format!(
                "ordinate {} not above 14 (no zero lies below the first one)",
                r.ordinate
            )));
        }
        if r.ordinate <= prev {
            return Err(Error::InvariantViolation(format!(
                "ordinates not strictly increasing at index {}",
                r.index
            )));
        }
        if !(r.refinement_tolerance > 0.0) || !r.refinement_tolerance.is_finite() {
            return Err(Error::InvariantViolation(format!(
                "bad refinement tolerance {}",
                r.refinement_tolerance
            )));
        }
        if !(r.residual >= 0.0) || !r.residual.is_finite() {
            return Err(Error::InvariantViolation(format!(
                "bad residual {}",
                r.residual
            )));
        }
        prev = r.ordinate;
    }
    Ok(())
}

/// Write records as `index,ordinate,refinement_tolerance,residual` lines,
/// 17 significant digits, diffable and byte-stable across reruns.
pub fn catalog_write(records: &[ZeroRecord], path: &Path) -> Result<()> {
    validate_records(records)?;
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    for r in records {
        writeln!(
            out,
            "{},{:.16e},{:.16e},{:.16e}",
            r.index, r.ordinate, r.refinement_tolerance, r.residual
        )?;
    }
    out.flush()?;
    Ok(())
}

/// Read a catalog back, validating the record invariants.
pub fn catalog_read(path: &Path) -> Result<Vec<ZeroRecord>> {
    let file = std::fs::File::open(path)?;
    let mut records = Vec::new();
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(Error::MalformedCatalog {
                line: lineno + 1,
                msg: format!("expected 4 comma-separated fields, got {}", fields.len()),
            });
        }
        let parse_f = |s: &str, what: &str| -> Result<f64> {
            s.trim().parse::<f64>().map_err(|e| Error::MalformedCatalog {
                line: lineno + 1,
                msg: format!("bad {what}: {e}"),
            })
        };
        let index = fields[0]
            .trim()
            .parse::<u64>()
            .map_err(|e| Error::MalformedCatalog {
                line: lineno + 1,
                msg: format!("bad index: {e}"),
            })?;
        records.push(ZeroRecord {
            index,
            ordinate: parse_f(fields[1], "ordinate")?,
            refinement_tolerance: parse_f(fields[2], "refinement_tolerance")?,
            residual: parse_f(fields[3], "residual")?,
        });
    }
    validate_records(&records)?;
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_brackets_first_zero() {
        let a = real_lambda_on_line(14.0).unwrap();
        let b = real_lambda_on_line(14.2).unwrap();
        assert!(a.signum() != b.signum());
    }

    #[test]
    fn lambda_nonzero_at_one() {
        assert!(real_lambda_on_line(1.0).unwrap().abs() > 1e-6);
    }

    #[test]
    fn scan_low_interval_is_empty() {
        let report = scan_and_refine(1.0, 10.0, 0.1, 1e-9).unwrap();
        assert!(report.records.is_empty());
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn scan_ten_to_thirty_finds_three() {
        let report = scan_and_refine(10.0, 30.0, 0.1, 1e-9).unwrap();
        let ords: Vec<f64> = report.records.iter().map(|r| r.ordinate).collect();
        assert_eq!(ords.len(), 3, "ordinates: {ords:?}");
        assert!((ords[0] - 14.134725).abs() < 1e-4);
        assert!((ords[1] - 21.022040).abs() < 1e-4);
        assert!((ords[2] - 25.010858).abs() < 1e-4);
        for r in &report.records {
            assert!(r.residual < 1e-8, "residual {}", r.residual);
        }
    }

    #[test]
    fn refined_ordinate_stable_under_halved_step() {
        let tol = 1e-9;
        let a = scan_and_refine(14.0, 14.3, 0.1, tol).unwrap();
        let b = scan_and_refine(14.0, 14.3, 0.05, tol).unwrap();
        assert_eq!(a.records.len(), 1);
        assert_eq!(b.records.len(), 1);
        assert!((a.records[0].ordinate - b.records[0].ordinate).abs() <= tol);
    }

    #[test]
    fn scan_rejects_bad_arguments() {
        assert!(scan_and_refine(5.0, 1.0, 0.1, 1e-9).is_err());
        assert!(scan_and_refine(1.0, 5.0, 0.7, 1e-9).is_err());
        assert!(scan_and_refine(1.0, 5.0, 0.1, 1e-13).is_err());
    }

    #[test]
    fn catalog_round_trip() {
        let records = vec![
            ZeroRecord {
                index: 1,
                ordinate: 14.134725141734693,
                refinement_tolerance: 1e-9,
                residual: 2.5e-10,
            },
            ZeroRecord {
                index: 2,
                ordinate: 21.022039638771554,
                refinement_tolerance: 1e-9,
                residual: 1.0e-10,
            },
            ZeroRecord {
                index: 3,
                ordinate: 25.010857580145688,
                refinement_tolerance: 1e-9,
                residual: 7.0e-11,
            },
        ];
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("zeros.csv");
        catalog_write(&records, &path).unwrap();
        let back = catalog_read(&path).unwrap();
        assert_eq!(records, back);
    }

    #[test]
    fn catalog_empty_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.csv");
        catalog_write(&[], &path).unwrap();
        assert!(catalog_read(&path).unwrap().is_empty());
    }

    #[test]
    fn catalog_rejects_decreasing_ordinates() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(
            &path,
            "1,2.1022039638771554e1,1.0e-9,1.0e-10\n2,1.4134725141734693e1,1.0e-9,1.0e-10\n",
        )
        .unwrap();
        assert!(matches!(
            catalog_read(&path),
            Err(Error::InvariantViolation(_))
        ));
    }

    #[test]
    fn catalog_rejects_malformed_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mal.csv");
        std::fs::write(&path, "1,14.9,1e-9\n").unwrap();
        match catalog_read(&path) {
            Err(Error::MalformedCatalog { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected malformed error, got {other:?}"),
        }
    }
}
