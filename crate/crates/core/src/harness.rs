//! Reference spectra, error reports, sweep tables and figure data.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use rug::Float;

use crate::error::{Error, Result};
use crate::expansion::{ExpansionTable, GridPoint, Space};
use crate::real::{float_from_decimal, float_to_decimal, Precision, Real};
use crate::spectra::{all_eigs, default_tol};
use crate::symbols::SymbolPair;

/// How reference spectra are computed and where they are cached.
#[derive(Debug, Clone)]
pub struct Oracle {
    pub precision: Precision,
    /// Bracket width; `None` picks a width at the rounding level.
    pub tol: Option<f64>,
    pub cache_dir: Option<PathBuf>,
}

impl Oracle {
    pub fn double() -> Self {
        Oracle { precision: Precision::Double, tol: None, cache_dir: None }
    }

    pub fn with_cache(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    fn tol(&self, pair: &SymbolPair) -> Result<f64> {
        if let Some(t) = self.tol {
            return Ok(t);
        }
        let (lo, hi) = pair.spectral_bounds()?;
        let range = (hi - lo).max(hi.abs().max(lo.abs()) * f64::EPSILON);
        Ok(match self.precision {
            // floored at one ulp of each eigenvalue by the solver
            Precision::Double => range * 1e-17,
            p => default_tol(p, range),
        })
    }

    fn cache_path(&self, pair: &SymbolPair, n: usize) -> Option<PathBuf> {
        let dir = self.cache_dir.as_ref()?;
        let digest = pair.digest();
        Some(dir.join(format!("ref-{}-n{}-p{}.txt", &digest[..16], n, self.precision.tag())))
    }
}

fn cache_header(pair: &SymbolPair, n: usize, prec: Precision) -> String {
    format!("# digest={} n={} precision={}", pair.digest(), n, prec.tag())
}

fn read_cache(path: &Path, header: &str, n: usize, bits: u32) -> Option<Vec<Float>> {
    let text = std::fs::read_to_string(path).ok()?;
    let mut lines = text.lines();
    if lines.next()? != header {
        return None;
    }
    let values: Vec<Float> = lines.map(|l| float_from_decimal(l, bits)).collect::<Result<_>>().ok()?;
    (values.len() == n).then_some(values)
}

fn write_cache(path: &Path, header: &str, values: &[Float]) -> Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(dir)?;
    let mut file = tempfile::NamedTempFile::new_in(dir)?;
    writeln!(file, "{header}")?;
    for v in values {
        writeln!(file, "{}", float_to_decimal(v))?;
    }
    file.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Sorted eigenvalues of `X_n`, from the on-disk cache when present.
pub fn reference_spectrum(pair: &SymbolPair, n: usize, oracle: &Oracle) -> Result<Vec<Float>> {
    let header = cache_header(pair, n, oracle.precision);
    let path = oracle.cache_path(pair, n);
    if let Some(p) = &path {
        if let Some(values) = read_cache(p, &header, n, oracle.precision.bits()) {
            return Ok(values);
        }
    }
    let values = all_eigs(pair, n, oracle.precision, Some(oracle.tol(pair)?))?;
    if let Some(p) = &path {
        write_cache(p, &header, &values)?;
    }
    Ok(values)
}

/// Individual and maximum errors of one approximation.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub n: usize,
    pub k: usize,
    pub space: Space,
    /// `errors[j - 1] = |lambda_j - approx_j|`.
    pub errors: Vec<f64>,
    pub max_err: f64,
    /// `(n + 1)^k max_err`.
    pub normalized: f64,
    pub oracle_digits: u32,
}

fn digits_of_bits(bits: u32) -> u32 {
    if bits <= 53 {
        crate::real::DOUBLE_DIGITS
    } else {
        ((bits - 8) as f64 * std::f64::consts::LOG10_2).floor() as u32
    }
}

/// Compares two sorted spectra of the same length.
pub fn compare<T: Real>(approx: &[f64], reference: &[T], k: usize, space: Space) -> Result<ErrorReport> {
    if approx.len() != reference.len() {
        return Err(Error::LengthMismatch { left: approx.len(), right: reference.len() });
    }
    let n = approx.len();
    let errors: Vec<f64> =
        reference.iter().zip(approx).map(|(r, a)| (r.clone() - &r.lift(*a)).abs().to_f64()).collect();
    let max_err = errors.iter().cloned().fold(0.0, f64::max);
    let oracle_digits = reference.first().map_or(crate::real::DOUBLE_DIGITS, |r| digits_of_bits(r.bits()));
    Ok(ErrorReport {
        n,
        k,
        space,
        errors,
        max_err,
        normalized: max_err * ((n + 1) as f64).powi(k as i32),
        oracle_digits,
    })
}

/// Error reports for every `(n, k)` in `orders x levels`, ordered by `n`
/// then `k`.
pub fn table_sweep(
    table: &ExpansionTable,
    pair: &SymbolPair,
    orders: &[usize],
    levels: &[usize],
    oracle: &Oracle,
) -> Result<Vec<ErrorReport>> {
    let mut reports = Vec::with_capacity(orders.len() * levels.len());
    for &n in orders {
        let reference = reference_spectrum(pair, n, oracle)?;
        let row = levels
            .par_iter()
            .map(|&k| {
                let mut approx = table.approx_eigs(pair, n, k)?.values;
                approx.sort_by(f64::total_cmp);
                compare(&approx, &reference, k, table.space())
            })
            .collect::<Result<Vec<_>>>()?;
        reports.extend(row);
    }
    Ok(reports)
}

/// `j,theta,log10_err` rows for one report.
pub fn figure_dump(report: &ErrorReport) -> String {
    let mut out = String::from("j,theta,log10_err\n");
    for (i, e) in report.errors.iter().enumerate() {
        let j = i + 1;
        let theta = GridPoint::new(j as u64, report.n as u64).theta();
        let log = if *e == 0.0 { "-inf".to_string() } else { format!("{:.6}", e.log10()) };
        let _ = writeln!(out, "{j},{theta:.17e},{log}");
    }
    out
}

pub fn table_csv(reports: &[ErrorReport]) -> String {
    let mut out = String::from("n,k,max_err,normalized_err,oracle_digits\n");
    for r in reports {
        let _ = writeln!(out, "{},{},{:.4e},{:.5e},{}", r.n, r.k, r.max_err, r.normalized, r.oracle_digits);
    }
    out
}

pub fn table_text(reports: &[ErrorReport]) -> String {
    let mut out = format!("{:>7} {:>3} {:>12} {:>14} {:>7}\n", "n", "k", "max_err", "(n+1)^k err", "digits");
    for r in reports {
        let _ = writeln!(
            out,
            "{:>7} {:>3} {:>12.4e} {:>14.5e} {:>7}",
            r.n, r.k, r.max_err, r.normalized, r.oracle_digits
        );
    }
    out
}

/// Even/odd split of the individual errors.
#[derive(Debug, Clone, PartialEq)]
pub struct ParityDiagnostic {
    pub even_max: f64,
    pub odd_max: f64,
    /// Larger over smaller of the two maxima.
    pub ratio: f64,
    /// Median over interior `j` of `|log10(e_j / mean(e_{j-1}, e_{j+1}))|`.
    pub alternation: f64,
    pub anomaly: bool,
}

pub const PARITY_RATIO_THRESHOLD: f64 = 10.0;
/// A factor of two between neighbours, in log10.
pub const PARITY_ALTERNATION_THRESHOLD: f64 = std::f64::consts::LOG10_2;

pub fn parity_diagnostic(report: &ErrorReport) -> ParityDiagnostic {
    let e = &report.errors;
    let even_max = e.iter().skip(1).step_by(2).cloned().fold(0.0, f64::max);
    let odd_max = e.iter().step_by(2).cloned().fold(0.0, f64::max);
    let (lo, hi) = (even_max.min(odd_max), even_max.max(odd_max));
    let ratio = if hi == 0.0 {
        1.0
    } else if lo == 0.0 {
        f64::INFINITY
    } else {
        hi / lo
    };
    let mut local: Vec<f64> = e
        .windows(3)
        .filter(|w| w[1] > 0.0 && w[0] + w[2] > 0.0)
        .map(|w| (w[1] / (0.5 * (w[0] + w[2]))).log10().abs())
        .collect();
    let alternation = if local.is_empty() {
        0.0
    } else {
        local.sort_by(f64::total_cmp);
        local[local.len() / 2]
    };
    ParityDiagnostic {
        even_max,
        odd_max,
        ratio,
        alternation,
        anomaly: ratio > PARITY_RATIO_THRESHOLD || alternation > PARITY_ALTERNATION_THRESHOLD,
    }
}
