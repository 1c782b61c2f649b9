//! Eigenvalues of `X_n = T_n(g)^{-1} T_n(l)` without forming `X_n`.
//!
//! `X_n` is similar to a symmetric matrix whose eigenvalues are those of the
//! definite pencil `(T_n(l), T_n(g))`. By Sylvester's law of inertia the
//! number of eigenvalues below `lambda` equals the number of negative pivots
//! of the banded `LDL^T` factorization of `T_n(l) - lambda T_n(g)`, which
//! costs `O(n m^2)` for half-bandwidth `m`. Individual eigenvalues are then
//! isolated by bracketing on that count.
//!
//! The same factorization also yields `d/dlambda log|det|`, which drives a
//! Newton step inside the current bracket; steps that leave the bracket or
//! stall fall back to bisection, so the count-based guarantee is kept.

use rayon::prelude::*;
use rug::Float;

use crate::error::{Error, Result};
use crate::real::{Precision, Real};
use crate::symbols::{CosinePoly, SymbolPair};

/// Retries with a perturbed shift after a pivot breakdown.
const BREAKDOWN_RETRIES: usize = 3;

/// `T_n(p)` stored as its first column band `a_0..a_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedToeplitz {
    n: usize,
    band: Vec<f64>,
}

impl BandedToeplitz {
    pub fn build(p: &CosinePoly, n: usize) -> Result<Self> {
        if n <= p.degree() {
            return Err(Error::OrderTooSmall { n, degree: p.degree() });
        }
        let band = (0..=p.degree() as i64).map(|k| p.fourier_coeff(k)).collect();
        Ok(BandedToeplitz { n, band })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn half_bandwidth(&self) -> usize {
        self.band.len() - 1
    }

    pub fn band(&self) -> &[f64] {
        &self.band
    }

    /// Entry `(i, j)`, zero outside the band.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.band.get(i.abs_diff(j)).copied().unwrap_or(0.0)
    }
}

pub fn build_toeplitz(p: &CosinePoly, n: usize) -> Result<BandedToeplitz> {
    BandedToeplitz::build(p, n)
}

#[derive(Debug, Clone)]
struct Scan<T> {
    negatives: usize,
    /// `sum_i d_i' / d_i = d/dlambda log|det(T(l) - lambda T(g))|`
    log_det_slope: Option<T>,
    /// Some pivot was small enough for rounding to flip the count.
    fragile: bool,
}

/// The pencil `(T_n(l), T_n(g))` at a fixed order and working precision.
#[derive(Debug, Clone)]
pub struct Pencil<T> {
    n: usize,
    l_band: Vec<T>,
    g_band: Vec<T>,
    lower: T,
    upper: T,
    pivot_floor_rel: T,
    fragile_rel: T,
    nudge: T,
    /// Recounts fragile scans of a low-precision pencil.
    fallback: Option<Box<Pencil<Float>>>,
}

/// Working precision of the fallback recount for double pencils.
const FALLBACK_BITS: u32 = 192;

impl<T: Real> Pencil<T> {
    /// Bands beyond `n - 1` are dropped, so any `n >= 1` is accepted.
    pub fn new(pair: &SymbolPair, n: usize, bits: u32, digits: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::OrderTooSmall { n, degree: pair.degree() });
        }
        let like = T::from_f64(0.0, bits);
        let (lower, upper) = pair.spectral_bounds_real(&like)?;
        let m = pair.degree().min(n - 1);
        let band = |p: &CosinePoly| -> Vec<T> {
            (0..=m as i64).map(|k| like.lift(p.fourier_coeff(k))).collect()
        };
        let range = upper.clone() - &lower;
        let nudge = range.clone() * &T::from_f64(0.5f64.powi((bits / 2) as i32), bits);
        let fallback = if bits < FALLBACK_BITS {
            let digits = (FALLBACK_BITS as f64 * std::f64::consts::LOG10_2) as u32;
            Some(Box::new(Pencil::<Float>::new(pair, n, FALLBACK_BITS, digits)?))
        } else {
            None
        };
        Ok(Pencil {
            n,
            l_band: band(pair.l()),
            g_band: band(pair.g()),
            lower,
            upper,
            pivot_floor_rel: T::exp10(-(digits as i32 + 10), bits),
            // Inertia is unreliable once a pivot is within about sqrt(eps) of zero.
            fragile_rel: T::from_f64(0.5f64.powi(bits as i32 / 2 - 8), bits),
            nudge,
            fallback,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `(m_f, M_f)` at working precision.
    pub fn bounds(&self) -> (&T, &T) {
        (&self.lower, &self.upper)
    }

    /// [`Pencil::scan_raw`], repeated at higher precision when fragile.
    fn scan(&self, lambda: &T, with_slope: bool) -> Result<Scan<T>> {
        let first = self.scan_raw(lambda, with_slope);
        let fallback = match (&first, &self.fallback) {
            (Ok(s), _) if !s.fragile => return first,
            (_, None) => return first,
            (_, Some(fb)) => fb,
        };
        let x = Float::with_val(FALLBACK_BITS, lambda.to_float());
        let s = fallback.scan_raw(&x, with_slope)?;
        Ok(Scan {
            negatives: s.negatives,
            log_det_slope: s.log_det_slope.map(|v| lambda.lift(v.to_f64())),
            fragile: false,
        })
    }

    /// Banded `LDL^T` of `T(l) - lambda T(g)` without pivoting.
    fn scan_raw(&self, lambda: &T, with_slope: bool) -> Result<Scan<T>> {
        let n = self.n;
        let m = self.l_band.len() - 1;
        let zero = lambda.zero_like();
        let e: Vec<T> = self
            .l_band
            .iter()
            .zip(&self.g_band)
            .map(|(l, g)| l.clone() - &(g.clone() * lambda))
            .collect();
        let de: Vec<T> = self.g_band.iter().map(|g| -g.clone()).collect();
        let scale = e.iter().map(|v| v.abs()).fold(zero.clone(), |a, b| a.max_of(b));
        let floor = scale.clone() * &self.pivot_floor_rel;
        let fragile_floor = scale * &self.fragile_rel;
        let mut fragile = false;

        // Ring buffers over the last m rows: L(i, i-1-o) at rows[i % (m+1)][o].
        let slots = m + 1;
        let mut rows = vec![vec![zero.clone(); m]; slots];
        let mut drows = vec![vec![zero.clone(); m]; slots];
        let mut d = vec![zero.clone(); slots];
        let mut dd = vec![zero.clone(); slots];
        let mut w = vec![zero.clone(); m];
        let mut dw = vec![zero.clone(); m];
        let mut tmp = zero.clone();

        let mut negatives = 0;
        let mut slope = zero.clone();
        for i in 0..n {
            let c0 = i.saturating_sub(m);
            let slot = i % slots;
            for c in c0..i {
                let wc = c - c0;
                let crow = c % slots;
                let mut acc = e[i - c].clone();
                let mut dacc = de[i - c].clone();
                for q in c0..c {
                    let lcq = &rows[crow][c - q - 1];
                    tmp.clone_from(&w[q - c0]);
                    tmp *= lcq;
                    acc -= &tmp;
                    if with_slope {
                        tmp.clone_from(&dw[q - c0]);
                        tmp *= lcq;
                        dacc -= &tmp;
                        tmp.clone_from(&w[q - c0]);
                        tmp *= &drows[crow][c - q - 1];
                        dacc -= &tmp;
                    }
                }
                let dc = &d[crow];
                let mut lic = acc.clone();
                lic /= dc;
                if with_slope {
                    // L' = (W' - L d') / d
                    let mut dl = dacc.clone();
                    tmp.clone_from(&lic);
                    tmp *= &dd[crow];
                    dl -= &tmp;
                    dl /= dc;
                    drows[slot][i - c - 1] = dl;
                    dw[wc] = dacc;
                }
                rows[slot][i - c - 1] = lic;
                w[wc] = acc;
            }
            let mut di = e[0].clone();
            let mut ddi = de[0].clone();
            for c in c0..i {
                let wc = c - c0;
                let lic = &rows[slot][i - c - 1];
                tmp.clone_from(&w[wc]);
                tmp *= lic;
                di -= &tmp;
                if with_slope {
                    tmp.clone_from(&dw[wc]);
                    tmp *= lic;
                    ddi -= &tmp;
                    tmp.clone_from(&w[wc]);
                    tmp *= &drows[slot][i - c - 1];
                    ddi -= &tmp;
                }
            }
            if di.abs() <= floor {
                return Err(Error::PivotBreakdown { row: i, lambda: lambda.to_f64() });
            }
            // A small last pivot is harmless: no later row amplifies it.
            if i + 1 < n && di.abs() <= fragile_floor {
                fragile = true;
            }
            if di.is_negative() {
                negatives += 1;
            }
            if with_slope {
                tmp.clone_from(&ddi);
                tmp /= &di;
                slope += &tmp;
                dd[slot] = ddi;
            }
            d[slot] = di;
        }
        Ok(Scan { negatives, log_det_slope: with_slope.then_some(slope), fragile })
    }

    /// `#{ j : lambda_j(X_n) < lambda }`. Pivot breakdown is reported, not
    /// retried; see [`Pencil::count_near`] for the retrying form.
    pub fn inertia_count(&self, lambda: &T) -> Result<usize> {
        self.scan(lambda, false).map(|s| s.negatives)
    }

    /// Count at `lambda`, or at a nudged shift inside `(lo, hi)` after a
    /// breakdown. Returns the shift actually used.
    fn probe(&self, lambda: &T, lo: &T, hi: &T, with_slope: bool) -> Result<(T, Scan<T>)> {
        let mut x = lambda.clone();
        let quarter = (hi.clone() - lo) * &lambda.lift(0.25);
        let step = self.nudge.clone().min_of(quarter);
        let mut last = None;
        for attempt in 0..=BREAKDOWN_RETRIES {
            match self.scan(&x, with_slope) {
                Ok(s) => return Ok((x, s)),
                Err(e) => last = Some(e),
            }
            let sign = if attempt % 2 == 0 { 1.0 } else { -1.0 };
            let k = (attempt / 2 + 1) as f64;
            x = lambda.clone() + &(step.clone() * &lambda.lift(sign * k));
        }
        Err(last.expect("at least one attempt"))
    }

    /// Count with breakdown retries, nudging within `lambda +- nudge`.
    pub fn count_near(&self, lambda: &T) -> Result<usize> {
        let lo = lambda.clone() - &self.nudge;
        let hi = lambda.clone() + &self.nudge;
        self.probe(lambda, &lo, &hi, false).map(|(_, s)| s.negatives)
    }

    /// `j`-th smallest eigenvalue (1-based), bracketed to width `tol`.
    pub fn eig_by_index(&self, j: usize, tol: &T) -> Result<T> {
        self.check_index(j)?;
        self.refine(j, tol, self.lower.clone(), self.upper.clone(), None)
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.n {
            return Err(Error::IndexOutOfRange { j, n: self.n });
        }
        Ok(())
    }

    /// Like [`Pencil::eig_by_index`], starting from an approximation
    /// `guess` (e.g. a double-precision result). The bracket around it is
    /// verified by counts and widened until valid.
    pub fn eig_near(&self, j: usize, tol: &T, guess: &T) -> Result<T> {
        self.check_index(j)?;
        let range = self.upper.clone() - &self.lower;
        let mut radius = range.clone() * &guess.lift(1e-12);
        let sixteen = guess.lift(16.0);
        loop {
            let lo = (guess.clone() - &radius).max_of(self.lower.clone());
            let hi = (guess.clone() + &radius).min_of(self.upper.clone());
            if lo <= self.lower && hi >= self.upper {
                return self.refine(j, tol, lo, hi, Some(guess.clone()));
            }
            let (lo, lo_scan) = self.probe(&lo, &self.lower, guess, false)?;
            let (hi, hi_scan) = self.probe(&hi, guess, &self.upper, false)?;
            if lo_scan.negatives < j && hi_scan.negatives >= j {
                return self.refine(j, tol, lo, hi, Some(guess.clone()));
            }
            radius *= &sixteen;
        }
    }

    /// Safeguarded Newton on `det(T(l) - lambda T(g))` inside a bracket
    /// with `count(lo) < j <= count(hi)`.
    fn refine(&self, j: usize, tol: &T, mut lo: T, mut hi: T, guess: Option<T>) -> Result<T> {
        let half = lo.lift(0.5);
        // A width below a few ulps of the eigenvalue cannot be certified.
        let magnitude = lo.abs().max_of(hi.abs());
        let ulps = magnitude * &T::from_f64(0.5f64.powi(lo.bits() as i32 - 1), lo.bits());
        let tol = &tol.clone().max_of(ulps);
        let half_tol = tol.clone() * &half;
        let mid = |lo: &T, hi: &T| (lo.clone() + hi) * &half;
        let mut x = match guess {
            Some(g) if g > lo && g < hi => g,
            _ => mid(&lo, &hi),
        };
        let cap = 64 + 4 * lo.bits() as usize;
        let mut widths: Vec<T> = Vec::new();
        for _ in 0..cap {
            let width = hi.clone() - &lo;
            if width <= *tol {
                return Ok(mid(&lo, &hi));
            }
            let centre = mid(&lo, &hi);
            if centre <= lo || centre >= hi {
                return Ok(centre);
            }
            let (at, scan) = self.probe(&x, &lo, &hi, true)?;
            if scan.negatives >= j {
                hi = at.clone();
            } else {
                lo = at.clone();
            }
            let width = hi.clone() - &lo;
            // Force a bisection when three steps failed to halve the bracket.
            widths.push(width.clone());
            let stalled = widths.len() >= 4 && {
                let old = widths[widths.len() - 4].clone();
                width > old * &half
            };
            let slope = scan.log_det_slope.expect("slope requested");
            let candidate = if slope != slope.zero_like() && !stalled {
                Some(at.clone() - &(at.lift(1.0) / &slope))
            } else {
                None
            };
            x = match candidate {
                Some(c) if c > lo && c < hi => {
                    let step = (c.clone() - &at).abs();
                    if step <= half_tol {
                        // Converged: certify a bracket of width tol around c.
                        let a = (c.clone() - &half_tol).max_of(lo.clone());
                        let b = (c.clone() + &half_tol).min_of(hi.clone());
                        if a > lo {
                            let (a, s) = self.probe(&a, &lo, &c, false)?;
                            if s.negatives < j {
                                lo = a;
                            } else {
                                hi = a;
                            }
                        }
                        if b < hi && b > lo {
                            let (b, s) = self.probe(&b, &c, &hi, false)?;
                            if s.negatives >= j {
                                hi = b;
                            } else {
                                lo = b;
                            }
                        }
                        widths.clear();
                        mid(&lo, &hi)
                    } else {
                        c
                    }
                }
                _ => {
                    widths.clear();
                    mid(&lo, &hi)
                }
            };
        }
        Err(Error::NonConvergence { what: "eigenvalue bracketing", iterations: cap })
    }

    /// All eigenvalues, one independent bracket per index, nondecreasing.
    pub fn all_eigs(&self, tol: &T) -> Result<Vec<T>> {
        let mut values = (1..=self.n)
            .into_par_iter()
            .map(|j| self.eig_by_index(j, tol))
            .collect::<Result<Vec<T>>>()?;
        sort_values(&mut values);
        Ok(values)
    }
}

fn sort_values<T: Real>(values: &mut [T]) {
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
}

/// Default bracket width: `(M_f - m_f) 10^-(digits-8)` in extended
/// precision and `(M_f - m_f) 1e-15` in double.
pub fn default_tol(prec: Precision, range: f64) -> f64 {
    match prec {
        Precision::Double => range * 1e-15,
        Precision::Extended { digits } => range * 10f64.powi(-(digits as i32 - 8)),
    }
}

fn spectral_range(pair: &SymbolPair) -> Result<f64> {
    let (lo, hi) = pair.spectral_bounds()?;
    Ok(hi - lo)
}

pub fn inertia_count(pair: &SymbolPair, n: usize, lambda: f64, prec: Precision) -> Result<usize> {
    match prec {
        Precision::Double => Pencil::<f64>::new(pair, n, prec.bits(), prec.digits())?.count_near(&lambda),
        Precision::Extended { .. } => {
            let p = Pencil::<Float>::new(pair, n, prec.bits(), prec.digits())?;
            p.count_near(&Float::with_val(prec.bits(), lambda))
        }
    }
}

/// Eigenvalue `j` of `X_n` at the requested precision. In extended mode the
/// double-precision value seeds a verified bracket.
pub fn eig_by_index(
    pair: &SymbolPair,
    n: usize,
    j: usize,
    prec: Precision,
    tol: Option<f64>,
) -> Result<Float> {
    let range = spectral_range(pair)?;
    let tol = tol.unwrap_or_else(|| default_tol(prec, range));
    let double = Pencil::<f64>::new(pair, n, 53, Precision::Double.digits())?;
    match prec {
        Precision::Double => Ok(Float::with_val(53, double.eig_by_index(j, &tol)?)),
        Precision::Extended { .. } => {
            let seed = double.eig_by_index(j, &default_tol(Precision::Double, range))?;
            let ext = Pencil::<Float>::new(pair, n, prec.bits(), prec.digits())?;
            let tol = tol_real(&ext, prec, tol);
            ext.eig_near(j, &tol, &Float::with_val(prec.bits(), seed))
        }
    }
}

/// The tolerance as a working-precision value. Extended tolerances below
/// the `f64` range are rebuilt from the default formula.
fn tol_real(p: &Pencil<Float>, prec: Precision, tol: f64) -> Float {
    let bits = prec.bits();
    if tol > 0.0 {
        Float::with_val(bits, tol)
    } else {
        let range = p.upper.clone() - &p.lower;
        range * <Float as Real>::exp10(-(prec.digits() as i32 - 8), bits)
    }
}

/// All `n` eigenvalues in nondecreasing order.
pub fn all_eigs(pair: &SymbolPair, n: usize, prec: Precision, tol: Option<f64>) -> Result<Vec<Float>> {
    let range = spectral_range(pair)?;
    let tol = tol.unwrap_or_else(|| default_tol(prec, range));
    let double = Pencil::<f64>::new(pair, n, 53, Precision::Double.digits())?;
    match prec {
        Precision::Double => Ok(double.all_eigs(&tol)?.into_iter().map(|v| Float::with_val(53, v)).collect()),
        Precision::Extended { .. } => {
            let seeds = double.all_eigs(&default_tol(Precision::Double, range))?;
            let ext = Pencil::<Float>::new(pair, n, prec.bits(), prec.digits())?;
            let tol = tol_real(&ext, prec, tol);
            let mut values = seeds
                .par_iter()
                .enumerate()
                .map(|(i, s)| ext.eig_near(i + 1, &tol, &Float::with_val(prec.bits(), *s)))
                .collect::<Result<Vec<Float>>>()?;
            sort_values(&mut values);
            Ok(values)
        }
    }
}

/// Double-precision spectrum as plain `f64`.
pub fn all_eigs_f64(pair: &SymbolPair, n: usize, tol: f64) -> Result<Vec<f64>> {
    Pencil::<f64>::new(pair, n, 53, Precision::Double.digits())?.all_eigs(&tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::catalog::*;
    use crate::symbols::DEFAULT_SAMPLES;
    use nalgebra::DMatrix;

    fn certified(p: SymbolPair) -> SymbolPair {
        p.certify(DEFAULT_SAMPLES).unwrap()
    }

    fn dense(t: &BandedToeplitz) -> DMatrix<f64> {
        DMatrix::from_fn(t.n(), t.n(), |i, j| t.entry(i, j))
    }

    #[test]
    fn build_examples() {
        let one = CosinePoly::constant(1.0).unwrap();
        let t = build_toeplitz(&one, 5).unwrap();
        assert_eq!(t.band(), &[1.0]);
        assert_eq!(t.entry(2, 2), 1.0);
        assert_eq!(t.entry(1, 2), 0.0);

        let g = CosinePoly::new(vec![3.0, 2.0]).unwrap();
        let t = build_toeplitz(&g, 4).unwrap();
        assert_eq!(t.band(), &[3.0, 1.0]);
        assert_eq!(t.entry(3, 2), 1.0);

        let g2 = example2().g().clone();
        let t = build_toeplitz(&g2, 10).unwrap();
        assert_eq!(t.band(), &[1208.0, 595.5, 60.0, 0.5]);

        assert!(matches!(build_toeplitz(&g2, 3), Err(Error::OrderTooSmall { n: 3, degree: 3 })));
    }

    #[test]
    fn one_by_one_pencil() {
        let pair = certified(example1());
        let p = Pencil::<f64>::new(&pair, 1, 53, 16).unwrap();
        assert_eq!(p.inertia_count(&0.6).unwrap(), 0);
        assert_eq!(p.inertia_count(&0.7).unwrap(), 1);
    }

    #[test]
    fn localisation_counts() {
        let pair = certified(example1());
        for n in [1, 7, 64, 300] {
            assert_eq!(inertia_count(&pair, n, 2.0, Precision::Double).unwrap(), n);
            assert_eq!(inertia_count(&pair, n, 0.0, Precision::Double).unwrap(), 0);
        }
    }

    #[test]
    fn indefinite_preconditioner_is_refused() {
        let pair = SymbolPair::new(CosinePoly::new(vec![1.0]).unwrap(), CosinePoly::new(vec![0.0, 1.0]).unwrap());
        assert!(matches!(Pencil::<f64>::new(&pair, 4, 53, 16), Err(Error::NonPositivePreconditioner { .. })));
    }

    #[test]
    fn scalar_multiple_pencil() {
        // l = 2g cannot be certified, but the pencil is definite and X_n = 2I.
        let g = CosinePoly::new(vec![3.0, 2.0]).unwrap();
        let l = CosinePoly::new(vec![6.0, 4.0]).unwrap();
        let pair = SymbolPair::new(l, g);
        assert_eq!(pair.spectral_bounds().unwrap(), (2.0, 2.0));
        let values = all_eigs(&pair, 3, Precision::Double, None).unwrap();
        assert!(values.iter().all(|v| *v == 2.0));
        let p = Pencil::<f64>::new(&pair, 5, 53, 16).unwrap();
        for j in 1..=5 {
            assert_eq!(p.eig_by_index(j, &1e-14).unwrap(), 2.0);
        }
        assert_eq!(p.all_eigs(&1e-14).unwrap().len(), 5);
    }

    #[test]
    fn index_checks() {
        let pair = certified(example1());
        assert!(matches!(eig_by_index(&pair, 4, 0, Precision::Double, None), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(eig_by_index(&pair, 4, 5, Precision::Double, None), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn dense_cholesky_reduction_oracle() {
        let pair = certified(example1());
        let n = 100;
        let a = dense(&build_toeplitz(pair.l(), n).unwrap());
        let b = dense(&build_toeplitz(pair.g(), n).unwrap());
        let chol = b.cholesky().unwrap();
        let linv = chol.l().try_inverse().unwrap();
        let c = &linv * a * linv.transpose();
        let c = (&c + c.transpose()) * 0.5;
        let mut oracle: Vec<f64> = c.symmetric_eigenvalues().iter().copied().collect();
        oracle.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let got = eig_by_index(&pair, n, 50, Precision::Double, None).unwrap().to_f64();
        assert!(got > 0.0 && got < 2.0);
        assert!((got - oracle[49]).abs() < 1e-12, "{got} vs {}", oracle[49]);
    }

    #[test]
    fn all_eigs_sorted_and_localised() {
        let pair = certified(example1());
        let v = all_eigs_f64(&pair, 256, 1e-15).unwrap();
        assert_eq!(v.len(), 256);
        assert!(v.windows(2).all(|w| w[0] <= w[1]));
        assert!(v.iter().all(|&x| x > 0.0 && x < 2.0));
    }

    #[test]
    fn newton_and_plain_counts_agree() {
        let pair = certified(example2());
        let p = Pencil::<f64>::new(&pair, 40, 53, 16).unwrap();
        let v = p.all_eigs(&1e-16).unwrap();
        for (j, &x) in v.iter().enumerate() {
            assert!(p.inertia_count(&(x - 1e-12)).unwrap() <= j);
            assert!(p.inertia_count(&(x + 1e-12)).unwrap() > j);
        }
    }

    #[test]
    fn extended_matches_double() {
        let pair = certified(example1());
        let prec = Precision::extended(40).unwrap();
        let d = eig_by_index(&pair, 64, 10, Precision::Double, None).unwrap();
        let e = eig_by_index(&pair, 64, 10, prec, None).unwrap();
        assert!((e.to_f64() - d.to_f64()).abs() < 1e-14);
    }

    #[test]
    fn precision_contract() {
        let pair = certified(example1());
        let run = |digits: u32| {
            let prec = Precision::extended(digits).unwrap();
            let seed = eig_by_index(&pair, 50, 17, Precision::Double, None).unwrap();
            let p = Pencil::<Float>::new(&pair, 50, prec.bits(), digits).unwrap();
            let tol = <Float as Real>::exp10(-50, prec.bits());
            p.eig_near(17, &tol, &Float::with_val(prec.bits(), seed)).unwrap()
        };
        let a = run(60);
        let b = run(70);
        let diff = Float::with_val(300, &a - &b).abs();
        assert!(diff < 1e-48, "{diff}");
    }
}
