//! Even real cosine-polynomial symbols and the quotient `f = l / g`.
//!
//! A [`CosinePoly`] `c_0 + sum_k c_k cos(k theta)` is also a Chebyshev
//! series in `x = cos(theta)`. That view is used to strip common factors
//! `(1 - x)` / `(1 + x)` from `l` and `g`, so that `f` stays evaluable at
//! endpoints where both symbols vanish (a removable singularity).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::real::{Precision, Real};

/// Default number of subintervals used to certify a pair.
pub const DEFAULT_SAMPLES: usize = 10_000;

/// Relative size under which a symbol value is treated as zero.
const ZERO_REL: f64 = 1e-12;

/// Relative floor on `|g|` below which `l / g` is refused.
const DIVISION_FLOOR_REL: f64 = 64.0 * f64::EPSILON;

/// Bracket width at which [`SymbolPair::f_inverse`] switches from bisection
/// to guarded Newton steps.
const INVERSE_BISECTION_WIDTH: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct CosinePoly {
    coeffs: Vec<f64>,
}

impl CosinePoly {
    /// Trailing zero coefficients are dropped, so `degree()` is exact.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySymbol);
        }
        if let Some((index, &value)) = coeffs.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(Error::NonFiniteCoefficient { index, value });
        }
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == 0.0 {
            coeffs.pop();
        }
        Ok(CosinePoly { coeffs })
    }

    pub fn constant(c: f64) -> Result<Self> {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `c_0 + sum_{k=1}^{m} c_k cos(k theta)`.
    pub fn eval(&self, theta: f64) -> f64 {
        self.eval_real(&theta)
    }

    pub fn eval_real<T: Real>(&self, theta: &T) -> T {
        self.eval_with_derivative(theta, false).0
    }

    /// Value and `d/dtheta`, from Chebyshev recurrences in `cos(theta)`.
    ///
    /// The derivative is only formed when `want_derivative` is set; the
    /// returned second component is zero otherwise.
    pub fn eval_with_derivative<T: Real>(&self, theta: &T, want_derivative: bool) -> (T, T) {
        let x = theta.cos();
        let two_x = x.clone() * &x.lift(2.0);
        let mut value = x.lift(self.coeffs[0]);
        // T_{k-1}, T_k and U_{k-2}, U_{k-1}
        let mut t_prev = x.lift(1.0);
        let mut t_cur = x.clone();
        let mut u_prev = x.lift(0.0);
        let mut u_cur = x.lift(1.0);
        let mut dsum = x.lift(0.0);
        for (k, &c) in self.coeffs.iter().enumerate().skip(1) {
            if c != 0.0 {
                value += &(t_cur.clone() * &x.lift(c));
                if want_derivative {
                    // d/dtheta cos(k theta) = -k sin(theta) U_{k-1}(x)
                    dsum += &(u_cur.clone() * &x.lift(c * k as f64));
                }
            }
            let t_next = two_x.clone() * &t_cur - &t_prev;
            t_prev = std::mem::replace(&mut t_cur, t_next);
            if want_derivative {
                let u_next = two_x.clone() * &u_cur - &u_prev;
                u_prev = std::mem::replace(&mut u_cur, u_next);
            }
        }
        let deriv = if want_derivative { -(theta.sin() * &dsum) } else { dsum };
        (value, deriv)
    }

    /// Fourier coefficients `a_{-(n-1)}, ..., a_{n-1}`; entry `i` holds
    /// `a_{i-(n-1)}`.
    pub fn fourier_coeffs(&self, n: usize) -> Vec<f64> {
        assert!(n >= 1, "fourier_coeffs needs n >= 1");
        let span = n as i64 - 1;
        (-span..=span).map(|j| self.fourier_coeff(j)).collect()
    }

    /// `a_0 = c_0`, `a_{+-k} = c_k / 2`, zero beyond the degree.
    pub fn fourier_coeff(&self, j: i64) -> f64 {
        let k = j.unsigned_abs() as usize;
        match k {
            0 => self.coeffs[0],
            k if k < self.coeffs.len() => 0.5 * self.coeffs[k],
            _ => 0.0,
        }
    }

    /// Coefficients of the same function as an ordinary polynomial in
    /// `x = cos(theta)`, lowest degree first.
    pub fn power_basis(&self) -> Vec<f64> {
        let m = self.degree();
        let mut out = vec![0.0; m + 1];
        let mut t_prev = vec![0.0; m + 1];
        let mut t_cur = vec![0.0; m + 1];
        t_prev[0] = 1.0;
        if m >= 1 {
            t_cur[1] = 1.0;
        }
        out[0] += self.coeffs[0];
        for k in 1..=m {
            for (o, t) in out.iter_mut().zip(&t_cur) {
                *o += self.coeffs[k] * t;
            }
            if k < m {
                let mut next = vec![0.0; m + 1];
                for i in 0..m {
                    next[i + 1] += 2.0 * t_cur[i];
                }
                for (nx, p) in next.iter_mut().zip(&t_prev) {
                    *nx -= p;
                }
                t_prev = std::mem::replace(&mut t_cur, next);
            }
        }
        out
    }

    fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Canonical text form, shortest round-trip decimal per coefficient.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CosinePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for CosinePoly {
    type Err = Error;

    /// Accepts `[2, -1, -1]`, `2,-1,-1` or `2 -1 -1`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let coeffs = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(format!("coefficient {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        CosinePoly::new(coeffs)
    }
}

impl TryFrom<Vec<f64>> for CosinePoly {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        CosinePoly::new(v)
    }
}

impl From<CosinePoly> for Vec<f64> {
    fn from(p: CosinePoly) -> Self {
        p.coeffs
    }
}

/// Horner evaluation of a power-basis polynomial and its derivative.
fn horner<T: Real>(coeffs: &[f64], x: &T) -> (T, T) {
    let mut value = x.lift(0.0);
    let mut deriv = x.lift(0.0);
    for &c in coeffs.iter().rev() {
        deriv = deriv * x + &value;
        value = value * x + &x.lift(c);
    }
    (value, deriv)
}

fn horner_f64(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Divides by `(x - r)`, discarding the remainder.
fn deflate(coeffs: &[f64], r: f64) -> Vec<f64> {
    let m = coeffs.len() - 1;
    let mut q = vec![0.0; m];
    let mut carry = 0.0;
    for i in (1..=m).rev() {
        carry = coeffs[i] + carry * r;
        q[i - 1] = carry;
    }
    q
}

/// `l` and `g` with their common endpoint factors removed, in powers of
/// `cos(theta)`.
#[derive(Debug, Clone, PartialEq)]
struct ReducedRatio {
    num: Vec<f64>,
    den: Vec<f64>,
}

impl ReducedRatio {
    fn build(l: &CosinePoly, g: &CosinePoly) -> Option<Self> {
        let mut num = l.power_basis();
        let mut den = g.power_basis();
        let (ln, gn) = (l.l1_norm(), g.l1_norm());
        let mut reduced = false;
        for r in [1.0, -1.0] {
            while num.len() > 1
                && den.len() > 1
                && horner_f64(&num, r).abs() <= ZERO_REL * ln
                && horner_f64(&den, r).abs() <= ZERO_REL * gn
            {
                num = deflate(&num, r);
                den = deflate(&den, r);
                reduced = true;
            }
        }
        reduced.then_some(ReducedRatio { num, den })
    }
}

/// Outcome of sampling `f` and `g` over `[0, pi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneVerdict {
    pub certified: bool,
    pub samples: usize,
    /// `f(0)`, when defined.
    pub lower: Option<f64>,
    /// `f(pi)`, when defined.
    pub upper: Option<f64>,
    /// First violating sample pairs `(theta_i, theta_{i+1})`.
    pub violations: Vec<(f64, f64)>,
    pub violation_count: usize,
    /// Interior samples where `g <= 0`.
    pub nonpositive_g: Vec<f64>,
    pub message: String,
}

const MAX_REPORTED: usize = 16;

/// The symbol pair `(l, g)` with `f = l / g`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolPair {
    l: CosinePoly,
    g: CosinePoly,
    reduced: Option<ReducedRatio>,
    /// `(m_f, M_f)` once certified.
    bounds: Option<(f64, f64)>,
}

impl SymbolPair {
    pub fn new(l: CosinePoly, g: CosinePoly) -> Self {
        let reduced = ReducedRatio::build(&l, &g);
        SymbolPair { l, g, reduced, bounds: None }
    }

    pub fn l(&self) -> &CosinePoly {
        &self.l
    }

    pub fn g(&self) -> &CosinePoly {
        &self.g
    }

    pub fn degree(&self) -> usize {
        self.l.degree().max(self.g.degree())
    }

    pub fn monotone_certified(&self) -> bool {
        self.bounds.is_some()
    }

    /// `(m_f, M_f)`, the infimum and supremum of `f` on `[0, pi]`.
    pub fn bounds(&self) -> Result<(f64, f64)> {
        self.bounds.ok_or(Error::NotCertified)
    }

    /// Hex SHA-256 of the canonical coefficient lists.
    pub fn digest(&self) -> String {
        let text = format!("l={};g={}", self.l.canonical(), self.g.canonical());
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    pub fn f_eval(&self, theta: f64) -> Result<f64> {
        self.f_real(&theta)
    }

    pub fn f_real<T: Real>(&self, theta: &T) -> Result<T> {
        self.f_with_derivative(theta, false).map(|(v, _)| v)
    }

    /// `f(theta)` and, if requested, `f'(theta)`.
    pub fn f_with_derivative<T: Real>(&self, theta: &T, want_derivative: bool) -> Result<(T, T)> {
        let floor = DIVISION_FLOOR_REL * self.g.l1_norm();
        match &self.reduced {
            Some(ratio) => {
                let x = theta.cos();
                let (n, dn) = horner(&ratio.num, &x);
                let (d, dd) = horner(&ratio.den, &x);
                if d.abs().to_f64() < floor {
                    return Err(Error::DivisionByZero { theta: theta.to_f64(), value: d.to_f64() });
                }
                let value = n.clone() / &d;
                let deriv = if want_derivative {
                    let dfdx = (dn * &d - n * &dd) / (d.clone() * &d);
                    -(theta.sin() * &dfdx)
                } else {
                    x.zero_like()
                };
                Ok((value, deriv))
            }
            None => {
                let (l, dl) = self.l.eval_with_derivative(theta, want_derivative);
                let (g, dg) = self.g.eval_with_derivative(theta, want_derivative);
                if g.abs().to_f64() < floor {
                    return Err(Error::DivisionByZero { theta: theta.to_f64(), value: g.to_f64() });
                }
                let value = l.clone() / &g;
                let deriv = if want_derivative {
                    (dl * &g - l * &dg) / (g.clone() * &g)
                } else {
                    g.zero_like()
                };
                Ok((value, deriv))
            }
        }
    }

    /// Samples `g > 0` on the interior and strict increase of `f` on
    /// `theta_i = i pi / samples`, `i = 0..=samples`.
    pub fn check_monotone(&self, samples: usize) -> MonotoneVerdict {
        let samples = samples.max(2);
        let mut verdict = MonotoneVerdict {
            certified: false,
            samples,
            lower: None,
            upper: None,
            violations: Vec::new(),
            violation_count: 0,
            nonpositive_g: Vec::new(),
            message: String::new(),
        };
        let thetas: Vec<f64> = (0..=samples).map(|i| i as f64 * PI / samples as f64).collect();
        for &t in &thetas[1..samples] {
            if self.g.eval(t) <= 0.0 && verdict.nonpositive_g.len() < MAX_REPORTED {
                verdict.nonpositive_g.push(t);
            }
        }
        if !verdict.nonpositive_g.is_empty() {
            verdict.message = format!("g <= 0 at theta = {}", verdict.nonpositive_g[0]);
            return verdict;
        }
        let mut values = Vec::with_capacity(thetas.len());
        for &t in &thetas {
            match self.f_with_derivative(&t, true) {
                Ok(v) => values.push(v),
                Err(e) => {
                    verdict.message = format!("f undefined: {e}");
                    return verdict;
                }
            }
        }
        let lower = values[0].0;
        let upper = values[samples].0;
        verdict.lower = Some(lower);
        verdict.upper = Some(upper);
        // f' may round slightly negative where it vanishes, so allow a
        // margin proportional to the range.
        let slope_floor = -1e-10 * (upper - lower).abs().max(f64::MIN_POSITIVE);
        for i in 0..samples {
            let rising = values[i].0 < values[i + 1].0;
            let slope_ok = i == 0 || values[i].1 >= slope_floor;
            if !(rising && slope_ok) {
                verdict.violation_count += 1;
                if verdict.violations.len() < MAX_REPORTED {
                    verdict.violations.push((thetas[i], thetas[i + 1]));
                }
            }
        }
        if verdict.violation_count > 0 {
            let (a, b) = verdict.violations[0];
            verdict.message = format!(
                "{} of {} sample steps not increasing, first on [{a}, {b}]",
                verdict.violation_count, samples
            );
        } else if lower.partial_cmp(&upper) != Some(std::cmp::Ordering::Less) {
            verdict.message = "f is constant".to_string();
        } else {
            verdict.certified = true;
            verdict.message = format!("certified: f increases from {lower} to {upper}");
        }
        verdict
    }

    /// Returns a copy carrying the monotonicity certificate and `(m_f, M_f)`.
    pub fn certify(&self, samples: usize) -> Result<SymbolPair> {
        let verdict = self.check_monotone(samples);
        if let Some(&theta) = verdict.nonpositive_g.first() {
            return Err(Error::NonPositivePreconditioner { theta });
        }
        if !verdict.certified {
            return Err(Error::NotMonotone { reason: verdict.message });
        }
        let mut pair = self.clone();
        pair.bounds = Some((verdict.lower.unwrap(), verdict.upper.unwrap()));
        Ok(pair)
    }

    /// An interval holding the spectrum of every `X_n`. Certified pairs give
    /// `(m_f, M_f)`; otherwise the sampled extremes of `f` are widened by
    /// `1e-3` of their spread. Requires `g > 0` on the interior.
    pub fn spectral_bounds(&self) -> Result<(f64, f64)> {
        if let Some(b) = self.bounds {
            return Ok(b);
        }
        let samples = DEFAULT_SAMPLES;
        let thetas: Vec<f64> = (0..=samples).map(|i| i as f64 * PI / samples as f64).collect();
        if let Some(&theta) = thetas[1..samples].iter().find(|t| self.g.eval(**t) <= 0.0) {
            return Err(Error::NonPositivePreconditioner { theta });
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &theta in &thetas {
            let v = self.f_eval(theta)?;
            lo = lo.min(v);
            hi = hi.max(v);
        }
        let pad = 1e-3 * (hi - lo);
        Ok((lo - pad, hi + pad))
    }

    /// [`SymbolPair::spectral_bounds`] at the precision of `like`; exact
    /// `(f(0), f(pi))` for certified pairs.
    pub fn spectral_bounds_real<T: Real>(&self, like: &T) -> Result<(T, T)> {
        if self.monotone_certified() {
            return self.bounds_real(like);
        }
        let (lo, hi) = self.spectral_bounds()?;
        Ok((like.lift(lo), like.lift(hi)))
    }

    /// `(f(0), f(pi))` evaluated at the precision of `like`.
    pub fn bounds_real<T: Real>(&self, like: &T) -> Result<(T, T)> {
        self.bounds()?;
        let lo = self.f_real(&like.zero_like())?;
        let hi = self.f_real(&T::pi(like.bits()))?;
        Ok((lo, hi))
    }

    pub fn f_inverse(&self, phi: f64, tol: f64) -> Result<f64> {
        self.f_inverse_real(&phi, &tol)
    }

    /// `theta in (0, pi)` with `|f(theta) - phi| <= tol * max(1, |phi|)`.
    ///
    /// Bisection keeps a sign-changing bracket until its width drops below
    /// `1e-3`, then Newton steps are taken while they stay inside the
    /// bracket. If the bracket collapses to adjacent representable values
    /// before the residual test passes, the better endpoint is returned.
    pub fn f_inverse_real<T: Real>(&self, phi: &T, tol: &T) -> Result<T> {
        let (m_lo, m_hi) = self.bounds_real(phi)?;
        if !(*phi > m_lo && *phi < m_hi) {
            return Err(Error::NoBracket {
                value: phi.to_f64(),
                lower: m_lo.to_f64(),
                upper: m_hi.to_f64(),
            });
        }
        let scale = phi.abs().max_of(phi.lift(1.0));
        let target = scale * tol;
        let half = phi.lift(0.5);
        let mut lo = phi.zero_like();
        let mut hi = T::pi(phi.bits());
        let switch = phi.lift(INVERSE_BISECTION_WIDTH);
        let cap = 200 + 4 * phi.bits() as usize;

        for _ in 0..cap {
            if hi.clone() - &lo <= switch {
                break;
            }
            let mid = (lo.clone() + &hi) * &half;
            if self.f_real(&mid)? < *phi {
                lo = mid;
            } else {
                hi = mid;
            }
        }

        let mut theta = (lo.clone() + &hi) * &half;
        for _ in 0..cap {
            let (value, slope) = self.f_with_derivative(&theta, true)?;
            let residual = value - phi;
            if residual.abs() <= target {
                return Ok(theta);
            }
            if residual.is_negative() {
                lo = theta.clone();
            } else {
                hi = theta.clone();
            }
            let mid = (lo.clone() + &hi) * &half;
            if mid <= lo || mid >= hi {
                // No representable value strictly inside the bracket.
                let r_lo = (self.f_real(&lo)? - phi).abs();
                let r_hi = (self.f_real(&hi)? - phi).abs();
                return Ok(if r_lo <= r_hi { lo } else { hi });
            }
            let newton = if slope > slope.zero_like() {
                Some(theta.clone() - &(residual / &slope))
            } else {
                None
            };
            theta = match newton {
                Some(t) if t > lo && t < hi => t,
                _ => mid,
            };
        }
        Err(Error::NonConvergence { what: "inverse of f", iterations: cap })
    }
}

/// Default residual tolerance of the inverse: `1e-15` in double,
/// `10^-(digits-5)` in extended precision.
pub fn default_inverse_tol(prec: Precision) -> f64 {
    match prec {
        Precision::Double => 1e-15,
        Precision::Extended { digits } => 10f64.powi(-(digits as i32 - 5)),
    }
}

/// Symbol pairs used throughout the examples and tests.
pub mod catalog {
    use super::{CosinePoly, SymbolPair};

    fn pair(l: &[f64], g: &[f64]) -> SymbolPair {
        SymbolPair::new(
            CosinePoly::new(l.to_vec()).expect("valid literal"),
            CosinePoly::new(g.to_vec()).expect("valid literal"),
        )
    }

    /// `l = 2 - cos - cos 2`, `g = 3 + 2 cos`; `f = 1 - cos`.
    pub fn example1() -> SymbolPair {
        pair(&[2.0, -1.0, -1.0], &[3.0, 2.0])
    }

    /// `l = 40 - 15 cos - 24 cos 2 - cos 3`,
    /// `g = 1208 + 1191 cos + 120 cos 2 + cos 3`.
    pub fn example2() -> SymbolPair {
        pair(&[40.0, -15.0, -24.0, -1.0], &[1208.0, 1191.0, 120.0, 1.0])
    }

    /// `l = 35/2 - 12 cos - 6 cos 2 + cos 4 / 2`,
    /// `g = 8 - 3 cos - 4 cos 2 - cos 3`; `f = 2 - cos`.
    pub fn example3() -> SymbolPair {
        pair(&[17.5, -12.0, -6.0, 0.0, 0.5], &[8.0, -3.0, -4.0, -1.0])
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;
    use proptest::prelude::*;
    use rug::Float;

    fn poly(c: &[f64]) -> CosinePoly {
        CosinePoly::new(c.to_vec()).unwrap()
    }

    #[test]
    fn eval_examples() {
        let g = poly(&[3.0, 2.0]);
        assert_eq!(g.eval(0.0), 5.0);
        assert!((g.eval(PI) - 1.0).abs() < 1e-15);
        let l2 = example2().l().clone();
        assert_eq!(l2.eval(0.0), 0.0);
    }

    #[test]
    fn fourier_examples() {
        let g = poly(&[3.0, 2.0]);
        let a = g.fourier_coeffs(3);
        assert_eq!(a, vec![0.0, 1.0, 3.0, 1.0, 0.0]);
        let l = poly(&[2.0, -1.0, -1.0]);
        assert_eq!(l.fourier_coeffs(3), vec![-0.5, -0.5, 2.0, -0.5, -0.5]);
        let one = poly(&[1.0]);
        assert_eq!(one.fourier_coeffs(2), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(matches!(CosinePoly::new(vec![]), Err(Error::EmptySymbol)));
        assert!(matches!(
            CosinePoly::new(vec![1.0, f64::NAN]),
            Err(Error::NonFiniteCoefficient { index: 1, .. })
        ));
        assert_eq!(poly(&[2.0, -1.0, 0.0, 0.0]).degree(), 1);
    }

    #[test]
    fn parse_formats() {
        let p: CosinePoly = "[2, -1, -1]".parse().unwrap();
        assert_eq!(p.coeffs(), &[2.0, -1.0, -1.0]);
        let q: CosinePoly = "17.5 -12 -6 0 0.5".parse().unwrap();
        assert_eq!(q.degree(), 4);
        assert!("[1, x]".parse::<CosinePoly>().is_err());
        assert_eq!(p.to_string().parse::<CosinePoly>().unwrap(), p);
    }

    #[test]
    fn f_eval_examples() {
        let e1 = example1();
        assert!((e1.f_eval(PI / 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(e1.f_eval(1e-9).unwrap().abs() < 1e-15);
        let e3 = example3();
        assert!((e3.f_eval(0.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((e3.f_eval(1.3).unwrap() - (2.0 - 1.3f64.cos())).abs() < 1e-14);
    }

    #[test]
    fn division_floor() {
        // g = cos(theta) vanishes at pi/2 and l shares no factor with it
        let pair = SymbolPair::new(poly(&[1.0]), poly(&[0.0, 1.0]));
        assert!(matches!(pair.f_eval(PI / 2.0), Err(Error::DivisionByZero { .. })));
    }

    #[test]
    fn power_basis_matches_cosine_form() {
        let p = poly(&[17.5, -12.0, -6.0, 0.0, 0.5]);
        let pb = p.power_basis();
        assert_eq!(pb, vec![24.0, -12.0, -16.0, 0.0, 4.0]);
        for t in [0.1, 1.0, 2.5] {
            assert!((horner_f64(&pb, f64::cos(t)) - p.eval(t)).abs() < 1e-12);
        }
    }

    #[test]
    fn example3_factor_is_removed() {
        let pair = example3();
        let r = pair.reduced.as_ref().unwrap();
        assert_eq!(r.den.len(), 3);
    }

    #[test]
    fn monotone_examples() {
        let v = example1().check_monotone(1000);
        assert!(v.certified, "{}", v.message);
        assert!(v.lower.unwrap().abs() < 1e-15);
        assert!((v.upper.unwrap() - 2.0).abs() < 1e-15);

        let v3 = example3().check_monotone(1000);
        assert!(v3.certified, "{}", v3.message);
        assert!((v3.lower.unwrap() - 1.0).abs() < 1e-14);
        assert!((v3.upper.unwrap() - 3.0).abs() < 1e-14);

        assert!(example2().check_monotone(DEFAULT_SAMPLES).certified);

        let g = poly(&[3.0, 2.0]);
        let flat = SymbolPair::new(g.clone(), g);
        let v = flat.check_monotone(1000);
        assert!(!v.certified);
        assert!(v.violation_count > 0);
    }

    #[test]
    fn certification_errors() {
        let neg = SymbolPair::new(poly(&[1.0]), poly(&[0.0, 1.0]));
        assert!(matches!(neg.certify(100), Err(Error::NonPositivePreconditioner { .. })));
        let dec = SymbolPair::new(poly(&[0.0, 1.0]), poly(&[1.0]));
        assert!(matches!(dec.certify(100), Err(Error::NotMonotone { .. })));
        assert!(matches!(example1().f_inverse(1.0, 1e-15), Err(Error::NotCertified)));
    }

    #[test]
    fn inverse_examples() {
        let e1 = example1().certify(DEFAULT_SAMPLES).unwrap();
        assert!((e1.f_inverse(1.0, 1e-15).unwrap() - PI / 2.0).abs() < 1e-14);
        // 1 - cos(pi/4) = (2 - sqrt 2) / 2
        let phi = (2.0 - 2f64.sqrt()) / 2.0;
        assert!((e1.f_inverse(phi, 1e-15).unwrap() - PI / 4.0).abs() < 1e-14);
        let phi = 2.0 - 2f64.sqrt();
        let expected = (2f64.sqrt() - 1.0).acos();
        assert!((e1.f_inverse(phi, 1e-15).unwrap() - expected).abs() < 1e-14);
        assert!(matches!(e1.f_inverse(2.5, 1e-15), Err(Error::NoBracket { .. })));
        assert!(matches!(e1.f_inverse(0.0, 1e-15), Err(Error::NoBracket { .. })));

        let e2 = example2().certify(DEFAULT_SAMPLES).unwrap();
        let phi = e2.f_eval(1.0).unwrap();
        assert!((e2.f_inverse(phi, 1e-15).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn inverse_extended() {
        let e1 = example1().certify(DEFAULT_SAMPLES).unwrap();
        let bits = Precision::extended(60).unwrap().bits();
        let phi = Float::with_val(bits, 1) / Float::with_val(bits, 3);
        let tol = <Float as Real>::exp10(-55, bits);
        let theta = e1.f_inverse_real(&phi, &tol).unwrap();
        // arccos(1 - 1/3) = arccos(2/3)
        let exact = Float::with_val(bits, 2) / Float::with_val(bits, 3);
        let exact = exact.acos();
        assert!((theta - exact).abs() < 1e-54);
    }

    #[test]
    fn digest_depends_on_coefficients() {
        assert_eq!(example1().digest(), example1().digest());
        assert_ne!(example1().digest(), example3().digest());
    }

    /// Periodic trapezoidal rule: exact for trigonometric polynomials of
    /// degree below the number of nodes.
    fn fourier_by_quadrature(p: &CosinePoly, j: i64, nodes: usize) -> f64 {
        let h = 2.0 * PI / nodes as f64;
        (0..nodes)
            .map(|i| {
                let t = -PI + i as f64 * h;
                p.eval(t) * (j as f64 * t).cos()
            })
            .sum::<f64>()
            / nodes as f64
    }

    proptest! {
        #[test]
        fn evenness(c in prop::collection::vec(-10.0f64..10.0, 1..9), t in -PI..PI) {
            let p = CosinePoly::new(c).unwrap();
            prop_assert_eq!(p.eval(t), p.eval(-t));
        }

        #[test]
        fn fourier_reconstruction(c in prop::collection::vec(-5.0f64..5.0, 1..9)) {
            let p = CosinePoly::new(c).unwrap();
            let a = p.fourier_coeffs(12);
            for j in -11i64..=11 {
                let q = fourier_by_quadrature(&p, j, 64);
                prop_assert!((q - a[(j + 11) as usize]).abs() < 1e-12);
            }
        }

        #[test]
        fn inverse_round_trip(theta in 0.05f64..(PI - 0.05)) {
            let pair = example2().certify(2000).unwrap();
            let tol = 1e-15;
            let phi = pair.f_eval(theta).unwrap();
            let back = pair.f_inverse(phi, tol).unwrap();
            let d = 1e-6;
            let slope = (pair.f_eval(theta + d).unwrap() - pair.f_eval(theta - d).unwrap()) / (2.0 * d);
            prop_assert!((back - theta).abs() <= 10.0 * tol / slope.abs());
        }
    }
}
