use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::extrapolate::extrapolate_node;
use crate::expansion::grid::{GridPoint, GridSpec};
use crate::expansion::interp::{barycentric, equispaced_weights, extrapolate_to, window_start, window_start_exact};
use crate::real::{float_from_decimal, float_to_decimal, Precision, Real};
use crate::spectra::{default_tol, Pencil};
use crate::symbols::{default_inverse_tol, CosinePoly, SymbolPair};

pub const FORMAT_VERSION: u32 = 1;

/// Which quantity the coefficients expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Space {
    /// `lambda_j = f(s_{j,n})`, `s_{j,n} = theta_{j,n} + sum rho_k h^k`.
    #[serde(rename = "s")]
    SVariable,
    /// `lambda_j = f(theta_{j,n}) + sum c_k h^k`.
    #[serde(rename = "lambda")]
    Lambda,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::SVariable => "s",
            Space::Lambda => "lambda",
        })
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "s" | "s-variable" | "s_variable" => Ok(Space::SVariable),
            "lambda" | "l" => Ok(Space::Lambda),
            other => Err(Error::Parse(format!("unknown space {other:?} (expected s or lambda)"))),
        }
    }
}

/// Extrapolated coefficients on the coarse nodes `sigma_0 = 0, ..., sigma_{n1+1} = pi`.
///
/// Coefficients are kept at the precompute precision; a rounded `f64` copy
/// serves the reconstruction phase.
#[derive(Debug, Clone)]
pub struct ExpansionTable {
    space: Space,
    grid: GridSpec,
    precision: Precision,
    l: CosinePoly,
    g: CosinePoly,
    digest: String,
    /// `coeffs[k - 1][j1]`.
    coeffs: Vec<Vec<Float>>,
    rounded: Vec<Vec<f64>>,
    weights: Vec<Vec<f64>>,
    filled: bool,
}

/// Reconstructed eigenvalues in index order `j = 1..=n`.
#[derive(Debug, Clone)]
pub struct Approximation {
    pub values: Vec<f64>,
    /// Arguments `theta + correction` that fell outside `(0, pi)`.
    pub clamped: usize,
}

impl ExpansionTable {
    /// A table from interior values only, `interior[k - 1][j1 - 1]`;
    /// endpoints stay empty until [`ExpansionTable::fill_endpoints`].
    pub fn from_interior(
        pair: &SymbolPair,
        grid: GridSpec,
        space: Space,
        precision: Precision,
        interior: Vec<Vec<Float>>,
    ) -> Result<Self> {
        if interior.len() != grid.levels() {
            return Err(Error::LengthMismatch { left: interior.len(), right: grid.levels() });
        }
        let bits = precision.bits();
        let mut coeffs = Vec::with_capacity(grid.levels());
        for row in interior {
            if row.len() != grid.n1() {
                return Err(Error::LengthMismatch { left: row.len(), right: grid.n1() });
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite { what: "table coefficient" });
            }
            let mut full = Vec::with_capacity(grid.node_count());
            full.push(Float::with_val(bits, 0));
            full.extend(row.into_iter().map(|v| Float::with_val(bits, v)));
            full.push(Float::with_val(bits, 0));
            coeffs.push(full);
        }
        let weights = (1..=grid.levels()).map(|k| equispaced_weights(grid.levels() - k + 5)).collect();
        let mut table = ExpansionTable {
            space,
            grid,
            precision,
            l: pair.l().clone(),
            g: pair.g().clone(),
            digest: pair.digest(),
            coeffs,
            rounded: Vec::new(),
            weights,
            filled: false,
        };
        table.refresh_rounded();
        Ok(table)
    }

    fn refresh_rounded(&mut self) {
        self.rounded = self.coeffs.iter().map(|row| row.iter().map(|v| v.to_f64()).collect()).collect();
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn digest(&self) -> &str {
        &self.digest
    }

    pub fn l(&self) -> &CosinePoly {
        &self.l
    }

    pub fn g(&self) -> &CosinePoly {
        &self.g
    }

    pub fn levels(&self) -> usize {
        self.grid.levels()
    }

    pub fn is_filled(&self) -> bool {
        self.filled
    }

    /// Stored coefficient of level `k` at node `j1` (`0..=n1+1`).
    pub fn coeff(&self, k: usize, j1: usize) -> &Float {
        &self.coeffs[k - 1][j1]
    }

    /// All stored coefficients of level `k`, endpoints included.
    pub fn row(&self, k: usize) -> &[Float] {
        &self.coeffs[k - 1]
    }

    fn check_level(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.levels() {
            return Err(Error::LevelOutOfRange { k, levels: self.levels() });
        }
        Ok(())
    }

    /// Sets `rho_k(0)` and `rho_k(pi)` from the polynomial through the
    /// `K - k + 5` interior nodes nearest to each end.
    pub fn fill_endpoints(mut self) -> Self {
        let n1 = self.grid.n1();
        let levels = self.levels();
        for (idx, row) in self.coeffs.iter_mut().enumerate() {
            let w = levels - (idx + 1) + 5;
            row[0] = extrapolate_to(&row[1..=w], 1, 0);
            let start = n1 + 1 - w;
            row[n1 + 1] = extrapolate_to(&row[start..=n1], start, (n1 + 1) as i64);
        }
        self.refresh_rounded();
        self.filled = true;
        self
    }

    /// Interpolated coefficient of level `k` at `theta in [0, pi]`.
    pub fn interp_coeff(&self, k: usize, theta: f64) -> Result<f64> {
        self.check_level(k)?;
        if !self.filled {
            return Err(Error::EndpointsMissing);
        }
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::OutOfRange { theta });
        }
        let count = self.grid.node_count();
        let scale = (self.grid.n1() + 1) as f64;
        let t = theta * scale / std::f64::consts::PI;
        let nearest = (t.round() as usize).min(count - 1);
        if self.grid.node(nearest).theta() == theta || t == nearest as f64 {
            return Ok(self.rounded[k - 1][nearest]);
        }
        let w = self.weights[k - 1].len();
        let start = window_start(t, w, count);
        let offsets: Vec<f64> = (start..start + w).map(|x| t - x as f64).collect();
        Ok(barycentric(&self.rounded[k - 1][start..start + w], &offsets, &self.weights[k - 1]))
    }

    /// [`ExpansionTable::interp_coeff`] at an exact grid point.
    pub fn interp_at(&self, k: usize, point: GridPoint) -> Result<f64> {
        self.check_level(k)?;
        if !self.filled {
            return Err(Error::EndpointsMissing);
        }
        if point.num() > point.den() {
            return Err(Error::OutOfRange { theta: point.theta() });
        }
        Ok(self.interp_unchecked(k, point))
    }

    fn interp_unchecked(&self, k: usize, point: GridPoint) -> f64 {
        let row = &self.rounded[k - 1];
        // position in coarse index units: num (n1+1) / den
        let num = point.num() as u128 * (self.grid.n1() + 1) as u128;
        let den = point.den() as u128;
        if num.is_multiple_of(den) {
            return row[(num / den) as usize];
        }
        let weights = &self.weights[k - 1];
        let w = weights.len();
        let start = window_start_exact(num, den, w, self.grid.node_count());
        let mut offsets = [0.0f64; 32];
        for (i, o) in offsets.iter_mut().enumerate().take(w) {
            let x = (start + i) as i128;
            *o = (num as i128 - x * den as i128) as f64 / den as f64;
        }
        barycentric(&row[start..start + w], &offsets[..w], weights)
    }

    /// `sum_{l=1}^{terms} rho_l(theta_{j,n}) h^l`.
    pub fn correction(&self, n: usize, j: usize, terms: usize) -> Result<f64> {
        if terms > self.levels() {
            return Err(Error::LevelOutOfRange { k: terms, levels: self.levels() });
        }
        if !self.filled {
            return Err(Error::EndpointsMissing);
        }
        if j > n + 1 {
            return Err(Error::IndexOutOfRange { j, n });
        }
        Ok(self.correction_unchecked(n, j, terms))
    }

    fn correction_unchecked(&self, n: usize, j: usize, terms: usize) -> f64 {
        let h = 1.0 / (n + 1) as f64;
        let point = GridPoint::new(j as u64, n as u64);
        let mut acc = 0.0;
        let mut p = h;
        for level in 1..=terms {
            acc += self.interp_unchecked(level, point) * p;
            p *= h;
        }
        acc
    }

    /// Level-`k` approximation of all `n` eigenvalues of `X_n`.
    pub fn approx_eigs(&self, pair: &SymbolPair, n: usize, k: usize) -> Result<Approximation> {
        self.check_level(k)?;
        if !self.filled {
            return Err(Error::EndpointsMissing);
        }
        let digest = pair.digest();
        if digest != self.digest {
            return Err(Error::DigestMismatch { table: self.digest.clone(), symbols: digest });
        }
        let pi = std::f64::consts::PI;
        let results = (1..n + 1)
            .into_par_iter()
            .with_min_len(1024)
            .map(|j| {
                let theta = GridPoint::new(j as u64, n as u64).theta();
                let correction = self.correction_unchecked(n, j, k - 1);
                match self.space {
                    Space::SVariable => {
                        let arg = theta + correction;
                        let inside = arg > 0.0 && arg < pi;
                        Ok((pair.f_eval(arg.clamp(0.0, pi))?, !inside))
                    }
                    Space::Lambda => Ok((pair.f_eval(theta)? + correction, false)),
                }
            })
            .collect::<Result<Vec<(f64, bool)>>>()?;
        let clamped = results.iter().filter(|(_, c)| *c).count();
        Ok(Approximation { values: results.into_iter().map(|(v, _)| v).collect(), clamped })
    }

    pub fn to_toml(&self) -> Result<String> {
        let n1 = self.grid.n1();
        let doc = TableDoc {
            format_version: FORMAT_VERSION,
            space: self.space,
            n1,
            levels: self.levels(),
            precision: self.precision.tag(),
            l: self.l.coeffs().to_vec(),
            g: self.g.coeffs().to_vec(),
            digest: self.digest.clone(),
            node: (0..self.grid.node_count())
                .map(|j1| NodeDoc {
                    j1,
                    sigma: format!("{}/{}", j1, n1 + 1),
                    coeffs: self.coeffs.iter().map(|row| float_to_decimal(&row[j1])).collect(),
                })
                .collect(),
        };
        toml::to_string(&doc).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let doc: TableDoc = toml::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        if doc.format_version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported format version {}", doc.format_version)));
        }
        let pair = SymbolPair::new(CosinePoly::new(doc.l)?, CosinePoly::new(doc.g)?);
        if pair.digest() != doc.digest {
            return Err(Error::DigestMismatch { table: doc.digest, symbols: pair.digest() });
        }
        let grid = GridSpec::new(doc.n1, doc.levels)?;
        let precision = Precision::from_digits(doc.precision)
            .map_err(|_| Error::Format(format!("bad precision {}", doc.precision)))?;
        if doc.node.len() != grid.node_count() {
            return Err(Error::Format(format!("expected {} nodes, found {}", grid.node_count(), doc.node.len())));
        }
        let bits = precision.bits();
        let mut coeffs = vec![Vec::with_capacity(grid.node_count()); grid.levels()];
        for (expected, node) in doc.node.iter().enumerate() {
            if node.j1 != expected || node.sigma != format!("{}/{}", expected, doc.n1 + 1) {
                return Err(Error::Format(format!("node {expected} out of order or mislabelled")));
            }
            if node.coeffs.len() != grid.levels() {
                return Err(Error::Format(format!("node {expected} has {} coefficients", node.coeffs.len())));
            }
            for (row, text) in coeffs.iter_mut().zip(&node.coeffs) {
                let v = float_from_decimal(text, bits)?;
                if !v.is_finite() {
                    return Err(Error::NonFinite { what: "table coefficient" });
                }
                row.push(v);
            }
        }
        let weights = (1..=grid.levels()).map(|k| equispaced_weights(grid.levels() - k + 5)).collect();
        let mut table = ExpansionTable {
            space: doc.space,
            grid,
            precision,
            l: pair.l().clone(),
            g: pair.g().clone(),
            digest: doc.digest,
            coeffs,
            rounded: Vec::new(),
            weights,
            filled: true,
        };
        table.refresh_rounded();
        Ok(table)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_toml()?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }
}

#[derive(Serialize, Deserialize)]
struct TableDoc {
    format_version: u32,
    space: Space,
    n1: usize,
    levels: usize,
    /// Decimal digits, 0 for IEEE double.
    precision: u32,
    l: Vec<f64>,
    g: Vec<f64>,
    digest: String,
    node: Vec<NodeDoc>,
}

#[derive(Serialize, Deserialize)]
struct NodeDoc {
    j1: usize,
    sigma: String,
    coeffs: Vec<String>,
}

/// Eigenvalue solvers for one level, shared by every node.
struct Level {
    order: usize,
    double: Pencil<f64>,
    extended: Option<Pencil<Float>>,
}

/// Offsets `s_{j_k,n_k} - sigma` (or `lambda_{j_k} - f(sigma)`), `k = 1..=K`.
fn node_deltas(
    pair: &SymbolPair,
    grid: &GridSpec,
    space: Space,
    prec: Precision,
    levels: &[Level],
    j1: usize,
) -> Result<Vec<Float>> {
    let bits = prec.bits();
    let (lower, upper) = pair.bounds()?;
    let double_tol = default_tol(Precision::Double, upper - lower);
    let like = Float::with_val(bits, 0);
    let range = Float::with_val(bits, upper - lower);
    let eig_tol = match prec {
        Precision::Double => like.lift(double_tol),
        Precision::Extended { digits } => range * <Float as Real>::exp10(-(digits as i32 - 8), bits),
    };
    let inverse_tol = match prec {
        Precision::Double => like.lift(default_inverse_tol(prec)),
        Precision::Extended { digits } => <Float as Real>::exp10(-(digits as i32 - 5), bits),
    };
    let sigma: Float = grid.node(j1).theta_real(bits);
    let anchor = match space {
        Space::SVariable => sigma,
        Space::Lambda => pair.f_real(&sigma)?,
    };
    levels
        .iter()
        .enumerate()
        .map(|(idx, level)| {
            let k = idx + 1;
            let j = grid.index_at(j1, k);
            let at = |e: Error| e.at_node(j1, k);
            let seed = level.double.eig_by_index(j, &double_tol).map_err(at)?;
            let lambda = match &level.extended {
                None => Float::with_val(bits, seed),
                Some(p) => p.eig_near(j, &eig_tol, &Float::with_val(bits, seed)).map_err(at)?,
            };
            debug_assert_eq!(level.order, grid.order(k));
            let value = match space {
                Space::SVariable => pair.f_inverse_real(&lambda, &inverse_tol).map_err(at)?,
                Space::Lambda => lambda,
            };
            Ok(value - &anchor)
        })
        .collect()
}

/// Computes `rho_hat_1..rho_hat_K` (or `c_hat`) at every interior coarse
/// node from eigenvalues of `X_{n_1}, ..., X_{n_K}`, then fills endpoints.
pub fn precompute(pair: &SymbolPair, grid: &GridSpec, space: Space, prec: Precision) -> Result<ExpansionTable> {
    if !pair.monotone_certified() {
        return Err(Error::NotCertified);
    }
    let bits = prec.bits();
    let levels = (1..=grid.levels())
        .map(|k| {
            let order = grid.order(k);
            let double = Pencil::<f64>::new(pair, order, 53, Precision::Double.digits())?;
            let extended = if prec.is_extended() {
                Some(Pencil::<Float>::new(pair, order, bits, prec.digits())?)
            } else {
                None
            };
            Ok(Level { order, double, extended })
        })
        .collect::<Result<Vec<Level>>>()?;

    let per_node = (1..=grid.n1())
        .into_par_iter()
        .map(|j1| {
            let deltas = node_deltas(pair, grid, space, prec, &levels, j1)?;
            extrapolate_node(&deltas, grid).map_err(|e| e.at_node(j1, grid.levels()))
        })
        .collect::<Result<Vec<Vec<Float>>>>()?;

    if space == Space::SVariable {
        check_domain(grid, &per_node, bits)?;
    }
    let interior: Vec<Vec<Float>> =
        (0..grid.levels()).map(|k| per_node.iter().map(|node| node[k].clone()).collect()).collect();
    Ok(ExpansionTable::from_interior(pair, grid.clone(), space, prec, interior)?.fill_endpoints())
}

/// `sigma + sum rho_k h_1^k` must stay inside `(0, pi)` at every node.
fn check_domain(grid: &GridSpec, per_node: &[Vec<Float>], bits: u32) -> Result<()> {
    let h: Float = grid.step_real(1, bits);
    let pi = <Float as Real>::pi(bits);
    for (idx, rho) in per_node.iter().enumerate() {
        let j1 = idx + 1;
        let mut s: Float = grid.node(j1).theta_real(bits);
        let mut p = h.clone();
        for r in rho {
            s += &(r.clone() * &p);
            p *= &h;
        }
        if s <= 0 || s >= pi {
            return Err(Error::OutOfRange { theta: s.to_f64() }.at_node(j1, 1));
        }
    }
    Ok(())
}

pub fn fill_endpoints(table: ExpansionTable) -> ExpansionTable {
    table.fill_endpoints()
}

pub fn interp_coeff(table: &ExpansionTable, k: usize, theta: f64) -> Result<f64> {
    table.interp_coeff(k, theta)
}

pub fn approx_eigs(table: &ExpansionTable, pair: &SymbolPair, n: usize, k: usize) -> Result<Approximation> {
    table.approx_eigs(pair, n, k)
}
