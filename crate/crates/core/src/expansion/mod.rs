//! Nested grids, coefficient extrapolation, interpolation and the
//! linear-time eigenvalue reconstruction.

pub mod extrapolate;
pub mod grid;
pub mod interp;
pub mod table;

pub use extrapolate::{extrapolate_node, solve_extrapolation};
pub use grid::{make_grid, GridPoint, GridSpec};
pub use table::{
    approx_eigs, fill_endpoints, interp_coeff, precompute, Approximation, ExpansionTable, Space,
    FORMAT_VERSION,
};

use crate::error::Result;
use crate::real::Precision;
use crate::spectra::{all_eigs_f64, default_tol};
use crate::symbols::SymbolPair;

/// Empirical size of the truncation term at one level.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorTermBudget {
    pub levels: usize,
    pub k: usize,
    /// `(n, (n+1)^k max_j |lambda_j - approx_j|)` per order.
    pub normalized: Vec<(usize, f64)>,
    /// Largest normalized error over the orders.
    pub c_hat: f64,
}

/// Normalized level-`k` errors against a double-precision spectrum.
pub fn estimate_error_constant(
    table: &ExpansionTable,
    pair: &SymbolPair,
    orders: &[usize],
    k: usize,
) -> Result<ErrorTermBudget> {
    let (lower, upper) = pair.bounds()?;
    let tol = default_tol(Precision::Double, upper - lower);
    let mut normalized = Vec::with_capacity(orders.len());
    for &n in orders {
        let exact = all_eigs_f64(pair, n, tol)?;
        let approx = table.approx_eigs(pair, n, k)?;
        let err = exact.iter().zip(&approx.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        normalized.push((n, err * ((n + 1) as f64).powi(k as i32)));
    }
    let c_hat = normalized.iter().map(|(_, c)| *c).fold(0.0, f64::max);
    Ok(ErrorTermBudget { levels: table.levels(), k, normalized, c_hat })
}
