use crate::error::{Error, Result};
use crate::expansion::grid::GridSpec;
use crate::real::Real;

/// Solves `sum_{i=1}^{K} rho_i h_k^i = delta_k`, `k = 1..=K`.
///
/// Columns are scaled by `h_max^i` before elimination so that the matrix
/// entries are `(h_k / h_max)^i <= 1`; for the nested grid these are exact
/// powers of two.
pub fn solve_extrapolation<T: Real>(deltas: &[T], steps: &[T]) -> Result<Vec<T>> {
    let size = deltas.len();
    if size == 0 || steps.len() != size {
        return Err(Error::LengthMismatch { left: deltas.len(), right: steps.len() });
    }
    let zero = deltas[0].zero_like();
    let h_max = steps.iter().cloned().fold(zero.clone(), |a, b| a.max_of(b.abs()));
    if h_max == zero {
        return Err(Error::SingularSystem);
    }

    let mut a: Vec<Vec<T>> = steps
        .iter()
        .map(|h| {
            let ratio = h.clone() / &h_max;
            let mut row = Vec::with_capacity(size);
            let mut p = ratio.clone();
            for _ in 0..size {
                row.push(p.clone());
                p *= &ratio;
            }
            row
        })
        .collect();
    let mut b: Vec<T> = deltas.to_vec();

    for col in 0..size {
        let pivot = (col..size)
            .max_by(|&x, &y| a[x][col].abs().partial_cmp(&a[y][col].abs()).expect("finite"))
            .expect("non-empty");
        if a[pivot][col] == zero {
            return Err(Error::SingularSystem);
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..size {
            let factor = a[row][col].clone() / &a[col][col];
            let (upper, lower) = a.split_at_mut(row);
            for (dst, src) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                let t = factor.clone() * src;
                *dst -= &t;
            }
            let t = factor * &b[col];
            b[row] -= &t;
        }
    }
    let mut x = vec![zero; size];
    for row in (0..size).rev() {
        let mut acc = b[row].clone();
        for c in row + 1..size {
            acc -= &(a[row][c].clone() * &x[c]);
        }
        x[row] = acc / &a[row][row];
    }
    // Undo the column scaling: rho_i = x_i / h_max^i.
    let mut scale = h_max.clone();
    for xi in x.iter_mut() {
        *xi /= &scale;
        scale *= &h_max;
    }
    Ok(x)
}

/// `rho_hat_1..rho_hat_K` at one coarse node from the `K` offsets
/// `s_{j_k, n_k} - sigma` (or `lambda_{j_k} - f(sigma)`).
pub fn extrapolate_node<T: Real>(deltas: &[T], grid: &GridSpec) -> Result<Vec<T>> {
    if deltas.len() != grid.levels() {
        return Err(Error::LengthMismatch { left: deltas.len(), right: grid.levels() });
    }
    if deltas.iter().any(|d| !d.is_finite()) {
        return Err(Error::NonFinite { what: "extrapolation input" });
    }
    let bits = deltas[0].bits();
    let steps: Vec<T> = (1..=grid.levels()).map(|k| grid.step_real(k, bits)).collect();
    solve_extrapolation(deltas, &steps)
}
