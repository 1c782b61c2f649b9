//! Local polynomial interpolation on the equispaced coarse nodes, in index
//! units `t = theta (n1 + 1) / pi` so that node `i` sits at `t = i`.

use crate::real::Real;

/// Barycentric weights `(-1)^i C(w-1, i)` for `w` consecutive nodes.
pub fn equispaced_weights(w: usize) -> Vec<f64> {
    let mut weights = Vec::with_capacity(w);
    let mut c = 1.0f64;
    for i in 0..w {
        weights.push(if i % 2 == 0 { c } else { -c });
        c = c * (w - 1 - i) as f64 / (i + 1) as f64;
    }
    weights
}

fn ceil_div(a: i128, b: i128) -> i128 {
    let q = a.div_euclid(b);
    if a.rem_euclid(b) == 0 {
        q
    } else {
        q + 1
    }
}

/// First node of the `w` nodes nearest to `t = num / den` among `0..count`.
///
/// The window is centred by `start = ceil(t - w/2)`, which picks the left
/// window when `t` is equidistant from two candidate stencils.
pub fn window_start_exact(num: u128, den: u128, w: usize, count: usize) -> usize {
    debug_assert!(w <= count && den > 0);
    let top = 2 * num as i128 - w as i128 * den as i128;
    let start = ceil_div(top, 2 * den as i128);
    start.clamp(0, (count - w) as i128) as usize
}

/// [`window_start_exact`] for a floating-point position.
pub fn window_start(t: f64, w: usize, count: usize) -> usize {
    let start = (t - w as f64 / 2.0).ceil();
    start.clamp(0.0, (count - w) as f64) as usize
}

/// Second-form barycentric sum given the offsets `t - x_i` (none zero).
pub fn barycentric(values: &[f64], offsets: &[f64], weights: &[f64]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for ((y, d), w) in values.iter().zip(offsets).zip(weights) {
        let q = w / d;
        num += q * y;
        den += q;
    }
    num / den
}

/// Value at integer position `t` of the polynomial through
/// `(start + i, values[i])`, with `t` outside the stencil.
pub fn extrapolate_to<T: Real>(values: &[T], start: usize, t: i64) -> T {
    let weights = equispaced_weights(values.len());
    let zero = values[0].zero_like();
    let mut num = zero.clone();
    let mut den = zero;
    for (i, (y, w)) in values.iter().zip(&weights).enumerate() {
        let offset = t - (start + i) as i64;
        debug_assert!(offset != 0);
        let q = y.lift(*w) / &y.lift(offset as f64);
        num += &(q.clone() * y);
        den += &q;
    }
    num / &den
}
