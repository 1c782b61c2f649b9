use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::real::Real;

/// `theta = num * pi / den`, kept as an exact rational multiple of pi.
///
/// For the canonical grid `theta_{j,n} = j pi / (n + 1)` the pair is
/// `(j, n + 1)`, which makes `theta_{j,n} = theta_{cj, c(n+1)-1}` an exact
/// identity rather than a floating-point coincidence.
#[derive(Debug, Clone, Copy)]
pub struct GridPoint {
    num: u64,
    den: u64,
}

impl GridPoint {
    /// `theta_{j,n} = j pi / (n + 1)`, `0 <= j <= n + 1`.
    pub fn new(j: u64, n: u64) -> Self {
        GridPoint { num: j, den: n + 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// The same point seen on the grid of order `c (n + 1) - 1`.
    pub fn refine(&self, c: u64) -> GridPoint {
        GridPoint { num: self.num * c, den: self.den * c }
    }

    /// Lowest terms, so that equal points evaluate to identical angles.
    fn reduced(&self) -> (u64, u64) {
        let (mut a, mut b) = (self.num, self.den);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        (self.num / a, self.den / a)
    }

    pub fn theta(&self) -> f64 {
        let (num, den) = self.reduced();
        num as f64 * std::f64::consts::PI / den as f64
    }

    pub fn theta_real<T: Real>(&self, bits: u32) -> T {
        let (num, den) = self.reduced();
        T::pi(bits) * &T::from_ratio(num as i64, den as i64, bits)
    }
}

impl PartialEq for GridPoint {
    fn eq(&self, other: &Self) -> bool {
        self.num as u128 * other.den as u128 == other.num as u128 * self.den as u128
    }
}

impl Eq for GridPoint {}

impl PartialOrd for GridPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GridPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Nested orders `n_k = 2^{k-1} (n_1 + 1) - 1`, `k = 1..=K`, on which
/// `theta_{j_1, n_1} = theta_{j_k, n_k}` with `j_k = 2^{k-1} j_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    n1: usize,
    levels: usize,
    orders: Vec<usize>,
}

/// Largest accepted `K`; keeps every `n_k` far from overflow.
const MAX_LEVELS: usize = 24;

impl GridSpec {
    pub fn new(n1: usize, levels: usize) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidGrid { n1, levels, reason: reason.to_string() };
        if levels == 0 {
            return Err(invalid("K must be at least 1"));
        }
        if levels > MAX_LEVELS {
            return Err(invalid("K too large"));
        }
        if n1 < levels + 5 {
            return Err(invalid("n1 must be at least K + 5 for the interpolation stencils"));
        }
        let orders: Vec<usize> = (0..levels)
            .map(|k| (1usize << k).checked_mul(n1 + 1).map(|v| v - 1))
            .collect::<Option<_>>()
            .ok_or_else(|| invalid("orders overflow"))?;
        let grid = GridSpec { n1, levels, orders };
        for j1 in 1..=n1 {
            let sigma = grid.node(j1);
            for k in 1..=levels {
                let p = GridPoint::new(grid.index_at(j1, k) as u64, grid.order(k) as u64);
                if p != sigma {
                    return Err(invalid("nested node identity violated"));
                }
            }
        }
        Ok(grid)
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    /// `K`.
    pub fn levels(&self) -> usize {
        self.levels
    }

    /// `n_k`, `k` 1-based.
    pub fn order(&self, k: usize) -> usize {
        self.orders[k - 1]
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    /// `j_k = 2^{k-1} j_1`.
    pub fn index_at(&self, j1: usize, k: usize) -> usize {
        j1 << (k - 1)
    }

    /// `sigma_{j1} = theta_{j1, n1}` for `j1 = 0..=n1+1`.
    pub fn node(&self, j1: usize) -> GridPoint {
        GridPoint::new(j1 as u64, self.n1 as u64)
    }

    /// Number of coarse nodes including both endpoints.
    pub fn node_count(&self) -> usize {
        self.n1 + 2
    }

    /// `h_k = 1 / (n_k + 1)`.
    pub fn step(&self, k: usize) -> f64 {
        1.0 / (self.order(k) + 1) as f64
    }

    pub fn step_real<T: Real>(&self, k: usize, bits: u32) -> T {
        T::from_ratio(1, (self.order(k) + 1) as i64, bits)
    }
}

pub fn make_grid(n1: usize, levels: usize) -> Result<GridSpec> {
    GridSpec::new(n1, levels)
}
