//! Brute-force oracles shared by the integration tests. None of them use
//! the banded factorization under test.

#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::OnceLock;

use matrixless::expansion::{make_grid, precompute, ExpansionTable, Space};
use matrixless::harness::Oracle;
use matrixless::symbols::{catalog, DEFAULT_SAMPLES};
use matrixless::{CosinePoly, Precision, SymbolPair};

pub fn example(i: usize) -> SymbolPair {
    let pair = match i {
        1 => catalog::example1(),
        2 => catalog::example2(),
        3 => catalog::example3(),
        _ => panic!("no example {i}"),
    };
    pair.certify(DEFAULT_SAMPLES).unwrap()
}

/// Dense `T_n(p)` from the Fourier coefficients `a_k = c_k / 2`, `a_0 = c_0`.
pub fn dense_toeplitz(p: &CosinePoly, n: usize) -> Vec<Vec<f64>> {
    let a = |k: usize| -> f64 {
        match k {
            0 => p.coeffs()[0],
            k if k < p.coeffs().len() => p.coeffs()[k] / 2.0,
            _ => 0.0,
        }
    };
    (0..n).map(|i| (0..n).map(|j| a(i.abs_diff(j))).collect()).collect()
}

/// Sign of `det(A - lambda B)` by Gaussian elimination with partial pivoting.
pub fn det_sign(a: &[Vec<f64>], b: &[Vec<f64>], lambda: f64) -> f64 {
    let n = a.len();
    let mut m: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|j| a[i][j] - lambda * b[i][j]).collect()).collect();
    let mut sign = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| m[x][c].abs().total_cmp(&m[y][c].abs())).unwrap();
        if m[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        sign *= m[c][c].signum();
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            let (upper, lower) = m.split_at_mut(r);
            for (dst, src) in lower[0][c..].iter_mut().zip(&upper[c][c..]) {
                *dst -= f * src;
            }
        }
    }
    sign
}

/// Real roots of `phi` on `[lo, hi]` from sign changes on a uniform grid,
/// each refined by bisection to the limit of double precision.
pub fn sign_change_roots(phi: impl Fn(f64) -> f64, lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    let xs: Vec<f64> = (0..=samples).map(|i| lo + (hi - lo) * i as f64 / samples as f64).collect();
    let signs: Vec<f64> = xs.iter().map(|&x| phi(x)).collect();
    let mut roots = Vec::new();
    for i in 0..samples {
        if signs[i] == 0.0 {
            roots.push(xs[i]);
            continue;
        }
        if signs[i] * signs[i + 1] < 0.0 {
            let (mut a, mut b, sa) = (xs[i], xs[i + 1], signs[i]);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if phi(mid) * sa > 0.0 {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            roots.push(0.5 * (a + b));
        }
    }
    roots
}

/// Eigenvalues of `X_n` as roots of `det(T_n(l) - lambda T_n(g))`.
pub fn charpoly_eigs(pair: &SymbolPair, n: usize) -> Vec<f64> {
    let a = dense_toeplitz(pair.l(), n);
    let b = dense_toeplitz(pair.g(), n);
    let (lo, hi) = pair.bounds().unwrap();
    let pad = 1e-3 * (hi - lo);
    sign_change_roots(|x| det_sign(&a, &b, x), lo - pad, hi + pad, 40_000)
}

type Poly = Vec<f64>;

fn poly_mul(p: &Poly, q: &Poly) -> Poly {
    let mut r = vec![0.0; p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            r[i + j] += a * b;
        }
    }
    r
}

fn poly_add(p: &Poly, q: &Poly, s: f64) -> Poly {
    let mut r = vec![0.0; p.len().max(q.len())];
    for (i, a) in p.iter().enumerate() {
        r[i] += a;
    }
    for (i, b) in q.iter().enumerate() {
        r[i] += s * b;
    }
    r
}

/// Laplace expansion along the first row of a matrix of polynomials.
fn laplace(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = vec![0.0];
    for c in 0..n {
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, p)| p.clone()).collect()).collect();
        let term = poly_mul(&m[0][c], &laplace(&minor));
        det = poly_add(&det, &term, if c % 2 == 0 { 1.0 } else { -1.0 });
    }
    det
}

/// Coefficients (ascending powers of lambda) of `det(T_n(l) - lambda T_n(g))`.
pub fn charpoly(pair: &SymbolPair, n: usize) -> Vec<f64> {
    let a = dense_toeplitz(pair.l(), n);
    let b = dense_toeplitz(pair.g(), n);
    let m: Vec<Vec<Poly>> = (0..n).map(|i| (0..n).map(|j| vec![a[i][j], -b[i][j]]).collect()).collect();
    laplace(&m)
}

pub fn poly_eval(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Shared on-disk cache for reference spectra across test binaries.
pub fn cache_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("reference-cache")
}

pub fn oracle() -> Oracle {
    Oracle::double().with_cache(cache_dir())
}

/// Example 1 tables, `n1 = 100`, `K = 5`, built once per test binary.
pub fn example1_table(space: Space) -> &'static ExpansionTable {
    static S: OnceLock<ExpansionTable> = OnceLock::new();
    static L: OnceLock<ExpansionTable> = OnceLock::new();
    let cell = match space {
        Space::SVariable => &S,
        Space::Lambda => &L,
    };
    cell.get_or_init(|| precompute(&example(1), &make_grid(100, 5).unwrap(), space, Precision::Double).unwrap())
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
