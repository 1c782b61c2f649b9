mod common;

use common::*;
use matrixless::spectra::{all_eigs_f64, build_toeplitz, eig_by_index, inertia_count, Pencil};
use matrixless::{CosinePoly, Precision, SymbolPair};
use proptest::prelude::*;

#[test]
fn toeplitz_bands() {
    let one = build_toeplitz(&CosinePoly::constant(1.0).unwrap(), 5).unwrap();
    assert_eq!(one.band(), &[1.0]);
    assert_eq!(one.entry(2, 2), 1.0);
    assert_eq!(one.entry(1, 2), 0.0);

    let g1 = build_toeplitz(example(1).g(), 4).unwrap();
    assert_eq!(g1.band(), &[3.0, 1.0]);

    let g2 = build_toeplitz(example(2).g(), 10).unwrap();
    assert_eq!(g2.band(), &[1208.0, 595.5, 60.0, 0.5]);
    assert_eq!(g2.entry(7, 4), 0.5);
    assert_eq!(g2.entry(0, 9), 0.0);
}

#[test]
fn laplace_polynomial_oracle_n4() {
    let pair = example(1);
    let poly = charpoly(&pair, 4);
    assert_eq!(poly.len(), 5);
    let roots = sign_change_roots(|x| poly_eval(&poly, x), -0.01, 2.01, 40_000);
    assert_eq!(roots.len(), 4);
    for (j, r) in roots.iter().enumerate() {
        let v = eig_by_index(&pair, 4, j + 1, Precision::Double, None).unwrap().to_f64();
        assert!((v - r).abs() < 1e-10, "j={} {v} vs {r}", j + 1);
    }
    let all = all_eigs_f64(&pair, 4, 1e-15).unwrap();
    assert!(max_abs_diff(&all, &roots) < 1e-10);
}

#[test]
fn determinant_oracle_small_orders() {
    for ex in 1..=3 {
        let pair = example(ex);
        for n in [5, 8, 12, 16] {
            let roots = charpoly_eigs(&pair, n);
            assert_eq!(roots.len(), n, "example {ex}, n={n}");
            let ours = all_eigs_f64(&pair, n, 1e-15).unwrap();
            let d = max_abs_diff(&ours, &roots);
            assert!(d < 1e-10, "example {ex}, n={n}: {d:e}");
        }
    }
}

#[test]
fn localisation_and_order() {
    for ex in 1..=2 {
        let pair = example(ex);
        let (lo, hi) = pair.bounds().unwrap();
        let values = all_eigs_f64(&pair, 256, 1e-15).unwrap();
        assert_eq!(values.len(), 256);
        assert!(values.windows(2).all(|w| w[0] <= w[1]));
        assert!(values.iter().all(|v| *v > lo && *v < hi));
        assert_eq!(inertia_count(&pair, 256, lo, Precision::Double).unwrap(), 0);
        assert_eq!(inertia_count(&pair, 256, hi, Precision::Double).unwrap(), 256);
    }
}

#[test]
fn distribution_constant_is_stable() {
    // max_j |lambda_j - f(theta_{j,n})| <= C h
    let pair = example(1);
    let constant = |n: usize| {
        let values = all_eigs_f64(&pair, n, 1e-15).unwrap();
        let h = 1.0 / (n + 1) as f64;
        let err = values
            .iter()
            .enumerate()
            .map(|(i, v)| (v - pair.f_eval((i + 1) as f64 * std::f64::consts::PI * h).unwrap()).abs())
            .fold(0.0, f64::max);
        err / h
    };
    let (c512, c1024) = (constant(512), constant(1024));
    assert!(c1024 / c512 < 2.0 && c512 / c1024 < 2.0, "{c512} {c1024}");
}

#[test]
fn coincident_minor_eigenvalue() {
    // At n = 256, lambda_103 = f(2 pi / 5) is also an eigenvalue of many
    // leading sections, so the unpivoted factorization meets tiny pivots.
    let pair = example(1);
    let exact = (5.0 - 5f64.sqrt()) / 4.0;
    let v = eig_by_index(&pair, 256, 103, Precision::Double, Some(1e-17)).unwrap().to_f64();
    assert!((v - exact).abs() < 1e-15, "{v} vs {exact}");
    let all = all_eigs_f64(&pair, 256, 1e-17).unwrap();
    assert!((all[102] - exact).abs() < 1e-15);
}

#[test]
fn extended_agrees_with_double() {
    let pair = example(2);
    for j in [1, 50, 100] {
        let d = eig_by_index(&pair, 100, j, Precision::Double, None).unwrap().to_f64();
        let e = eig_by_index(&pair, 100, j, Precision::extended(40).unwrap(), None).unwrap();
        assert!((e.to_f64() - d).abs() < 1e-14);
    }
}

#[test]
fn scalar_multiple() {
    let g = CosinePoly::new(vec![3.0, 2.0]).unwrap();
    let l = CosinePoly::new(vec![6.0, 4.0]).unwrap();
    let pair = SymbolPair::new(l, g);
    assert!(pair.certify(1000).is_err());
    for j in 1..=7 {
        assert_eq!(eig_by_index(&pair, 7, j, Precision::Double, None).unwrap(), 2.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counts_are_monotone(a in 0.0f64..2.0, b in 0.0f64..2.0, n in 1usize..80) {
        let pair = example(1);
        let p = Pencil::<f64>::new(&pair, n, 53, 16).unwrap();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let c_lo = p.count_near(&lo).unwrap();
        let c_hi = p.count_near(&hi).unwrap();
        prop_assert!(c_lo <= c_hi && c_hi <= n);
    }

    #[test]
    fn index_contract(j in 1usize..=60) {
        let pair = example(3);
        let n = 60;
        let tol = 1e-12;
        let v = eig_by_index(&pair, n, j, Precision::Double, Some(tol)).unwrap().to_f64();
        let p = Pencil::<f64>::new(&pair, n, 53, 16).unwrap();
        prop_assert!(p.count_near(&(v - tol)).unwrap() < j);
        prop_assert!(p.count_near(&(v + tol)).unwrap() >= j);
    }
}
