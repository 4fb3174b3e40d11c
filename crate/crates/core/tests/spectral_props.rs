//! Spectral machinery against independent oracles: nalgebra's SVD for the
//! norm, exhaustive small digraphs for monotonicity, the assembled matrix for
//! the extremal cubic.

mod common;

use digrho_core::extremal::{build_dsharp, decompose_arcs};
use digrho_core::spectral::{dsharp_cubic_root, spectral_norm, spectral_radius, Matrix};
use digrho_core::SpectralOptions;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn svd_norm(m: &Matrix) -> f64 {
    let d = DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)]);
    d.singular_values().max()
}

#[test]
fn norm_matches_largest_singular_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let opts = SpectralOptions::default();
    for _ in 0..1000 {
        let (r, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let m = common::random_01(&mut rng, r, c);
        let nu = spectral_norm(&m, opts).unwrap();
        assert!((nu - svd_norm(&m)).abs() < 1e-9, "{m:?}");
    }
}

#[test]
fn norm_is_submultiplicative_and_below_trace() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let opts = SpectralOptions::default();
    let mut worst = f64::INFINITY;
    for _ in 0..1000 {
        let (r, s, c) = (rng.gen_range(1..=8), rng.gen_range(1..=8), rng.gen_range(1..=8));
        let a = common::random_01(&mut rng, r, s);
        let b = common::random_01(&mut rng, s, c);
        let (na, nb) = (spectral_norm(&a, opts).unwrap(), spectral_norm(&b, opts).unwrap());
        let nab = spectral_norm(&a.mul(&b), opts).unwrap();
        worst = worst.min(na * nb - nab);
        assert!(nab <= na * nb + 1e-10);
        let gram = a.mul(&a.transpose()).trace();
        assert!(na * na <= gram + 1e-10);
        assert_eq!(gram, a.sum());
    }
    assert!(worst > -1e-10);
}

#[test]
fn adding_an_arc_increases_rho() {
    let opts = SpectralOptions::default();
    let mut checked = 0;
    for n in 2..=4 {
        for d in common::all_digraphs(n).filter(|d| d.is_strongly_connected()) {
            let rho = spectral_radius(&d, opts).unwrap().rho;
            for i in 0..n {
                for j in (0..n).filter(|&j| j != i && !d.has_arc(i, j)) {
                    let up = spectral_radius(&d.with_arc(i, j).unwrap(), opts).unwrap().rho;
                    assert!(up > rho + 1e-9, "{d:?} + ({i}, {j}): {rho} -> {up}");
                    checked += 1;
                }
            }
        }
    }
    // missing arcs over all strongly connected digraphs on 2..=4 vertices,
    // counted independently with networkx
    assert_eq!(checked, 7470);
}

#[test]
fn cubic_matches_assembled_matrix() {
    let opts = SpectralOptions::default();
    for e in 2..=75 {
        let dec = decompose_arcs(e).unwrap();
        let cubic = dsharp_cubic_root(dec.k, dec.t).unwrap();
        let power = spectral_radius(&build_dsharp(e).unwrap(), opts).unwrap().rho;
        assert!((cubic - power).abs() <= 10.0 * opts.tol, "e={e}: {cubic} vs {power}");
    }
}

#[test]
fn residual_contract_on_corpus() {
    let opts = SpectralOptions::default();
    for (_, d) in common::corpus(16) {
        let r = spectral_radius(&d, opts).unwrap();
        assert!(r.residual <= opts.tol && r.left_residual <= opts.tol);
        assert!(r.right.iter().chain(&r.left).all(|&x| x > 0.0));
        assert!((r.right.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }
}
