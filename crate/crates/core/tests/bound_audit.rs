//! Every bound audited on the enumerated prefix-family corpus, plus the
//! out-of-hypothesis witness and the large clique regime.

mod common;

use std::collections::BTreeMap;

use digrho_core::bounds::{
    block_norm_bound, bound_trace, clique_arc_bound, clique_deficit_bound, clique_deficit_ceiling, two_walk_bound,
};
use digrho_core::digraph::clique_number;
use digrho_core::extremal::rho_dsharp;
use digrho_core::spectral::{spectral_radius, Matrix};
use digrho_core::{Digraph, SpectralOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn no_violations_on_the_corpus() {
    let opts = SpectralOptions::default();
    let mut applied: BTreeMap<String, usize> = BTreeMap::new();
    let corpus = common::corpus(30);
    for (e, d) in &corpus {
        let trace = bound_trace(d, opts).unwrap();
        assert_eq!(trace.arcs, *e);
        assert!(trace.member);
        if let Some(v) = trace.violations().next() {
            panic!("{d:?}: {v:?}");
        }
        for entry in trace.entries.iter().filter(|x| x.applicable) {
            *applied.entry(entry.name.clone()).or_default() += 1;
        }
    }
    // every corpus member is in block form, so these apply everywhere
    for name in ["block-norm", "degree-square", "two-walk"] {
        assert_eq!(applied[name], corpus.len(), "{name}");
    }
}

#[test]
fn clique_arc_bound_dominates_members_with_clique_three() {
    let opts = SpectralOptions::default();
    let bound = clique_arc_bound(3, 10).unwrap();
    assert!((bound - (1.0 + 3f64.sqrt())).abs() < 1e-12);
    let members: Vec<_> = common::corpus(10).into_iter().filter(|(e, d)| *e == 10 && clique_number(d) == 3).collect();
    assert!(!members.is_empty());
    for (_, d) in members {
        assert!(spectral_radius(&d, opts).unwrap().rho <= bound + 1e-9);
    }
}

#[test]
fn block_norm_bound_on_random_blocks() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let opts = SpectralOptions::default();
    for _ in 0..100 {
        let m = rng.gen_range(1..=5);
        let a12 = common::random_01(&mut rng, 4, m);
        let a21 = common::random_01(&mut rng, m, 4);
        let mut arcs = Vec::new();
        for i in 0..4 {
            arcs.extend((0..4).filter(|&j| j != i).map(|j| (i, j)));
            for j in 0..m {
                if a12[(i, j)] == 1.0 {
                    arcs.push((i, 4 + j));
                }
                if a21[(j, i)] == 1.0 {
                    arcs.push((4 + j, i));
                }
            }
        }
        let rho = spectral_radius(&Digraph::from_arcs(4 + m, &arcs).unwrap(), opts).unwrap().rho;
        assert!(block_norm_bound(&a12, &a21, 4, opts).unwrap() >= rho - 1e-9);
    }
}

#[test]
fn two_walk_bound_fails_outside_the_family() {
    let w = two_walk_bound(&Matrix::filled(3, 2, 1.0), &Matrix::filled(2, 3, 1.0), 3).unwrap();
    assert_eq!((w.lhs, w.rhs), (18.0, 13.0));
    assert!(!w.holds());
}

#[test]
fn deficit_chain_at_the_threshold() {
    let bound = clique_deficit_bound(69, 2, 1).unwrap();
    assert!(bound < 68.0 && 68.0 < rho_dsharp(4694).unwrap());
    for t in 2..=4u64 {
        let threshold = 4 * t.pow(4) + 4;
        for k in [threshold + 1, threshold + 7, threshold + 100, threshold + 1000, 10 * threshold] {
            for s in (1..).take_while(|&s| (s as f64) < (t as f64).sqrt() + 1.0) {
                assert!(clique_deficit_bound(k, t, s).unwrap() <= clique_deficit_ceiling(k, s), "k={k} t={t} s={s}");
            }
        }
    }
}
