#![allow(dead_code)]

use digrho_core::enumerate::enumerate_dss;
use digrho_core::spectral::Matrix;
use digrho_core::Digraph;
use rand::Rng;

/// Every enumerated member for `2 <= e <= max_e`, tagged with its arc count.
pub fn corpus(max_e: u64) -> Vec<(u64, Digraph)> {
    (2..=max_e).flat_map(|e| enumerate_dss(e).unwrap().into_iter().map(move |f| (e, f.expand()))).collect()
}

pub fn random_01(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    let density: f64 = rng.gen();
    let data = (0..rows * cols).map(|_| f64::from(u8::from(rng.gen_bool(density)))).collect();
    Matrix::from_row_major(rows, cols, data)
}

/// Every digraph on `n` vertices, by arc subset.
pub fn all_digraphs(n: usize) -> impl Iterator<Item = Digraph> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let arcs: Vec<_> = pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p).collect();
        Digraph::from_arcs(n, &arcs).unwrap()
    })
}
