use alloc::vec;
use alloc::vec::Vec;

use super::Matrix;
use crate::digraph::{strongly_connected_components, Digraph};
use crate::{Error, Result};

/// Tolerance and iteration cap for the iterative solvers.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpectralOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions { tol: 1e-12, max_iter: 1_000_000 }
    }
}

impl SpectralOptions {
    pub fn with_tol(tol: f64) -> Self {
        SpectralOptions { tol, ..Default::default() }
    }
}

/// Perron root of a digraph's adjacency matrix together with its right and
/// left Perron vectors.
///
/// Vectors have length `n` and unit coordinate sum. For a reducible
/// adjacency matrix they are supported on `dominant_block` (the strong
/// component attaining the maximum) and the residuals refer to that block.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpectralResult {
    pub rho: f64,
    pub right: Vec<f64>,
    pub left: Vec<f64>,
    /// `max |A u - rho u|`
    pub residual: f64,
    /// `max |Aᵀ v - rho v|`
    pub left_residual: f64,
    /// Power steps spent on both vectors.
    pub iterations: usize,
    pub dominant_block: Option<Vec<usize>>,
}

impl SpectralResult {
    pub fn is_reducible(&self) -> bool {
        self.dominant_block.is_some()
    }
}

struct PerronPair {
    rho: f64,
    vector: Vec<f64>,
    residual: f64,
    iterations: usize,
}

/// Power iteration on `A + I` for an irreducible nonnegative `A`.
///
/// The shift makes the iteration matrix primitive, so periodic digraphs
/// (cycles) converge too. Stops once the Collatz-Wielandt bracket
/// `min (Ax)_i/x_i <= rho <= max (Ax)_i/x_i` is narrower than
/// `tol * max(1, rho)` and the residual is below `tol`.
fn shifted_power(a: &Matrix, transpose: bool, opts: SpectralOptions) -> Result<PerronPair> {
    let n = a.rows();
    if n == 1 {
        return Ok(PerronPair { rho: a[(0, 0)], vector: vec![1.0], residual: 0.0, iterations: 0 });
    }
    let at;
    let m = if transpose {
        at = a.transpose();
        &at
    } else {
        a
    };
    let mut x = vec![1.0 / n as f64; n];
    let mut y = vec![0.0; n];
    let mut best = 0.0;
    for it in 1..=opts.max_iter {
        m.mul_vec(&x, &mut y);
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for (yi, xi) in y.iter().zip(&x) {
            let r = yi / xi;
            lo = lo.min(r);
            hi = hi.max(r);
        }
        let rho: f64 = y.iter().sum::<f64>() / x.iter().sum::<f64>();
        best = rho;
        if hi - lo <= opts.tol * hi.max(1.0) {
            let residual = y.iter().zip(&x).map(|(yi, xi)| (yi - rho * xi).abs()).fold(0.0, f64::max);
            if residual <= opts.tol {
                return Ok(PerronPair { rho, vector: x, residual, iterations: it });
            }
        }
        let mut s = 0.0;
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi += yi;
            s += *xi;
        }
        x.iter_mut().for_each(|xi| *xi /= s);
    }
    Err(Error::NotConverged { best, iterations: opts.max_iter })
}

/// Perron root and vectors of an irreducible nonnegative square matrix.
///
/// Irreducibility is the caller's contract; the power iteration does not
/// converge to a positive vector otherwise.
pub fn perron_irreducible(a: &Matrix, opts: SpectralOptions) -> Result<SpectralResult> {
    if a.rows() == 0 {
        return Err(Error::EmptyDigraph);
    }
    assert_eq!(a.rows(), a.cols(), "Perron root needs a square matrix");
    let right = shifted_power(a, false, opts)?;
    let left = shifted_power(a, true, opts)?;
    Ok(SpectralResult {
        rho: right.rho,
        right: right.vector,
        left: left.vector,
        residual: right.residual,
        left_residual: left.residual,
        iterations: right.iterations + left.iterations,
        dominant_block: None,
    })
}

/// Spectral radius of `A(D)` by shifted power iteration, start vector
/// all-ones over `n`.
///
/// A reducible adjacency matrix is split into strong components and the
/// largest block root is returned, flagged through `dominant_block`.
pub fn spectral_radius(d: &Digraph, opts: SpectralOptions) -> Result<SpectralResult> {
    let n = d.vertex_count();
    if n == 0 {
        return Err(Error::EmptyDigraph);
    }
    let classes = strongly_connected_components(d);
    if classes.len() == 1 {
        return perron_irreducible(&d.adjacency(), opts);
    }

    let mut best: Option<(SpectralResult, usize)> = None;
    let mut iterations = 0;
    for (c, class) in classes.iter().enumerate() {
        // no loops: a singleton component contributes a zero block
        if class.len() < 2 {
            continue;
        }
        let block = perron_irreducible(&d.induced(class).adjacency(), opts)?;
        iterations += block.iterations;
        if best.as_ref().is_none_or(|(b, _)| block.rho > b.rho) {
            best = Some((block, c));
        }
    }
    let Some((block, c)) = best else {
        // Nilpotent: rho = 0. A source vertex spans a right null vector,
        // a sink a left one; the first component is a sink.
        let sink = classes[0][0];
        let source = classes[classes.len() - 1][0];
        let mut right = vec![0.0; n];
        let mut left = vec![0.0; n];
        right[source] = 1.0;
        left[sink] = 1.0;
        return Ok(SpectralResult {
            rho: 0.0,
            right,
            left,
            residual: 0.0,
            left_residual: 0.0,
            iterations: 0,
            dominant_block: Some(vec![source]),
        });
    };
    let class = &classes[c];
    let mut right = vec![0.0; n];
    let mut left = vec![0.0; n];
    for (a, &v) in class.iter().enumerate() {
        right[v] = block.right[a];
        left[v] = block.left[a];
    }
    Ok(SpectralResult {
        rho: block.rho,
        right,
        left,
        residual: block.residual,
        left_residual: block.left_residual,
        iterations,
        dominant_block: Some(class.clone()),
    })
}
