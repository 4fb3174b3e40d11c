use alloc::vec;

use super::{Matrix, SpectralOptions};
use crate::{Error, Result};

/// Spectral norm `ν(M) = sqrt(ρ(M Mᵀ))`, the largest singular value.
///
/// Power iteration with Rayleigh quotients on the smaller of `M Mᵀ` and
/// `Mᵀ M`. Meant for nonnegative matrices, where the all-ones start vector
/// is never orthogonal to the top eigenvector. Empty and zero matrices give
/// `0`.
pub fn spectral_norm(m: &Matrix, opts: SpectralOptions) -> Result<f64> {
    if m.is_empty() || m.nonzeros() == 0 {
        return Ok(0.0);
    }
    let t = m.transpose();
    let gram = if m.rows() <= m.cols() { m.mul(&t) } else { t.mul(m) };
    let n = gram.rows();
    let mut x = vec![1.0 / libm::sqrt(n as f64); n];
    let mut y = vec![0.0; n];
    let mut lambda = 0.0;
    for _ in 0..opts.max_iter {
        gram.mul_vec(&x, &mut y);
        lambda = x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>();
        let res2: f64 = x.iter().zip(&y).map(|(a, b)| (b - lambda * a) * (b - lambda * a)).sum();
        if libm::sqrt(res2) <= opts.tol * lambda.max(1.0) {
            return Ok(libm::sqrt(lambda.max(0.0)));
        }
        let norm = libm::sqrt(y.iter().map(|v| v * v).sum::<f64>());
        if norm == 0.0 {
            return Ok(0.0);
        }
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / norm;
        }
    }
    Err(Error::NotConverged { best: libm::sqrt(lambda.max(0.0)), iterations: opts.max_iter })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nu(m: &Matrix) -> f64 {
        spectral_norm(m, SpectralOptions::default()).unwrap()
    }

    #[test]
    fn examples() {
        assert!((nu(&Matrix::identity(3)) - 1.0).abs() < 1e-12);
        assert!((nu(&Matrix::filled(2, 3, 1.0)) - libm::sqrt(6.0)).abs() < 1e-12);
        assert_eq!(nu(&Matrix::zeros(3, 4)), 0.0);
        assert_eq!(nu(&Matrix::zeros(0, 4)), 0.0);
    }

    #[test]
    fn column_and_row_vectors() {
        let col = Matrix::from_row_major(3, 1, vec![1.0, 1.0, 0.0]);
        assert!((nu(&col) - libm::sqrt(2.0)).abs() < 1e-12);
        assert!((nu(&col.transpose()) - libm::sqrt(2.0)).abs() < 1e-12);
    }
}
