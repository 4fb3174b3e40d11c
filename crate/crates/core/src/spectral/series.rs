//! Spectral radius of a clique-plus-rest block matrix
//! `[[J_k - I_k, A12], [A21, 0]]` as the root of
//! `g(r) = Σ_{i≥0} 1ᵀ(A12 A21)ⁱ 1 / (rⁱ (r+1)^{i+1}) = 1`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{spectral_norm, Matrix, SpectralOptions};
use crate::{Error, Result};

const MAX_TERMS: usize = 200_000;

/// The moment series of a clique block of size `k` with off-diagonal blocks
/// `A12` (`k × m`) and `A21` (`m × k`).
#[derive(Clone, Debug)]
pub struct SeriesEquation {
    k: usize,
    extra: usize,
    product: Matrix,
}

/// `g(r)` and the number of series terms summed. `value` is `+∞` when the
/// series diverges at `r`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub terms: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SeriesSolution {
    pub rho: f64,
    /// Series terms used at the returned root (truncation depth).
    pub depth: usize,
    pub bisection_steps: usize,
}

impl SeriesEquation {
    pub fn new(k: usize, a12: &Matrix, a21: &Matrix) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("clique block must be nonempty".into()));
        }
        if a12.rows() != k || a21.cols() != k || a12.cols() != a21.rows() {
            return Err(Error::InvalidArgument(format!(
                "blocks do not conform: A12 is {}x{}, A21 is {}x{}, clique size {k}",
                a12.rows(),
                a12.cols(),
                a21.rows(),
                a21.cols()
            )));
        }
        if !a12.is_nonnegative() || !a21.is_nonnegative() {
            return Err(Error::InvalidArgument("blocks must be nonnegative".into()));
        }
        let product = if a12.cols() == 0 { Matrix::zeros(k, k) } else { a12.mul(a21) };
        Ok(SeriesEquation { k, extra: a12.cols(), product })
    }

    pub fn clique_size(&self) -> usize {
        self.k
    }

    /// `A12 A21`
    pub fn product(&self) -> &Matrix {
        &self.product
    }

    /// `μ_i = 1ᵀ(A12 A21)ⁱ 1` for `i < count`; `μ_0 = k`.
    pub fn moments(&self, count: usize) -> Vec<f64> {
        let mut z = vec![1.0; self.k];
        let mut w = vec![0.0; self.k];
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            out.push(z.iter().sum());
            self.product.mul_vec(&z, &mut w);
            core::mem::swap(&mut z, &mut w);
        }
        out
    }

    /// `ν(A12 A21)`, the geometric ratio bound for the moments.
    pub fn tail_bound(&self, opts: SpectralOptions) -> Result<f64> {
        spectral_norm(&self.product, opts)
    }

    /// `g(r)` summed until the remaining tail is provably below `tol / 10`.
    ///
    /// The tail is bounded with the Collatz-Wielandt ratio of the current
    /// moment vector `z = M^i 1`: if `M z <= c z` then `M^s z <= c^s z`, so
    /// the terms after `i` are dominated by a geometric series of ratio
    /// `c / (r (r + 1))`. A lower ratio at least `r (r + 1)` proves
    /// divergence.
    pub fn evaluate(&self, r: f64, tol: f64) -> SeriesValue {
        let k = self.k as f64;
        if self.product.nonzeros() == 0 {
            let value = if r > -1.0 { k / (r + 1.0) } else { f64::INFINITY };
            return SeriesValue { value, terms: 1 };
        }
        if r <= 0.0 {
            return SeriesValue { value: f64::INFINITY, terms: 0 };
        }
        let scale = r * (r + 1.0);
        let mut z = vec![1.0; self.k];
        let mut w = vec![0.0; self.k];
        let mut term = k / (r + 1.0);
        let mut sum = term;
        for terms in 1..MAX_TERMS {
            self.product.mul_vec(&z, &mut w);
            let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
            for (wi, zi) in w.iter().zip(&z) {
                if *zi > 0.0 {
                    lo = lo.min(wi / zi);
                    hi = hi.max(wi / zi);
                } else if *wi > 0.0 {
                    hi = f64::INFINITY;
                }
            }
            if lo >= scale {
                return SeriesValue { value: f64::INFINITY, terms };
            }
            let q = hi / scale;
            if q < 1.0 && term * q / (1.0 - q) <= tol / 10.0 {
                return SeriesValue { value: sum, terms };
            }
            for (zi, wi) in z.iter_mut().zip(&w) {
                *zi = wi / scale;
            }
            term = z.iter().sum::<f64>() / (r + 1.0);
            if term == 0.0 {
                return SeriesValue { value: sum, terms: terms + 1 };
            }
            sum += term;
            if !sum.is_finite() {
                return SeriesValue { value: f64::INFINITY, terms };
            }
        }
        SeriesValue { value: f64::INFINITY, terms: MAX_TERMS }
    }

    /// Unique positive root of `g(r) = 1` by bisection. `g` is strictly
    /// decreasing; `g(k - 1) >= 1` because the zeroth term alone is 1 there,
    /// and the root is at most the largest row sum `k - 1 + m`.
    pub fn solve(&self, tol: f64) -> Result<SeriesSolution> {
        let mut lo = (self.k - 1) as f64;
        let mut hi = (self.k + self.extra) as f64;
        let mut widen = 0;
        while self.evaluate(hi, tol).value >= 1.0 {
            hi *= 2.0;
            widen += 1;
            if widen > 64 {
                return Err(Error::BracketCondition(format!("g(r) >= 1 up to r = {hi}")));
            }
        }
        let mut steps = 0;
        while hi - lo > tol && steps < 200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.evaluate(mid, tol).value >= 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            steps += 1;
        }
        let rho = 0.5 * (lo + hi);
        Ok(SeriesSolution { rho, depth: self.evaluate(rho, tol).terms, bisection_steps: steps })
    }
}

/// Spectral radius of `[[J_k - I_k, A12], [A21, 0]]` through the moment
/// series. The block matrix is assumed irreducible.
pub fn clique_series_root(k: usize, a12: &Matrix, a21: &Matrix, tol: f64) -> Result<SeriesSolution> {
    SeriesEquation::new(k, a12, a21)?.solve(tol)
}
