use crate::{Error, Result};

/// `λ³ - (k-2)λ² - (k+p-1)λ + p(k-q-1)` with `p = ⌊t/2⌋`, `q = ⌈t/2⌉`:
/// the characteristic factor carrying the Perron root of the extremal
/// candidate for `e = k(k-1) + t` arcs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DsharpCubic {
    k: u64,
    t: u64,
}

impl DsharpCubic {
    pub fn new(k: u64, t: u64) -> Result<Self> {
        if k < 2 || t > 2 * k - 1 {
            return Err(Error::InvalidArgument(alloc::format!(
                "cubic needs k >= 2 and 0 <= t <= 2k-1, got k={k}, t={t}"
            )));
        }
        Ok(DsharpCubic { k, t })
    }

    /// Coefficients `(c2, c1, c0)` of the monic cubic.
    pub fn coefficients(&self) -> (f64, f64, f64) {
        let k = self.k as f64;
        let p = (self.t / 2) as f64;
        let q = self.t.div_ceil(2) as f64;
        (-(k - 2.0), -(k + p - 1.0), p * (k - q - 1.0))
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (c2, c1, c0) = self.coefficients();
        ((x + c2) * x + c1) * x + c0
    }

    fn derivative(&self, x: f64) -> f64 {
        let (c2, c1, _) = self.coefficients();
        (3.0 * x + 2.0 * c2) * x + c1
    }

    /// Largest real root. The cubic is `-pq <= 0` at `k - 1` and
    /// `k² + k - pq - p > 0` at `k`, and no root exceeds `k`, so bisection
    /// on `[k-1, k]` to width `1e-13` followed by two guarded Newton steps.
    pub fn largest_root(&self) -> f64 {
        let mut lo = (self.k - 1) as f64;
        let mut hi = self.k as f64;
        if self.eval(lo) == 0.0 {
            return lo;
        }
        while hi - lo > 1e-13 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.eval(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let mut x = 0.5 * (lo + hi);
        for _ in 0..2 {
            let d = self.derivative(x);
            if d == 0.0 {
                break;
            }
            let next = x - self.eval(x) / d;
            if (lo - 1e-12..=hi + 1e-12).contains(&next) && self.eval(next).abs() <= self.eval(x).abs() {
                x = next;
            }
        }
        x
    }
}

/// Largest root of the extremal cubic for `(k, t)`.
pub fn dsharp_cubic_root(k: u64, t: u64) -> Result<f64> {
    Ok(DsharpCubic::new(k, t)?.largest_root())
}
