//! Arc decompositions, the extremal candidate digraph and the closed-form
//! maxima that are known exactly.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::digraph::Digraph;
use crate::spectral::{dsharp_cubic_root, spectral_radius, SpectralOptions};
use crate::{Error, Result};

/// The unique `(k, t)` with `e = k(k-1) + t` and `0 <= t <= 2k - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ArcDecomposition {
    pub e: u64,
    pub k: u64,
    pub t: u64,
}

impl ArcDecomposition {
    /// The intervals `[k² - k, k² + k - 1]` partition the positive integers.
    pub fn new(e: u64) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidArgument("arc count must be positive".into()));
        }
        let mut k = ((1.0 + libm::sqrt(1.0 + 4.0 * e as f64)) / 2.0) as u64;
        while k * (k - 1) > e {
            k -= 1;
        }
        while (k + 1) * k <= e {
            k += 1;
        }
        let t = e - k * (k - 1);
        debug_assert!(t < 2 * k);
        Ok(ArcDecomposition { e, k, t })
    }

    /// `⌊t/2⌋`
    pub fn p(&self) -> u64 {
        self.t / 2
    }

    /// `⌈t/2⌉`
    pub fn q(&self) -> u64 {
        self.t.div_ceil(2)
    }

    /// `1 < t < 2k - 2`: no closed form is known and the extremal candidate
    /// is only conjectured to be the unique maximizer.
    pub fn in_conjecture_range(&self) -> bool {
        1 < self.t && self.t + 2 < 2 * self.k
    }

    /// `k > 4t⁴ + 4`, where the candidate is proven optimal for `t >= 2`.
    pub fn in_large_clique_regime(&self) -> bool {
        let t = self.t as u128;
        (self.k as u128) > 4 * t * t * t * t + 4
    }
}

pub fn decompose_arcs(e: u64) -> Result<ArcDecomposition> {
    ArcDecomposition::new(e)
}

/// Shape of the extremal candidate: the complete digraph on `k` vertices
/// plus, when `t > 0`, one extra vertex `v = k` that receives arcs from
/// clique vertices `0..q` and sends arcs to clique vertices `0..p`.
///
/// So `v` has `p` bidirected pairs, and for odd `t` one more arc from
/// clique vertex `q - 1` into `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DsharpSpec {
    pub decomposition: ArcDecomposition,
    /// arcs from `v` into the clique, `⌊t/2⌋`
    pub p: u64,
    /// arcs from the clique into `v`, `⌈t/2⌉`
    pub q: u64,
}

impl DsharpSpec {
    pub fn new(e: u64) -> Result<Self> {
        if e < 2 {
            return Err(Error::InvalidArgument(format!("extremal digraph needs at least 2 arcs, got {e}")));
        }
        let decomposition = ArcDecomposition::new(e)?;
        Ok(DsharpSpec { decomposition, p: decomposition.p(), q: decomposition.q() })
    }

    /// False only for `t = 1`: the extra vertex then has no out-arc and the
    /// digraph is not strongly connected.
    pub fn in_dss(&self) -> bool {
        self.decomposition.t != 1
    }

    pub fn vertex_count(&self) -> usize {
        let k = self.decomposition.k as usize;
        if self.decomposition.t == 0 {
            k
        } else {
            k + 1
        }
    }

    pub fn build(&self) -> Digraph {
        let k = self.decomposition.k as usize;
        let mut d = Digraph::empty(self.vertex_count());
        for i in 0..k {
            for j in 0..k {
                if i != j {
                    d.insert(i, j);
                }
            }
        }
        if self.decomposition.t > 0 {
            for i in 0..self.q as usize {
                d.insert(i, k);
            }
            for j in 0..self.p as usize {
                d.insert(k, j);
            }
        }
        debug_assert_eq!(d.arc_count() as u64, self.decomposition.e);
        d
    }
}

/// The extremal candidate for `e >= 2` arcs. For `t = 0` this is the
/// complete digraph on `k` vertices with no extra vertex.
pub fn build_dsharp(e: u64) -> Result<Digraph> {
    Ok(DsharpSpec::new(e)?.build())
}

/// Spectral radius of the extremal candidate: `k - 1` for `t = 0`, the
/// largest cubic root otherwise. Cross-checked against power iteration on
/// the built digraph to within `1e-9`.
pub fn rho_dsharp(e: u64) -> Result<f64> {
    let spec = DsharpSpec::new(e)?;
    let ArcDecomposition { k, t, .. } = spec.decomposition;
    let rho = if t == 0 { (k - 1) as f64 } else { dsharp_cubic_root(k, t)? };
    let matrix = spectral_radius(&spec.build(), SpectralOptions::default())?.rho;
    if (rho - matrix).abs() > 1e-9 {
        return Err(Error::CrossCheck { what: "cubic root vs power iteration", left: rho, right: matrix });
    }
    Ok(rho)
}

/// Arc counts whose maximum spectral radius is known in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum ClosedFormCase {
    /// `t = 0`
    Complete,
    /// `t = 1`
    CompletePlusArc,
    /// `t = 2k - 2`
    CompleteMinusPair,
    /// `t = 2k - 1`
    CompleteMinusArc,
}

impl ClosedFormCase {
    pub fn label(&self) -> &'static str {
        match self {
            ClosedFormCase::Complete => "complete",
            ClosedFormCase::CompletePlusArc => "complete-plus-arc",
            ClosedFormCase::CompleteMinusPair => "complete-minus-pair",
            ClosedFormCase::CompleteMinusArc => "complete-minus-arc",
        }
    }
}

/// Digraph families attaining a closed-form maximum (up to isolated
/// vertices and relabelling).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "family", rename_all = "kebab-case"))]
pub enum ExtremalFamily {
    /// complete digraph on `order` vertices
    Complete {
        order: usize,
    },
    /// complete digraph on `order` vertices plus one arc to a new vertex
    CompletePlusArc {
        order: usize,
    },
    OrientedTriangle,
    /// complete digraph on `order` vertices minus both arcs between two vertices
    CompleteMinusPair {
        order: usize,
    },
    /// complete digraph on `order` vertices minus one arc
    CompleteMinusArc {
        order: usize,
    },
}

impl ExtremalFamily {
    pub fn build(&self) -> Digraph {
        match *self {
            ExtremalFamily::Complete { order } => Digraph::complete(order),
            ExtremalFamily::CompletePlusArc { order } => {
                let mut d = Digraph::empty(order + 1);
                for (i, j) in Digraph::complete(order).arcs() {
                    d.insert(i, j);
                }
                d.insert(0, order);
                d
            }
            ExtremalFamily::OrientedTriangle => {
                Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).expect("valid triangle")
            }
            ExtremalFamily::CompleteMinusPair { order } => {
                let mut d = Digraph::complete(order);
                d.remove(order - 1, order - 2);
                d.remove(order - 2, order - 1);
                d
            }
            ExtremalFamily::CompleteMinusArc { order } => {
                let mut d = Digraph::complete(order);
                d.remove(order - 1, order - 2);
                d
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClosedForm {
    pub case: ClosedFormCase,
    pub rho: f64,
    pub families: Vec<ExtremalFamily>,
}

/// Closed-form maximum spectral radius over all simple digraphs with `e`
/// arcs, when `t ∈ {0, 1, 2k-2, 2k-1}`; `None` otherwise (and for `e = 1`).
pub fn rho_closed_form(e: u64) -> Option<ClosedForm> {
    let ArcDecomposition { k, t, .. } = ArcDecomposition::new(e).ok()?;
    if k < 2 {
        return None;
    }
    let kf = k as f64;
    let order = k as usize;
    let (case, rho, families) = if t == 0 {
        (ClosedFormCase::Complete, kf - 1.0, vec![ExtremalFamily::Complete { order }])
    } else if t == 1 {
        let mut families = vec![ExtremalFamily::CompletePlusArc { order }];
        if k == 2 {
            families.insert(0, ExtremalFamily::OrientedTriangle);
        }
        (ClosedFormCase::CompletePlusArc, kf - 1.0, families)
    } else if t == 2 * k - 2 {
        let rho = (kf - 2.0 + libm::sqrt((kf - 2.0) * (kf - 2.0) + 8.0 * (kf - 1.0))) / 2.0;
        (ClosedFormCase::CompleteMinusPair, rho, vec![ExtremalFamily::CompleteMinusPair { order: order + 1 }])
    } else if t == 2 * k - 1 {
        let rho = (kf - 1.0 + libm::sqrt((kf - 1.0) * (kf - 1.0) + 4.0 * (kf - 1.0))) / 2.0;
        (ClosedFormCase::CompleteMinusArc, rho, vec![ExtremalFamily::CompleteMinusArc { order: order + 1 }])
    } else {
        return None;
    };
    Some(ClosedForm { case, rho, families })
}
