//! Enumeration of the nested prefix family and a brute-force oracle over
//! all arc subsets.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use crate::digraph::{prefix_out_degree, CanonicalForm, Digraph};
use crate::extremal::ArcDecomposition;
use crate::spectral::{spectral_radius, SpectralOptions};
use crate::{Error, Result};

/// Spectral radii within this distance of the maximum count as ties.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Largest vertex count searched by the enumerator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum VertexCap {
    /// `k + ⌈t/2⌉ + 2`.
    #[default]
    Default,
    /// Up to `e` vertices, the most a strongly connected digraph with `e`
    /// arcs can have.
    Uncapped,
    At(usize),
}

impl VertexCap {
    pub fn resolve(self, e: u64) -> Result<usize> {
        let dec = ArcDecomposition::new(e)?;
        Ok(match self {
            VertexCap::Default => (dec.k + dec.q() + 2) as usize,
            VertexCap::Uncapped => e as usize,
            VertexCap::At(n) => n,
        })
    }
}

/// Vertex counts searched for `e` arcs: from the smallest `n` with
/// `n(n-1) >= e` up to the cap.
pub fn vertex_range(e: u64, cap: VertexCap) -> Result<RangeInclusive<usize>> {
    if e < 2 {
        return Err(Error::InvalidArgument(format!("enumeration needs at least 2 arcs, got {e}")));
    }
    let mut lo = 2usize;
    while ((lo * (lo - 1)) as u64) < e {
        lo += 1;
    }
    Ok(lo..=cap.resolve(e)?.min(e as usize))
}

/// Independent slice of the search: all forms on `vertices` vertices whose
/// first prefix length is `first`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shard {
    pub arcs: u64,
    pub vertices: usize,
    pub first: usize,
}

/// Shards in enumeration order, lexicographic on `(vertices, first)`.
pub fn shards(e: u64, cap: VertexCap) -> Result<Vec<Shard>> {
    let mut out = Vec::new();
    for n in vertex_range(e, cap)? {
        for first in 2..=n {
            let d0 = first - 1;
            if d0 as u64 <= e {
                out.push(Shard { arcs: e, vertices: n, first });
            }
        }
    }
    Ok(out)
}

impl Shard {
    /// Calls `visit` on every member of this shard in lexicographic order of
    /// prefix lengths.
    pub fn for_each(&self, mut visit: impl FnMut(&CanonicalForm)) {
        let n = self.vertices;
        let d0 = self.first - 1;
        if d0 as u64 > self.arcs {
            return;
        }
        let mut search = Search { n, m: vec![0; n], visit: &mut visit };
        search.m[0] = self.first;
        search.descend(1, self.arcs as usize - d0, d0);
    }

    pub fn forms(&self) -> Vec<CanonicalForm> {
        let mut out = Vec::new();
        self.for_each(|c| out.push(c.clone()));
        out
    }
}

struct Search<'a, F: FnMut(&CanonicalForm)> {
    n: usize,
    m: Vec<usize>,
    visit: &'a mut F,
}

impl<F: FnMut(&CanonicalForm)> Search<'_, F> {
    /// Chooses `m[j]` given `m[..j]`, with `remaining` arcs left to place
    /// and `min_degree` the smallest out-degree so far.
    fn descend(&mut self, j: usize, remaining: usize, min_degree: usize) {
        let n = self.n;
        if j == n {
            if remaining == 0 {
                self.finish();
            }
            return;
        }
        // nestedness: out-degrees grow by at most one along the order
        let cap = (n - 1).min(min_degree + 1);
        let later = n - j - 1;
        for len in 1..=n {
            if len == j + 1 {
                continue;
            }
            let degree = prefix_out_degree(j, len);
            if degree == 0 || degree > cap || degree > remaining {
                continue;
            }
            let left = remaining - degree;
            let next_cap = cap.min(degree + 1);
            if left < later || left > later * next_cap {
                continue;
            }
            if !self.nests(j, len) {
                continue;
            }
            self.m[j] = len;
            self.descend(j + 1, left, min_degree.min(degree));
        }
    }

    /// `N⁺(i) \ {j} ⊇ N⁺(j) \ {i}` for every earlier `i`: the lengths may
    /// only grow across `i` and `j` themselves.
    fn nests(&self, j: usize, len: usize) -> bool {
        self.m[..j].iter().enumerate().all(|(i, &mi)| {
            if len <= mi {
                return true;
            }
            let spare = len - mi - usize::from(mi <= i && i < len) - usize::from(mi <= j && j < len);
            spare == 0
        })
    }

    fn finish(&mut self) {
        let n = self.n;
        // every vertex needs an in-arc
        for v in 0..n {
            if !self.m.iter().enumerate().any(|(i, &mi)| i != v && v < mi) {
                return;
            }
        }
        let form = CanonicalForm::from_normalized(self.m.clone());
        if form.expand().is_strongly_connected() {
            (self.visit)(&form);
        }
    }
}

/// Every member of the nested prefix family with `e` arcs under the default
/// vertex cap, in lexicographic order of `(n, prefix lengths)`.
pub fn enumerate_dss(e: u64) -> Result<Vec<CanonicalForm>> {
    enumerate_dss_with(e, VertexCap::Default)
}

pub fn enumerate_dss_with(e: u64, cap: VertexCap) -> Result<Vec<CanonicalForm>> {
    let mut out = Vec::new();
    for shard in shards(e, cap)? {
        shard.for_each(|c| out.push(c.clone()));
    }
    Ok(out)
}

/// Maximum spectral radius over all `e`-arc subsets of the `n(n-1)`
/// possible arcs, with every subset attaining it to within
/// [`TIE_TOLERANCE`].
#[derive(Clone, Debug, PartialEq)]
pub struct BruteForce {
    pub rho_max: f64,
    pub argmax: Vec<Digraph>,
    pub subsets: u64,
}

/// Subset budget of [`brute_max_rho`].
pub const BRUTE_FORCE_LIMIT: u128 = 10_000_000;

fn binomial(n: u64, r: u64) -> u128 {
    let r = r.min(n - r.min(n));
    let mut acc: u128 = 1;
    for i in 0..r as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    acc
}

/// Exhaustive search over all simple digraphs on `n` labelled vertices with
/// `e` arcs (isolated vertices allowed).
pub fn brute_max_rho(e: u64, n: usize, opts: SpectralOptions) -> Result<BruteForce> {
    if !(2..=8).contains(&n) {
        return Err(Error::InvalidArgument(format!("brute force supports 2..=8 vertices, got {n}")));
    }
    let slots: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let width = slots.len() as u64;
    if e == 0 || e > width {
        return Err(Error::InvalidArgument(format!("{e} arcs do not fit on {n} vertices")));
    }
    let required = binomial(width, e);
    if required > BRUTE_FORCE_LIMIT {
        return Err(Error::BudgetExceeded { required, limit: BRUTE_FORCE_LIMIT });
    }
    let mut best = BruteForce { rho_max: f64::NEG_INFINITY, argmax: Vec::new(), subsets: 0 };
    let mut mask: u64 = (1u64 << e) - 1;
    let end = 1u64 << width;
    let mut arcs = Vec::with_capacity(e as usize);
    while mask < end {
        arcs.clear();
        let mut bits = mask;
        while bits != 0 {
            arcs.push(slots[bits.trailing_zeros() as usize]);
            bits &= bits - 1;
        }
        let d = Digraph::from_arcs(n, &arcs)?;
        let rho = spectral_radius(&d, opts)?.rho;
        best.subsets += 1;
        if rho > best.rho_max + TIE_TOLERANCE {
            best.rho_max = rho;
            best.argmax.retain(|g| spectral_radius(g, opts).is_ok_and(|r| r.rho >= rho - TIE_TOLERANCE));
            best.argmax.push(d);
        } else if rho >= best.rho_max - TIE_TOLERANCE {
            best.rho_max = best.rho_max.max(rho);
            best.argmax.push(d);
        }
        // next subset with the same popcount
        let low = mask & mask.wrapping_neg();
        let ripple = mask + low;
        mask = (((ripple ^ mask) >> 2) / low) | ripple;
    }
    Ok(best)
}
