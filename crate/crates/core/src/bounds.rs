//! Upper bounds on the spectral radius and a per-digraph audit trace.
//!
//! Most bounds apply to a digraph in clique block form
//! `A = [[J_w - I_w, A12], [A21, 0]]`, where the first `w` vertices form a
//! maximum complete subdigraph, the remaining vertices are independent and
//! the last column of `A21` is zero.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::digraph::{clique_number, is_member_dss, Digraph};
use crate::extremal::ArcDecomposition;
use crate::spectral::{spectral_norm, spectral_radius, Matrix, SpectralOptions};
use crate::{Error, Result};

/// Slack allowed in every bound comparison.
pub const AUDIT_SLACK: f64 = 1e-9;

/// `(w - 1 + sqrt((w-1)² + 2(e - w(w-1)))) / 2`, an upper bound for members
/// of the nested prefix family with clique number `w` and `e` arcs
/// (`t != 1`). Increasing in `w` below `k`.
pub fn clique_arc_bound(w: usize, e: u64) -> Result<f64> {
    if w == 0 {
        return Err(Error::InvalidArgument("clique number must be at least 1".into()));
    }
    let inside = (w as u64) * (w as u64 - 1);
    if inside > e {
        return Err(Error::InvalidArgument(format!(
            "a complete subdigraph on {w} vertices needs {inside} arcs, only {e} given"
        )));
    }
    let a = w as f64 - 1.0;
    Ok((a + libm::sqrt(a * a + 2.0 * (e - inside) as f64)) / 2.0)
}

/// The clique-arc bound at `w = k`: `(k - 1 + sqrt((k-1)² + 2t)) / 2`, which
/// dominates it for every admissible `w`.
pub fn clique_arc_bound_at_k(d: ArcDecomposition) -> f64 {
    let a = d.k as f64 - 1.0;
    (a + libm::sqrt(a * a + 2.0 * d.t as f64)) / 2.0
}

fn check_blocks(a12: &Matrix, a21: &Matrix, w: usize) -> Result<()> {
    if w == 0 {
        return Err(Error::InvalidArgument("clique size must be at least 1".into()));
    }
    if a12.rows() != w || a21.cols() != w || a12.cols() != a21.rows() {
        return Err(Error::InvalidArgument(format!(
            "blocks do not conform: A12 is {}x{}, A21 is {}x{}, clique size {w}",
            a12.rows(),
            a12.cols(),
            a21.rows(),
            a21.cols()
        )));
    }
    Ok(())
}

/// `(w - 1 + sqrt((w-1)² + 4 ν(A12 A21))) / 2` for the block matrix with a
/// complete clique block of size `w`; holds for any nonnegative blocks.
pub fn block_norm_bound(a12: &Matrix, a21: &Matrix, w: usize, opts: SpectralOptions) -> Result<f64> {
    check_blocks(a12, a21, w)?;
    let nu = if a12.cols() == 0 { 0.0 } else { spectral_norm(&a12.mul(a21), opts)? };
    let a = w as f64 - 1.0;
    Ok((a + libm::sqrt(a * a + 4.0 * nu)) / 2.0)
}

/// Two sides of a majorization inequality `lhs <= rhs`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Majorization {
    pub lhs: f64,
    pub rhs: f64,
}

impl Majorization {
    pub fn slack(&self) -> f64 {
        self.rhs - self.lhs
    }

    pub fn holds(&self) -> bool {
        self.slack() >= -AUDIT_SLACK
    }
}

/// `||A12ᵀ 1||² + ||A21 1||² <= p w² + (E - p w)²` with `E` the number of
/// ones in both blocks and `p = ⌊E / w⌋`.
pub fn degree_square_bound(a12: &Matrix, a21: &Matrix, w: usize) -> Result<Majorization> {
    check_blocks(a12, a21, w)?;
    let lhs = a12.column_sums().iter().chain(&a21.row_sums()).map(|x| x * x).sum();
    let total = (a12.sum() + a21.sum()) as u64;
    let w = w as u64;
    let p = total / w;
    let rest = total - p * w;
    Ok(Majorization { lhs, rhs: (p * w * w + rest * rest) as f64 })
}

/// `1ᵀ A12 A21 1 <= p' w (w-1) + ⌊r/2⌋⌈r/2⌉` with `p' = ⌊E / (2w-1)⌋` and
/// `r = E - p'(2w-1)`. Needs the block form hypothesis: full blocks violate
/// it.
pub fn two_walk_bound(a12: &Matrix, a21: &Matrix, w: usize) -> Result<Majorization> {
    check_blocks(a12, a21, w)?;
    let into: Vec<f64> = a12.column_sums();
    let out: Vec<f64> = a21.row_sums();
    let lhs = into.iter().zip(&out).map(|(a, b)| a * b).sum();
    let total = (a12.sum() + a21.sum()) as u64;
    let w = w as u64;
    let p = total / (2 * w - 1);
    let rest = total - p * (2 * w - 1);
    let rhs = p * w * (w - 1) + (rest / 2) * rest.div_ceil(2);
    Ok(Majorization { lhs, rhs: rhs as f64 })
}

/// `k - 1 + t / (2(k-1))`, valid for every simple digraph with `e` arcs.
pub fn coarse_bound(e: u64) -> Result<f64> {
    let d = ArcDecomposition::new(e)?;
    if d.k < 2 {
        return Err(Error::InvalidArgument(format!("coarse bound needs k >= 2, e = {e} gives k = 1")));
    }
    let a = d.k as f64 - 1.0;
    Ok(a + d.t as f64 / (2.0 * a))
}

/// Upper bound for a member with clique number `k - s` in the large clique
/// regime:
///
/// `k - s + [s(k-s)(k-s-1) + (t+1)²] / (k² - k)
///  + [(s(k-s)² + 3t²)(s(k-s) + t + √t/2)] / [(k² - k)(k² - k - (s(k-s) + t + √t/2))] - 1`.
pub fn clique_deficit_bound(k: u64, t: u64, s: u64) -> Result<f64> {
    if k < 2 || t < 2 || s < 1 || s >= k {
        return Err(Error::InvalidArgument(format!(
            "clique deficit bound needs k >= 2, t >= 2 and 1 <= s < k, got k={k} t={t} s={s}"
        )));
    }
    let (k, t, s) = (k as f64, t as f64, s as f64);
    let kk = k * k - k;
    let spill = s * (k - s) + t + libm::sqrt(t) / 2.0;
    let denominator = kk - spill;
    if denominator <= 0.0 {
        return Err(Error::BracketCondition(format!(
            "bracket condition violated: k² - k - {spill} = {denominator} <= 0"
        )));
    }
    let first = (s * (k - s) * (k - s - 1.0) + (t + 1.0) * (t + 1.0)) / kk;
    let second = (s * (k - s) * (k - s) + 3.0 * t * t) * spill / (kk * denominator);
    Ok(k - s + first + second - 1.0)
}

/// `k - 1 - 2s² / (3(k-1))`, the value the clique deficit bound stays below
/// once `k > 4t⁴ + 4`.
pub fn clique_deficit_ceiling(k: u64, s: u64) -> f64 {
    let a = k as f64 - 1.0;
    a - 2.0 * (s * s) as f64 / (3.0 * a)
}

/// A digraph split as `[[J_w - I_w, A12], [A21, 0]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockForm {
    pub clique: usize,
    /// `clique × rest`, arcs from the clique to the other vertices.
    pub a12: Matrix,
    /// `rest × clique`, arcs into the clique. Its last column is zero.
    pub a21: Matrix,
    /// The stored digraph had a zero last row of `A12` instead; the blocks
    /// describe its transpose, which has the same spectrum and bounds.
    pub transposed: bool,
}

impl BlockForm {
    /// Splits `d` at its clique number `w`. The first `w` vertices must
    /// form a complete subdigraph, the others must be independent, and the
    /// last clique vertex must have no arc to or no arc from the rest.
    pub fn new(d: &Digraph) -> Result<Self> {
        let n = d.vertex_count();
        if n == 0 {
            return Err(Error::EmptyDigraph);
        }
        let w = clique_number(d);
        for i in 0..w {
            for j in (0..w).filter(|&j| j != i) {
                if !d.has_arc(i, j) {
                    return Err(Error::NotBlockForm(format!("first {w} vertices miss arc ({i}, {j})")));
                }
            }
        }
        for i in w..n {
            if let Some(j) = d.out_neighbors(i).find(|&j| j >= w) {
                return Err(Error::NotBlockForm(format!("arc ({i}, {j}) outside the clique")));
            }
        }
        let last = w - 1;
        let no_in = (w..n).all(|j| !d.has_arc(j, last));
        let no_out = (w..n).all(|j| !d.has_arc(last, j));
        if !no_in && !no_out {
            return Err(Error::NotBlockForm(format!("clique vertex {last} has arcs both ways")));
        }
        let m = n - w;
        let mut a12 = Matrix::zeros(w, m);
        let mut a21 = Matrix::zeros(m, w);
        for i in 0..w {
            for j in 0..m {
                a12[(i, j)] = f64::from(u8::from(d.has_arc(i, w + j)));
                a21[(j, i)] = f64::from(u8::from(d.has_arc(w + j, i)));
            }
        }
        if no_in {
            Ok(BlockForm { clique: w, a12, a21, transposed: false })
        } else {
            Ok(BlockForm { clique: w, a12: a21.transpose(), a21: a12.transpose(), transposed: true })
        }
    }

    /// Ones in `A12` and `A21`.
    pub fn block_arcs(&self) -> (u64, u64) {
        (self.a12.sum() as u64, self.a21.sum() as u64)
    }
}

/// One audited bound: `quantity <= bound` is expected when `applicable`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundEntry {
    pub name: String,
    pub bound: f64,
    pub quantity: f64,
    pub slack: f64,
    pub applicable: bool,
}

impl BoundEntry {
    fn new(name: &str, bound: f64, quantity: f64, applicable: bool) -> Self {
        BoundEntry { name: name.into(), bound, quantity, slack: bound - quantity, applicable }
    }

    pub fn is_violation(&self) -> bool {
        self.applicable && self.slack < -AUDIT_SLACK
    }
}

/// Every bound evaluated on one digraph, applicable or not.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundTrace {
    pub vertices: usize,
    pub arcs: u64,
    pub k: u64,
    pub t: u64,
    pub clique_number: usize,
    pub member: bool,
    pub block_form: bool,
    pub rho: f64,
    pub entries: Vec<BoundEntry>,
}

impl BoundTrace {
    pub fn violations(&self) -> impl Iterator<Item = &BoundEntry> {
        self.entries.iter().filter(|e| e.is_violation())
    }

    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

/// Evaluates every bound on `d` and marks which ones apply.
///
/// Entries, by name:
/// * `coarse`: any digraph with `k >= 2`.
/// * `clique-arc`, `clique-arc-at-k`: members of the nested prefix family
///   with `t != 1`.
/// * `block-norm`: any digraph in clique block form.
/// * `degree-square`, `two-walk`: members in clique block form.
/// * `degree-square-chain`, `degree-square-chain-relaxed`, `two-walk-chain`,
///   `clique-deficit`: the large clique regime `k > 4t⁴ + 4`, `t >= 2`,
///   with clique number `w > k - 1 - √t`. The two degree-square chain entries
///   bound `||A12ᵀ 1|| ||A21 1||` by `(k-w)w² + ((k-w)(k-w-1) + t)² / 2` and
///   its relaxation `(k-w)w² + 3t²`, so the relaxation can be audited.
pub fn bound_trace(d: &Digraph, opts: SpectralOptions) -> Result<BoundTrace> {
    let arcs = d.arc_count() as u64;
    let dec = ArcDecomposition::new(arcs)?;
    let rho = spectral_radius(d, opts)?.rho;
    let w = clique_number(d);
    let member = is_member_dss(d).is_member();
    let blocks = BlockForm::new(d).ok();
    let mut entries = Vec::new();

    if dec.k >= 2 {
        entries.push(BoundEntry::new("coarse", coarse_bound(arcs)?, rho, true));
    }
    let dss = member && dec.t != 1;
    entries.push(BoundEntry::new("clique-arc", clique_arc_bound(w.max(1), arcs)?, rho, dss));
    entries.push(BoundEntry::new("clique-arc-at-k", clique_arc_bound_at_k(dec), rho, dss));

    if let Some(b) = &blocks {
        let norm = block_norm_bound(&b.a12, &b.a21, b.clique, opts)?;
        entries.push(BoundEntry::new("block-norm", norm, rho, true));
        let row = degree_square_bound(&b.a12, &b.a21, b.clique)?;
        entries.push(BoundEntry::new("degree-square", row.rhs, row.lhs, member));
        let walk = two_walk_bound(&b.a12, &b.a21, b.clique)?;
        entries.push(BoundEntry::new("two-walk", walk.rhs, walk.lhs, member));

        let (k, t) = (dec.k, dec.t);
        let large = dec.in_large_clique_regime()
            && t >= 2
            && (w as f64) > k as f64 - 1.0 - libm::sqrt(t as f64)
            && (w as u64) < k;
        let gap = k.saturating_sub(w as u64) as f64;
        let (wf, tf) = (w as f64, t as f64);
        let into = libm::sqrt(b.a12.column_sums().iter().map(|x| x * x).sum::<f64>());
        let out = libm::sqrt(b.a21.row_sums().iter().map(|x| x * x).sum::<f64>());
        let spill = gap * (gap - 1.0) + tf;
        let chain = gap * wf * wf + spill * spill / 2.0;
        entries.push(BoundEntry::new("degree-square-chain", chain, into * out, member && large));
        let relaxed = gap * wf * wf + 3.0 * tf * tf;
        entries.push(BoundEntry::new("degree-square-chain-relaxed", relaxed, into * out, member && large));
        let half = gap * gap + tf;
        let walk_chain = gap * wf * (wf - 1.0) + libm::floor(half / 2.0) * libm::ceil(half / 2.0);
        entries.push(BoundEntry::new("two-walk-chain", walk_chain, walk.lhs, member && large));
        if large {
            let s = k - w as u64;
            if let Ok(deficit) = clique_deficit_bound(k, t, s) {
                entries.push(BoundEntry::new("clique-deficit", deficit, rho, member));
            }
        }
    }

    Ok(BoundTrace {
        vertices: d.vertex_count(),
        arcs,
        k: dec.k,
        t: dec.t,
        clique_number: w,
        member,
        block_form: blocks.is_some(),
        rho,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::build_dsharp;
    use alloc::vec;
    use proptest::prelude::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn clique_arc_examples() {
        assert!(close(clique_arc_bound(5, 20).unwrap(), 4.0));
        assert!(close(clique_arc_bound(3, 10).unwrap(), 1.0 + libm::sqrt(3.0)));
        assert!(close(clique_arc_bound(4, 14).unwrap(), (3.0 + libm::sqrt(13.0)) / 2.0));
        let dec = ArcDecomposition::new(14).unwrap();
        assert!(close(clique_arc_bound_at_k(dec), (3.0 + libm::sqrt(13.0)) / 2.0));
        assert!(clique_arc_bound(4, 11).is_err());
        assert!(clique_arc_bound(0, 11).is_err());
    }

    #[test]
    fn clique_arc_increases_in_clique_number() {
        for e in 2..400u64 {
            let k = ArcDecomposition::new(e).unwrap().k as usize;
            for w in 1..k.saturating_sub(1) {
                assert!(clique_arc_bound(w, e).unwrap() < clique_arc_bound(w + 1, e).unwrap(), "e={e} w={w}");
            }
        }
    }

    #[test]
    fn block_norm_examples() {
        let z12 = Matrix::zeros(4, 2);
        let z21 = Matrix::zeros(2, 4);
        assert!(close(block_norm_bound(&z12, &z21, 4, Default::default()).unwrap(), 3.0));
        let b = BlockForm::new(&build_dsharp(8).unwrap()).unwrap();
        let v = block_norm_bound(&b.a12, &b.a21, b.clique, Default::default()).unwrap();
        assert!(close(v, (2.0 + libm::sqrt(8.0)) / 2.0));
        assert!(v >= 2.170086);
        assert!(block_norm_bound(&z12, &z21, 3, Default::default()).is_err());
    }

    #[test]
    fn degree_square_examples() {
        let z12 = Matrix::zeros(3, 2);
        let z21 = Matrix::zeros(2, 3);
        assert_eq!(degree_square_bound(&z12, &z21, 3).unwrap(), Majorization { lhs: 0.0, rhs: 0.0 });

        let mut a12 = Matrix::zeros(3, 2);
        for i in 0..3 {
            a12[(i, 0)] = 1.0;
        }
        assert_eq!(degree_square_bound(&a12, &z21, 3).unwrap(), Majorization { lhs: 9.0, rhs: 9.0 });

        let b = BlockForm::new(&build_dsharp(11).unwrap()).unwrap();
        assert_eq!(b.block_arcs(), (3, 2));
        assert_eq!(degree_square_bound(&b.a12, &b.a21, 3).unwrap(), Majorization { lhs: 13.0, rhs: 13.0 });
    }

    #[test]
    fn two_walk_examples() {
        let z12 = Matrix::zeros(3, 2);
        let z21 = Matrix::zeros(2, 3);
        assert_eq!(two_walk_bound(&z12, &z21, 3).unwrap(), Majorization { lhs: 0.0, rhs: 0.0 });

        let b = BlockForm::new(&build_dsharp(8).unwrap()).unwrap();
        assert_eq!(two_walk_bound(&b.a12, &b.a21, 3).unwrap(), Majorization { lhs: 1.0, rhs: 1.0 });

        // full blocks are not a block form of any member
        let full = two_walk_bound(&Matrix::filled(3, 2, 1.0), &Matrix::filled(2, 3, 1.0), 3).unwrap();
        assert_eq!(full, Majorization { lhs: 18.0, rhs: 13.0 });
        assert!(!full.holds());
    }

    #[test]
    fn coarse_examples() {
        assert_eq!(coarse_bound(6).unwrap(), 2.0);
        assert_eq!(coarse_bound(8).unwrap(), 2.5);
        assert_eq!(coarse_bound(5).unwrap(), 2.5);
        assert!(coarse_bound(1).is_err());
    }

    #[test]
    fn clique_deficit_examples() {
        let v = clique_deficit_bound(69, 2, 1).unwrap();
        assert!(v < 68.0 && (v - 67.988).abs() < 1e-3, "{v}");
        assert!(clique_deficit_bound(69, 2, 2).unwrap() <= clique_deficit_ceiling(69, 2));
        let v = clique_deficit_bound(1000, 2, 1).unwrap();
        assert!(v < 999.0 - 2.0 / (3.0 * 999.0), "{v}");
        assert!(clique_deficit_bound(69, 2, 0).is_err());
        assert!(matches!(clique_deficit_bound(4, 9, 1), Err(Error::BracketCondition(_))));
    }

    #[test]
    fn clique_deficit_grid() {
        for t in 2..=4u64 {
            let threshold = 4 * t.pow(4) + 4;
            let smax = libm::ceil(libm::sqrt(t as f64) + 1.0) as u64 - 1;
            for k in (threshold + 1..threshold + 3000).step_by(37) {
                for s in 1..=smax {
                    let v = clique_deficit_bound(k, t, s).unwrap();
                    assert!(v <= clique_deficit_ceiling(k, s), "k={k} t={t} s={s}: {v}");
                }
            }
        }
    }

    #[test]
    fn block_form_of_dsharp() {
        let b = BlockForm::new(&build_dsharp(11).unwrap()).unwrap();
        assert_eq!((b.clique, b.transposed), (3, false));
        assert_eq!(b.a21.column_sums()[2], 0.0);
        let t = BlockForm::new(&build_dsharp(11).unwrap().transpose()).unwrap();
        assert!(t.transposed);
        assert_eq!(t.a12, b.a12);
        assert!(BlockForm::new(&Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()).is_err());
    }

    #[test]
    fn trace_of_dsharp() {
        let tr = bound_trace(&build_dsharp(8).unwrap(), Default::default()).unwrap();
        assert!(tr.member && tr.block_form);
        assert_eq!(tr.violations().count(), 0);
        let names: Vec<&str> = tr.entries.iter().map(|e| e.name.as_str()).collect();
        for name in ["coarse", "clique-arc", "clique-arc-at-k", "block-norm", "degree-square", "two-walk"] {
            assert!(names.contains(&name), "{name}");
            assert!(tr.entry(name).unwrap().applicable);
        }
        assert!(!tr.entry("degree-square-chain").unwrap().applicable);
    }

    proptest! {
        #[test]
        fn block_norm_dominates_rho(bits in proptest::collection::vec(any::<bool>(), 2 * 4 * 3)) {
            let w = 4;
            let m = 3;
            let mut d = Digraph::complete(w + m);
            let mut arcs = vec![];
            for (i, j) in d.arcs() {
                if i < w && j < w {
                    arcs.push((i, j));
                }
            }
            for i in 0..w {
                for j in 0..m {
                    if bits[i * m + j] {
                        arcs.push((i, w + j));
                    }
                    if bits[w * m + j * w + i] {
                        arcs.push((w + j, i));
                    }
                }
            }
            d = Digraph::from_arcs(w + m, &arcs).unwrap();
            let mut a12 = Matrix::zeros(w, m);
            let mut a21 = Matrix::zeros(m, w);
            for i in 0..w {
                for j in 0..m {
                    a12[(i, j)] = f64::from(u8::from(bits[i * m + j]));
                    a21[(j, i)] = f64::from(u8::from(bits[w * m + j * w + i]));
                }
            }
            let rho = spectral_radius(&d, Default::default()).unwrap().rho;
            let bound = block_norm_bound(&a12, &a21, w, Default::default()).unwrap();
            prop_assert!(rho <= bound + AUDIT_SLACK, "{} > {}", rho, bound);
            prop_assert!(degree_square_bound(&a12, &a21, w).unwrap().holds());
        }
    }
}
