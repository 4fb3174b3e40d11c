//! Simple digraphs stored as per-vertex bitset rows.

mod clique;
mod iso;
mod nested;
mod rewire;
mod scc;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::spectral::Matrix;
use crate::{Error, Result};

pub use clique::{bidirected_pairs, clique_number, maximum_clique};
pub use iso::are_isomorphic;
pub(crate) use nested::prefix_out_degree;
pub use nested::{expand_canonical, is_member_dss, CanonicalForm, DssMembership};
pub use rewire::{find_dss_order, rewire_to_dss, Rewired};
pub use scc::strongly_connected_components;

const WORD: usize = 64;

/// A simple digraph: no loops, no multiarcs. Vertices are `0..n`.
///
/// Bit `j` of row `i` is set iff the arc `(i, j)` is present. Values are
/// immutable once built; the transformations below return new digraphs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    arcs: usize,
}

impl Digraph {
    /// The arcless digraph on `n` vertices. `n = 0` is allowed.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        Digraph { n, words, rows: vec![0; n * words], arcs: 0 }
    }

    /// The complete simple digraph on `n` vertices (adjacency `J - I`).
    pub fn complete(n: usize) -> Self {
        let mut d = Digraph::empty(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    d.insert(i, j);
                }
            }
        }
        d
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut d = Digraph::empty(n);
        for &(i, j) in arcs {
            for index in [i, j] {
                if index >= n {
                    return Err(Error::VertexOutOfRange { index, n });
                }
            }
            if i == j {
                return Err(Error::LoopForbidden(i));
            }
            if !d.insert(i, j) {
                return Err(Error::MultiarcForbidden(i, j));
            }
        }
        Ok(d)
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.arcs
    }

    #[inline]
    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        self.rows[i * self.words + j / WORD] >> (j % WORD) & 1 == 1
    }

    pub(crate) fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn in_degree(&self, j: usize) -> usize {
        (0..self.n).filter(|&i| self.has_arc(i, j)).count()
    }

    pub fn out_neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.row(i))
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.out_neighbors(i).map(move |j| (i, j)))
    }

    /// Copy with the arc `(i, j)` added.
    pub fn with_arc(&self, i: usize, j: usize) -> Result<Self> {
        self.check_pair(i, j)?;
        let mut d = self.clone();
        if !d.insert(i, j) {
            return Err(Error::MultiarcForbidden(i, j));
        }
        Ok(d)
    }

    /// Copy with the arc `(i, j)` removed; `None` if it was absent.
    pub fn without_arc(&self, i: usize, j: usize) -> Option<Self> {
        if i >= self.n || j >= self.n || !self.has_arc(i, j) {
            return None;
        }
        let mut d = self.clone();
        d.remove(i, j);
        Some(d)
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        for index in [i, j] {
            if index >= self.n {
                return Err(Error::VertexOutOfRange { index, n: self.n });
            }
        }
        if i == j {
            return Err(Error::LoopForbidden(i));
        }
        Ok(())
    }

    pub(crate) fn insert(&mut self, i: usize, j: usize) -> bool {
        let w = &mut self.rows[i * self.words + j / WORD];
        let mask = 1u64 << (j % WORD);
        if *w & mask != 0 {
            return false;
        }
        *w |= mask;
        self.arcs += 1;
        true
    }

    pub(crate) fn remove(&mut self, i: usize, j: usize) -> bool {
        let w = &mut self.rows[i * self.words + j / WORD];
        let mask = 1u64 << (j % WORD);
        if *w & mask == 0 {
            return false;
        }
        *w &= !mask;
        self.arcs -= 1;
        true
    }

    /// Reverse every arc.
    pub fn transpose(&self) -> Self {
        let mut d = Digraph::empty(self.n);
        for (i, j) in self.arcs() {
            d.insert(j, i);
        }
        d
    }

    /// Relabel so that new vertex `p` is old vertex `order[p]`.
    ///
    /// `order` must be a permutation of `0..n`.
    pub fn relabel(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.n, "relabel needs a full permutation");
        let mut new_of = vec![usize::MAX; self.n];
        for (new, &old) in order.iter().enumerate() {
            assert!(old < self.n && new_of[old] == usize::MAX, "relabel needs a permutation");
            new_of[old] = new;
        }
        let mut d = Digraph::empty(self.n);
        for (i, j) in self.arcs() {
            d.insert(new_of[i], new_of[j]);
        }
        d
    }

    /// Subdigraph induced by `vertices`, relabelled `0..vertices.len()` in
    /// the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut d = Digraph::empty(vertices.len());
        for (a, &i) in vertices.iter().enumerate() {
            for (b, &j) in vertices.iter().enumerate() {
                if a != b && self.has_arc(i, j) {
                    d.insert(a, b);
                }
            }
        }
        d
    }

    /// Drop vertices with zero in- and out-degree, keeping the relative order
    /// of the others. May return the empty (`n = 0`) digraph.
    pub fn remove_isolated(&self) -> Self {
        let mut touched = vec![false; self.n];
        for (i, j) in self.arcs() {
            touched[i] = true;
            touched[j] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| touched[v]).collect();
        self.induced(&keep)
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        // Forward and backward reachability from vertex 0.
        let reach = |forward: bool| {
            let mut seen = vec![false; self.n];
            let mut stack = vec![0usize];
            seen[0] = true;
            let mut count = 1;
            while let Some(u) = stack.pop() {
                for (v, seen_v) in seen.iter_mut().enumerate() {
                    let arc = if forward { self.has_arc(u, v) } else { self.has_arc(v, u) };
                    if arc && !*seen_v {
                        *seen_v = true;
                        count += 1;
                        stack.push(v);
                    }
                }
            }
            count
        };
        reach(true) == self.n && reach(false) == self.n
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency(&self) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for (i, j) in self.arcs() {
            m[(i, j)] = 1.0;
        }
        m
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph").field("n", &self.n).field("arcs", &self.arcs().collect::<Vec<_>>()).finish()
    }
}

pub(crate) fn bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        core::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * WORD + b)
        })
    })
}
