use alloc::vec;
use alloc::vec::Vec;

use super::{bits, Digraph, WORD};

/// Undirected adjacency rows of the bidirected-pair graph: `u ~ v` iff both
/// `(u, v)` and `(v, u)` are arcs.
pub fn bidirected_pairs(d: &Digraph) -> Vec<Vec<u64>> {
    let n = d.vertex_count();
    let words = n.div_ceil(WORD).max(1);
    let mut rows = vec![vec![0u64; words]; n];
    for (i, j) in d.arcs() {
        if d.has_arc(j, i) {
            rows[i][j / WORD] |= 1 << (j % WORD);
        }
    }
    rows
}

/// Clique number: the largest `w` such that the complete simple digraph on
/// `w` vertices is a subgraph. Zero only for the vertexless digraph.
pub fn clique_number(d: &Digraph) -> usize {
    maximum_clique(d).len()
}

/// A maximum vertex set inducing all bidirected pairs, sorted.
///
/// Exact Bron-Kerbosch with Tomita pivoting and a size bound; fine for the
/// few dozen vertices this crate works with.
pub fn maximum_clique(d: &Digraph) -> Vec<usize> {
    let n = d.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let adj = bidirected_pairs(d);
    let words = adj[0].len();
    let mut candidates = vec![0u64; words];
    for v in 0..n {
        candidates[v / WORD] |= 1 << (v % WORD);
    }
    let mut search = Search { adj: &adj, best: vec![0], current: Vec::new() };
    search.expand(candidates, vec![0u64; words]);
    search.best.sort_unstable();
    search.best
}

struct Search<'a> {
    adj: &'a [Vec<u64>],
    best: Vec<usize>,
    current: Vec<usize>,
}

fn count(set: &[u64]) -> usize {
    set.iter().map(|w| w.count_ones() as usize).sum()
}

fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

impl Search<'_> {
    fn expand(&mut self, mut p: Vec<u64>, mut x: Vec<u64>) {
        let p_size = count(&p);
        if p_size == 0 {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        }
        if self.current.len() + p_size <= self.best.len() {
            return;
        }
        // pivot maximizing |P ∩ N(u)| over P ∪ X
        let pivot = bits(&p).chain(bits(&x)).max_by_key(|&u| count(&and(&p, &self.adj[u]))).expect("P is nonempty");
        let branch: Vec<usize> = bits(&p).filter(|&v| self.adj[pivot][v / WORD] >> (v % WORD) & 1 == 0).collect();
        for v in branch {
            let np = and(&p, &self.adj[v]);
            let nx = and(&x, &self.adj[v]);
            self.current.push(v);
            self.expand(np, nx);
            self.current.pop();
            p[v / WORD] &= !(1 << (v % WORD));
            x[v / WORD] |= 1 << (v % WORD);
        }
    }
}
