//! The nested prefix family: strongly connected digraphs whose vertex order
//! makes forward out-neighborhoods initial segments and out-neighborhoods
//! nested along the order.

use alloc::vec::Vec;
use core::fmt;

use super::Digraph;
use crate::{Error, Result};

/// Outcome of [`is_member_dss`]. Vertex indices are 0-based positions in
/// the stored order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DssMembership {
    Member,
    /// Arc `(from, to)` with `from < to` is present but `(from, missing)`
    /// is not, for some `missing < to`.
    PrefixViolation {
        from: usize,
        to: usize,
        missing: usize,
    },
    /// For `earlier < later`, `later` has an arc to `extra` (neither of the
    /// two) that `earlier` lacks.
    NestingViolation {
        earlier: usize,
        later: usize,
        extra: usize,
    },
    NotStronglyConnected,
}

impl DssMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, DssMembership::Member)
    }
}

/// Membership test under the stored vertex order; no permutations are
/// searched. Conditions are checked in order: forward prefix closure,
/// nestedness, strong connectivity. The first violation found is returned.
pub fn is_member_dss(d: &Digraph) -> DssMembership {
    let n = d.vertex_count();
    for i in 0..n {
        for j in d.out_neighbors(i).filter(|&j| j > i) {
            if let Some(missing) = (0..j).find(|&l| l != i && !d.has_arc(i, l)) {
                return DssMembership::PrefixViolation { from: i, to: j, missing };
            }
        }
    }
    for earlier in 0..n {
        for later in earlier + 1..n {
            let extra = d.out_neighbors(later).find(|&l| l != earlier && !d.has_arc(earlier, l));
            if let Some(extra) = extra {
                return DssMembership::NestingViolation { earlier, later, extra };
            }
        }
    }
    if !d.is_strongly_connected() {
        return DssMembership::NotStronglyConnected;
    }
    DssMembership::Member
}

/// Prefix-length encoding of a digraph whose every out-neighborhood is an
/// initial segment of the vertex order minus the vertex itself: vertex `i`
/// points to `{0, .., m[i]-1} \ {i}`.
///
/// Lengths `i` and `i + 1` describe the same neighborhood of vertex `i`;
/// the stored form always uses the shorter one, so two forms are equal iff
/// their expansions are.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(into = "Vec<usize>", try_from = "Vec<usize>"))]
pub struct CanonicalForm {
    m: Vec<usize>,
}

#[inline]
pub(crate) fn shortest_prefix(vertex: usize, len: usize) -> usize {
    if len == vertex + 1 {
        vertex
    } else {
        len
    }
}

#[inline]
pub(crate) fn prefix_out_degree(vertex: usize, len: usize) -> usize {
    len - usize::from(vertex < len)
}

impl CanonicalForm {
    pub fn new(m: Vec<usize>) -> Result<Self> {
        let n = m.len();
        if let Some(&bad) = m.iter().find(|&&x| x > n) {
            return Err(Error::InvalidArgument(alloc::format!("prefix length {bad} exceeds vertex count {n}")));
        }
        let m = m.into_iter().enumerate().map(|(i, x)| shortest_prefix(i, x)).collect();
        Ok(CanonicalForm { m })
    }

    /// Caller guarantees `m[i] <= m.len()` and `m[i] != i + 1`.
    pub(crate) fn from_normalized(m: Vec<usize>) -> Self {
        debug_assert!(m.iter().enumerate().all(|(i, &x)| x <= m.len() && x != i + 1));
        CanonicalForm { m }
    }

    /// Encode `d` if all of its out-neighborhoods are prefixes.
    pub fn from_digraph(d: &Digraph) -> Option<Self> {
        let n = d.vertex_count();
        let mut m = Vec::with_capacity(n);
        for i in 0..n {
            let len = d.out_neighbors(i).last().map_or(0, |j| j + 1);
            if prefix_out_degree(i, len) != d.out_degree(i) {
                return None;
            }
            m.push(shortest_prefix(i, len));
        }
        Some(CanonicalForm { m })
    }

    pub fn vertex_count(&self) -> usize {
        self.m.len()
    }

    pub fn prefix_lengths(&self) -> &[usize] {
        &self.m
    }

    pub fn arc_count(&self) -> usize {
        self.m.iter().enumerate().map(|(i, &x)| prefix_out_degree(i, x)).sum()
    }

    pub fn expand(&self) -> Digraph {
        expand_canonical(self)
    }
}

impl From<CanonicalForm> for Vec<usize> {
    fn from(c: CanonicalForm) -> Self {
        c.m
    }
}

impl TryFrom<Vec<usize>> for CanonicalForm {
    type Error = Error;
    fn try_from(m: Vec<usize>) -> Result<Self> {
        CanonicalForm::new(m)
    }
}

/// `n: m_1 m_2 ... m_n`
impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.m.len())?;
        for x in &self.m {
            write!(f, " {x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({self})")
    }
}

/// Vertex `i` gets out-neighborhood `{0, .., m_i - 1} \ {i}`.
pub fn expand_canonical(c: &CanonicalForm) -> Digraph {
    let n = c.vertex_count();
    let mut d = Digraph::empty(n);
    for (i, &len) in c.m.iter().enumerate() {
        for j in (0..len).filter(|&j| j != i) {
            d.insert(i, j);
        }
    }
    d
}
