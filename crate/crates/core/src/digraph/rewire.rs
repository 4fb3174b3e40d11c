//! Arc-moving normalizer that carries a strongly connected digraph into the
//! nested prefix family without lowering its spectral radius.

use alloc::vec::Vec;

use super::{is_member_dss, Digraph};
use crate::spectral::{spectral_radius, SpectralOptions};
use crate::{Error, Result};

/// Output of [`rewire_to_dss`].
#[derive(Clone, Debug, PartialEq)]
pub struct Rewired {
    pub digraph: Digraph,
    /// `original_vertex[p]` is the input vertex now at position `p`; input
    /// vertices that ended up isolated are absent.
    pub original_vertex: Vec<usize>,
    pub rho_before: f64,
    pub rho_after: f64,
    pub rounds: usize,
    pub moves: usize,
}

/// Vertex order by nonincreasing right Perron entry, ties by index.
/// Entries equal to within `1e-9` relative count as ties so that symmetric
/// vertices keep their original order regardless of rounding noise.
fn perron_order(right: &[f64]) -> Vec<usize> {
    let scale = right.iter().copied().fold(0.0f64, f64::max).max(f64::MIN_POSITIVE);
    let key = |i: usize| -> i64 { -((right[i] / scale) * 1e9) as i64 };
    let mut order: Vec<usize> = (0..right.len()).collect();
    order.sort_by_key(|&i| (key(i), i));
    order
}

/// Relabels `d` by its Perron-descending order and returns the relabelled
/// digraph and the order if that makes it a member of the nested prefix
/// family.
pub fn find_dss_order(d: &Digraph, opts: SpectralOptions) -> Result<Option<(Digraph, Vec<usize>)>> {
    if is_member_dss(d).is_member() {
        return Ok(Some((d.clone(), (0..d.vertex_count()).collect())));
    }
    let order = perron_order(&spectral_radius(d, opts)?.right);
    let relabelled = d.relabel(&order);
    Ok(is_member_dss(&relabelled).is_member().then_some((relabelled, order)))
}

fn touched_vertices(d: &Digraph) -> Vec<usize> {
    (0..d.vertex_count()).filter(|&v| d.out_degree(v) + d.in_degree(v) > 0).collect()
}

/// Candidate arc moves `(source, old_target, new_source, new_target)` that
/// repair a membership violation, in deterministic preference order.
fn candidate_moves(d: &Digraph) -> Vec<(usize, usize, usize, usize)> {
    let n = d.vertex_count();
    let mut moves = Vec::new();
    // arcs that skip an earlier target: retarget to a smaller index
    for (i, j) in d.arcs() {
        for l in (0..j).filter(|&l| l != i && !d.has_arc(i, l)) {
            moves.push((i, j, i, l));
        }
    }
    // arcs that skip an earlier source: resource from a smaller index
    for (i, j) in d.arcs() {
        for a in (0..i).filter(|&a| a != j && !d.has_arc(a, j)) {
            moves.push((i, j, a, j));
        }
    }
    // a later vertex reaching something an earlier one does not: hand the
    // arc to the earlier vertex
    for earlier in 0..n {
        for later in earlier + 1..n {
            for l in d.out_neighbors(later) {
                if l != earlier && !d.has_arc(earlier, l) {
                    moves.push((later, l, earlier, l));
                }
            }
        }
    }
    moves
}

/// Every move of one arc endpoint to a free position, lexicographic.
fn endpoint_moves(d: &Digraph) -> Vec<(usize, usize, usize, usize)> {
    let n = d.vertex_count();
    let mut moves = Vec::new();
    for (i, j) in d.arcs() {
        for l in (0..n).filter(|&l| l != i && l != j && !d.has_arc(i, l)) {
            moves.push((i, j, i, l));
        }
        for a in (0..n).filter(|&a| a != i && a != j && !d.has_arc(a, j)) {
            moves.push((i, j, a, j));
        }
    }
    moves
}

/// Moves arcs one at a time until the digraph lies in the nested prefix
/// family under its Perron-descending order. Vertices left isolated by a
/// move are dropped, so the output may have fewer vertices than the input.
///
/// Each round relabels by the current right Perron vector and applies one
/// arc move. Repair moves retarget an arc to a smaller missing target,
/// resource it from a smaller missing source, or hand it from a later
/// vertex to an earlier one that lacks it. They are tried first among moves
/// that keep the digraph strongly connected and the spectral radius at
/// least its current value minus `opts.tol`, then with the radius floor
/// relaxed to the input value minus `opts.tol`. After that any single
/// endpoint move keeping strong connectivity is allowed, and finally moves
/// that break it. Digraphs seen before are skipped. A digraph already in the family is returned
/// unchanged.
///
/// Fails with [`Error::NormalizationStalled`] when no admissible move
/// exists or after `e * n` rounds. The oriented triangle stalls: no strongly
/// connected digraph with three arcs is in the family.
pub fn rewire_to_dss(d: &Digraph, opts: SpectralOptions) -> Result<Rewired> {
    if !d.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let n = d.vertex_count();
    let rho_before = spectral_radius(d, opts)?.rho;
    let mut out = Rewired {
        digraph: d.clone(),
        original_vertex: (0..n).collect(),
        rho_before,
        rho_after: rho_before,
        rounds: 0,
        moves: 0,
    };
    if is_member_dss(d).is_member() {
        return Ok(out);
    }
    let max_rounds = d.arc_count() * n;
    let order = perron_order(&spectral_radius(d, opts)?.right);
    let mut current = d.relabel(&order);
    out.original_vertex = order;
    let mut rho = rho_before;
    let mut visited = Vec::new();
    while !is_member_dss(&current).is_member() {
        if out.rounds == max_rounds {
            return Err(Error::NormalizationStalled { rounds: out.rounds });
        }
        out.rounds += 1;
        visited.push(current.clone());
        let strict = (rho - opts.tol).max(rho_before - opts.tol);
        let loose = rho_before - opts.tol;
        let repairs = candidate_moves(&current);
        let others = endpoint_moves(&current);
        let passes = [
            (&repairs, true, strict),
            (&repairs, true, loose),
            (&repairs, false, loose),
            (&others, true, loose),
            (&others, false, loose),
        ];
        let mut accepted = None;
        'passes: for (candidates, require_connected, floor) in passes {
            for &(i, j, a, l) in candidates {
                let mut next = current.clone();
                next.remove(i, j);
                next.insert(a, l);
                let keep = touched_vertices(&next);
                let next = if keep.len() < next.vertex_count() { next.induced(&keep) } else { next };
                if require_connected && !next.is_strongly_connected() {
                    continue;
                }
                let spectrum = spectral_radius(&next, opts)?;
                if spectrum.rho < floor {
                    continue;
                }
                let order = perron_order(&spectrum.right);
                let next = next.relabel(&order);
                if visited.contains(&next) {
                    continue;
                }
                accepted = Some((next, spectrum.rho, keep, order));
                break 'passes;
            }
        }
        let Some((next, next_rho, keep, order)) = accepted else {
            return Err(Error::NormalizationStalled { rounds: out.rounds });
        };
        let kept: Vec<usize> = keep.iter().map(|&p| out.original_vertex[p]).collect();
        out.original_vertex = order.iter().map(|&p| kept[p]).collect();
        current = next;
        rho = next_rho;
        out.moves += 1;
    }
    if rho < rho_before - opts.tol {
        return Err(Error::RewireNotMonotone { before: rho_before, after: rho });
    }
    out.digraph = current;
    out.rho_after = rho;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn member_is_fixed_point() {
        let d = crate::extremal::build_dsharp(11).unwrap();
        let r = rewire_to_dss(&d, Default::default()).unwrap();
        assert_eq!(r.digraph, d);
        assert_eq!((r.rounds, r.moves), (0, 0));
    }

    #[test]
    fn complete_is_permutation_invariant() {
        let k3 = Digraph::complete(3);
        let shuffled = k3.relabel(&[2, 0, 1]);
        assert_eq!(rewire_to_dss(&shuffled, Default::default()).unwrap().digraph, k3);
    }

    #[test]
    fn oriented_triangle_stalls() {
        let c3 = Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(matches!(rewire_to_dss(&c3, Default::default()), Err(Error::NormalizationStalled { .. })));
    }

    #[test]
    fn rejects_disconnected() {
        let d = Digraph::from_arcs(3, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(rewire_to_dss(&d, Default::default()), Err(Error::NotStronglyConnected));
    }

    #[test]
    fn hidden_member_is_found() {
        let d = crate::extremal::build_dsharp(9).unwrap().relabel(&[3, 1, 0, 2]);
        let (found, order) = find_dss_order(&d, Default::default()).unwrap().unwrap();
        assert!(is_member_dss(&found).is_member());
        assert_eq!(d.relabel(&order), found);
    }

    #[test]
    fn original_vertex_tracks_relabelling() {
        let d = Digraph::from_arcs(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 0), (2, 1)]).unwrap();
        let r = rewire_to_dss(&d, Default::default()).unwrap();
        assert!(is_member_dss(&r.digraph).is_member());
        assert_eq!(r.original_vertex.len(), r.digraph.vertex_count());
        let mut seen = r.original_vertex.clone();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), r.original_vertex.len());
        assert!(r.rho_after >= r.rho_before);
    }

    fn strongly_connected(max_n: usize) -> impl Strategy<Value = Digraph> {
        (2..=max_n).prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * n))).prop_filter_map(
            "strongly connected",
            |(n, bits)| {
                let arcs: Vec<_> = (0..n * n).filter(|&c| bits[c] && c / n != c % n).map(|c| (c / n, c % n)).collect();
                let d = Digraph::from_arcs(n, &arcs).ok()?;
                d.is_strongly_connected().then_some(d)
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]
        #[test]
        fn rewire_preserves_arcs_and_rho(d in strongly_connected(8)) {
            let opts = SpectralOptions::default();
            match rewire_to_dss(&d, opts) {
                Ok(r) => {
                    prop_assert_eq!(r.digraph.arc_count(), d.arc_count());
                    prop_assert!(is_member_dss(&r.digraph).is_member());
                    let rho_in = spectral_radius(&d, opts).unwrap().rho;
                    let rho_out = spectral_radius(&r.digraph, opts).unwrap().rho;
                    prop_assert!(rho_out >= rho_in - 2.0 * opts.tol, "{} < {}", rho_out, rho_in);
                }
                // three arcs only ever form the oriented triangle
                Err(Error::NormalizationStalled { .. }) if d.arc_count() == 3 => {}
                Err(e) => prop_assert!(false, "{}", e),
            }
        }
    }
}
