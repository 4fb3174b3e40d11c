use alloc::vec;
use alloc::vec::Vec;

use super::Digraph;

/// Exact isomorphism test by backtracking over degree-compatible vertex
/// maps. Intended for the small digraphs that show up in sweep reports.
pub fn are_isomorphic(a: &Digraph, b: &Digraph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.arc_count() != b.arc_count() {
        return false;
    }
    let sig = |d: &Digraph| -> Vec<(usize, usize)> { (0..n).map(|v| (d.out_degree(v), d.in_degree(v))).collect() };
    let (sa, sb) = (sig(a), sig(b));
    let (mut ka, mut kb) = (sa.clone(), sb.clone());
    ka.sort_unstable();
    kb.sort_unstable();
    if ka != kb {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(a, b, &sa, &sb, 0, &mut map, &mut used)
}

fn extend(
    a: &Digraph,
    b: &Digraph,
    sa: &[(usize, usize)],
    sb: &[(usize, usize)],
    v: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = a.vertex_count();
    if v == n {
        return true;
    }
    for img in 0..n {
        if used[img] || sa[v] != sb[img] {
            continue;
        }
        let consistent =
            (0..v).all(|u| a.has_arc(u, v) == b.has_arc(map[u], img) && a.has_arc(v, u) == b.has_arc(img, map[u]));
        if !consistent {
            continue;
        }
        map[v] = img;
        used[img] = true;
        if extend(a, b, sa, sb, v + 1, map, used) {
            return true;
        }
        used[img] = false;
    }
    map[v] = usize::MAX;
    false
}
