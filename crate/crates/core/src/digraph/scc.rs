use alloc::vec;
use alloc::vec::Vec;

use super::Digraph;

/// Strongly connected components in reverse topological order: the first
/// class has no arcs leaving it. Vertices inside a class are sorted.
///
/// Iterative Tarjan, so deep digraphs do not grow the call stack.
pub fn strongly_connected_components(d: &Digraph) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = d.vertex_count();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut next = 0;

    let succ: Vec<Vec<usize>> = (0..n).map(|v| d.out_neighbors(v).collect()).collect();
    // (vertex, position in its successor list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos == 0 && index[v] == UNSEEN {
                index[v] = next;
                low[v] = next;
                next += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = succ[v].get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut class = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    class.push(w);
                    if w == v {
                        break;
                    }
                }
                class.sort_unstable();
                out.push(class);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn classes(d: &Digraph) -> Vec<Vec<usize>> {
        strongly_connected_components(d)
    }

    #[test]
    fn examples() {
        assert_eq!(classes(&Digraph::complete(3)), [vec![0, 1, 2]]);

        let path = Digraph::from_arcs(3, &[(0, 1), (1, 2)]).unwrap();
        // sink first
        assert_eq!(classes(&path), [vec![2], vec![1], vec![0]]);

        let triangle = Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(classes(&triangle), [vec![0, 1, 2]]);
    }

    fn closure(d: &Digraph) -> Vec<Vec<bool>> {
        let n = d.vertex_count();
        let mut r: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j || d.has_arc(i, j)).collect()).collect();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if r[i][k] && r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
        r
    }

    fn digraph_strategy(max_n: usize) -> impl Strategy<Value = Digraph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
                let arcs: Vec<_> = (0..n * n).filter(|&b| bits[b] && b / n != b % n).map(|b| (b / n, b % n)).collect();
                Digraph::from_arcs(n, &arcs).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn agrees_with_transitive_closure(d in digraph_strategy(8)) {
            let r = closure(&d);
            let cs = classes(&d);
            let n = d.vertex_count();
            let mut class_of = vec![usize::MAX; n];
            for (c, class) in cs.iter().enumerate() {
                for &v in class {
                    prop_assert_eq!(class_of[v], usize::MAX);
                    class_of[v] = c;
                }
            }
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(class_of[i] == class_of[j], r[i][j] && r[j][i]);
                    // reverse topological: arcs only go to the same or earlier classes
                    if d.has_arc(i, j) {
                        prop_assert!(class_of[j] <= class_of[i]);
                    }
                }
            }
            prop_assert_eq!(d.is_strongly_connected(), cs.len() == 1);
        }
    }
}
