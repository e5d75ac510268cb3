use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Output of [`tree_split`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TreeSplit {
    pub k: usize,
    pub separator: Vec<usize>,
    /// `ψ(T - S)`
    pub largest_component: usize,
    /// `2^{k+2} - 6`
    pub size_bound: u128,
    /// `2^{-k} n`
    pub component_bound: f64,
}

impl TreeSplit {
    pub fn within_bounds(&self) -> bool {
        (self.separator.len() as u128) <= self.size_bound
            && self.largest_component as f64 <= self.component_bound
    }
}

/// Vertex of `comp` (a subtree, as sorted global labels) minimizing the
/// largest piece left after its removal; lowest label on ties. Also returns
/// that piece's vertices.
fn centroid(t: &Graph, comp: &[usize], removed: &[bool]) -> (usize, Vec<usize>) {
    let root = comp[0];
    let n = t.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(comp.len());
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in t.neighbors(v) {
            if !removed[w] && parent[w] == usize::MAX {
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut size = vec![1usize; n];
    let mut heaviest_child = vec![0usize; n];
    for &v in order.iter().rev() {
        if v != root {
            let p = parent[v];
            size[p] += size[v];
            heaviest_child[p] = heaviest_child[p].max(size[v]);
        }
    }
    let total = comp.len();
    let piece = |v: usize| heaviest_child[v].max(total - size[v]);
    let c = *comp.iter().min_by_key(|&&v| (piece(v), v)).unwrap();

    // the largest piece of comp - c, ties to the smallest vertex label
    let mut best: Vec<usize> = Vec::new();
    for &w in t.neighbors(c) {
        if removed[w] {
            continue;
        }
        let mut seen = vec![w];
        let mut stack = vec![w];
        let mut mark = std::collections::HashSet::from([c, w]);
        while let Some(v) = stack.pop() {
            for &x in t.neighbors(v) {
                if !removed[x] && mark.insert(x) {
                    seen.push(x);
                    stack.push(x);
                }
            }
        }
        seen.sort_unstable();
        if seen.len() > best.len() || (seen.len() == best.len() && seen[0] < best[0]) {
            best = seen;
        }
    }
    (c, best)
}

/// Recursive centroid splitting of a tree. In round `j = 1..=k`, every
/// component of order above `2^{-j} n` loses its centroid and the centroid
/// of its largest remaining piece. The result satisfies `|S| <= 2^{k+2} - 6`
/// and `ψ(T - S) <= 2^{-k} n`.
pub fn tree_split(t: &Graph, k: usize) -> Result<TreeSplit> {
    let n = t.order();
    if n < 2 || !t.is_tree() {
        return Err(Error::precondition(
            "tree_split needs a tree with at least two vertices",
        ));
    }
    if k == 0 || k > 120 {
        return Err(Error::params(format!("k must lie in 1..=120, got {k}")));
    }
    let mut removed = vec![false; n];
    let mut separator = Vec::new();
    for j in 1..=k {
        let threshold = n as f64 / 2f64.powi(j as i32);
        let sep_now: Vec<usize> = (0..n).filter(|&v| removed[v]).collect();
        for comp in t.components_without(&sep_now) {
            if comp.len() as f64 <= threshold {
                continue;
            }
            let (c, piece) = centroid(t, &comp, &removed);
            removed[c] = true;
            separator.push(c);
            if !piece.is_empty() {
                let (c2, _) = centroid(t, &piece, &removed);
                removed[c2] = true;
                separator.push(c2);
            }
        }
    }
    separator.sort_unstable();
    let largest_component = t.largest_component_without(&separator);
    Ok(TreeSplit {
        k,
        separator,
        largest_component,
        size_bound: (1u128 << (k + 2)) - 6,
        component_bound: n as f64 / 2f64.powi(k as i32),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind, GraphSpec};
    use proptest::prelude::*;

    #[test]
    fn path_and_star() {
        let s = tree_split(&Graph::path(100), 1).unwrap();
        assert_eq!(s.separator, vec![49, 74]);
        assert!(s.within_bounds());
        let s = tree_split(&Graph::star(30), 1).unwrap();
        assert_eq!(s.separator, vec![0, 1]);
        assert_eq!(s.largest_component, 1);
    }

    #[test]
    fn p8_matches_best_pair() {
        let p = Graph::path(8);
        let s = tree_split(&p, 1).unwrap();
        let best = (0..8)
            .flat_map(|u| (u + 1..8).map(move |v| (u, v)))
            .map(|(u, v)| p.largest_component_without(&[u, v]))
            .min()
            .unwrap();
        assert!(s.separator.len() <= 2 && s.largest_component <= 4);
        assert!(best <= s.largest_component);
    }

    #[test]
    fn rejects_non_trees() {
        assert!(tree_split(&Graph::cycle(5), 1).is_err());
        assert!(tree_split(&Graph::empty(1), 1).is_err());
        assert!(tree_split(&Graph::path(5), 0).is_err());
    }

    #[test]
    fn bounds_hold_on_random_trees() {
        for seed in 0..100 {
            let n = 2 + (seed as usize * 37) % 1999;
            let t = generate(&GraphSpec::new(GraphKind::RandomTree, [n]).with_seed(seed)).unwrap();
            for k in 1..=8 {
                let s = tree_split(&t, k).unwrap();
                assert!(
                    s.within_bounds(),
                    "n={n} k={k} {:?}",
                    (s.separator.len(), s.largest_component)
                );
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn rounds_are_nested(n in 2usize..300, seed in any::<u64>(), k in 1usize..7) {
            let t = generate(&GraphSpec::new(GraphKind::RandomTree, [n]).with_seed(seed)).unwrap();
            let s = tree_split(&t, k).unwrap();
            prop_assert!(s.within_bounds());
            let deeper = tree_split(&t, k + 1).unwrap();
            prop_assert!(s.separator.iter().all(|v| deeper.separator.contains(v)));
        }
    }
}
