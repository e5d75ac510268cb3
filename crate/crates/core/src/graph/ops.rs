use super::Graph;
use crate::error::{Error, Result};

/// Disjoint union; the vertices of `h` are shifted by `|g|`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let off = g.order();
    Graph::from_valid_edges(
        off + h.order(),
        g.edges().chain(h.edges().map(|(u, v)| (u + off, v + off))),
    )
}

/// `G + H`: the disjoint union plus every edge between the two sides.
/// Vertices of `g` come first.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let off = g.order();
    let cross = (0..off).flat_map(|u| (0..h.order()).map(move |v| (u, v + off)));
    Graph::from_valid_edges(
        off + h.order(),
        g.edges()
            .chain(h.edges().map(|(u, v)| (u + off, v + off)))
            .chain(cross),
    )
}

/// `G^k`: same vertex set, `uv` adjacent iff `1 <= dist(u, v) <= k`.
pub fn power(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::params("graph power requires k >= 1"));
    }
    let n = g.order();
    let mut edges = Vec::new();
    for u in 0..n {
        // truncated BFS
        let mut dist = vec![usize::MAX; n];
        dist[u] = 0;
        let mut frontier = vec![u];
        for d in 1..=k {
            let mut next = Vec::new();
            for &x in &frontier {
                for &w in g.neighbors(x) {
                    if dist[w] == usize::MAX {
                        dist[w] = d;
                        next.push(w);
                        if w > u {
                            edges.push((u, w));
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
    }
    Ok(Graph::from_valid_edges(n, edges))
}

/// Cartesian product. The pair `(a, b)` becomes vertex `a * |H| + b`, and
/// `(a, b) ~ (a', b')` iff `a = a'` and `b ~ b'`, or `b = b'` and `a ~ a'`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let m = h.order();
    let mut edges = Vec::with_capacity(g.order() * h.size() + m * g.size());
    for a in 0..g.order() {
        for (b, c) in h.edges() {
            edges.push((a * m + b, a * m + c));
        }
    }
    for (a, c) in g.edges() {
        for b in 0..m {
            edges.push((a * m + b, c * m + b));
        }
    }
    Graph::from_valid_edges(g.order() * m, edges)
}

/// A clique blow-up together with the ancestor map back to the base graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blowup {
    pub graph: Graph,
    /// `ancestor[x]` is the base vertex that `x` replaces.
    pub ancestor: Vec<usize>,
    /// Largest clique order used, `K = max k_i`.
    pub max_multiplicity: usize,
}

impl Blowup {
    /// `φ^{-1}(set)`: all new vertices whose ancestor lies in `set`.
    pub fn preimage(&self, set: &[usize]) -> Vec<usize> {
        let base_n = self.ancestor.last().map_or(0, |&a| a + 1);
        let mut mark = vec![false; base_n];
        for &v in set {
            mark[v] = true;
        }
        (0..self.graph.order())
            .filter(|&x| mark[self.ancestor[x]])
            .collect()
    }
}

/// Replaces vertex `i` by a clique of order `sizes[i]` and every edge `ij` by
/// a complete bipartite graph. Blocks are laid out consecutively in the order
/// of the base vertices.
pub fn blowup(g: &Graph, sizes: &[usize]) -> Result<Blowup> {
    if sizes.len() != g.order() {
        return Err(Error::params(format!(
            "blow-up vector has length {}, graph has order {}",
            sizes.len(),
            g.order()
        )));
    }
    if let Some(i) = sizes.iter().position(|&k| k == 0) {
        return Err(Error::params(format!(
            "blow-up size for vertex {i} must be positive"
        )));
    }
    let mut start = Vec::with_capacity(sizes.len() + 1);
    let mut ancestor = Vec::new();
    start.push(0);
    for (i, &k) in sizes.iter().enumerate() {
        ancestor.extend(std::iter::repeat_n(i, k));
        start.push(start[i] + k);
    }
    let block = |i: usize| start[i]..start[i + 1];
    let mut edges = Vec::new();
    for i in 0..g.order() {
        for x in block(i) {
            for y in x + 1..start[i + 1] {
                edges.push((x, y));
            }
        }
    }
    for (i, j) in g.edges() {
        for x in block(i) {
            for y in block(j) {
                edges.push((x, y));
            }
        }
    }
    Ok(Blowup {
        graph: Graph::from_valid_edges(ancestor.len(), edges),
        ancestor,
        max_multiplicity: sizes.iter().copied().max().unwrap_or(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
            })
        })
    }

    #[test]
    fn join_examples() {
        let wheel = join(&Graph::empty(1), &Graph::cycle(5));
        assert_eq!((wheel.order(), wheel.size()), (6, 10));
        let b23 = join(&Graph::complete(2), &Graph::empty(3));
        assert_eq!((b23.order(), b23.size()), (5, 7));
        assert_eq!(join(&Graph::empty(0), &Graph::cycle(4)), Graph::cycle(4));
    }

    #[test]
    fn power_examples() {
        assert_eq!(power(&Graph::path(4), 1).unwrap(), Graph::path(4));
        assert_eq!(power(&Graph::path(4), 3).unwrap(), Graph::complete(4));
        let c6sq = power(&Graph::cycle(6), 2).unwrap();
        assert_eq!(c6sq.regular_degree(), Some(4));
        assert!(power(&Graph::path(3), 0).is_err());
    }

    #[test]
    fn product_examples() {
        let c4 = cartesian_product(&Graph::path(2), &Graph::path(2));
        assert_eq!(c4.regular_degree(), Some(2));
        assert_eq!(c4.size(), 4);
        let g = Graph::cycle(5);
        assert_eq!(cartesian_product(&Graph::empty(1), &g), g);
    }

    #[test]
    fn blowup_examples() {
        assert_eq!(
            blowup(&Graph::path(2), &[2, 2]).unwrap().graph,
            Graph::complete(4)
        );
        assert_eq!(
            blowup(&Graph::path(3), &[1, 1, 1]).unwrap().graph,
            Graph::path(3)
        );
        let b = blowup(&Graph::cycle(5), &[2; 5]).unwrap();
        assert_eq!(b.graph.order(), 10);
        assert_eq!(b.graph.regular_degree(), Some(5));
        assert!(blowup(&Graph::path(2), &[1, 0]).is_err());
        assert!(blowup(&Graph::path(2), &[1]).is_err());
    }

    proptest! {
        #[test]
        fn join_counts(g in arb_graph(7), h in arb_graph(7)) {
            let j = join(&g, &h);
            prop_assert_eq!(j.order(), g.order() + h.order());
            prop_assert_eq!(j.size(), g.size() + h.size() + g.order() * h.order());
        }

        #[test]
        fn power_matches_all_pairs_bfs(g in arb_graph(9), k in 1usize..4) {
            let p = power(&g, k).unwrap();
            for u in 0..g.order() {
                let dist = g.bfs_distances(u);
                for v in 0..g.order() {
                    let expect = u != v && dist[v] <= k;
                    prop_assert_eq!(p.has_edge(u, v), expect);
                }
            }
        }

        #[test]
        fn blowup_respects_ancestors(g in arb_graph(6), seed in proptest::collection::vec(1usize..4, 6)) {
            let sizes = &seed[..g.order()];
            let b = blowup(&g, sizes).unwrap();
            prop_assert_eq!(b.graph.order(), sizes.iter().sum::<usize>());
            for x in 0..b.graph.order() {
                for y in 0..b.graph.order() {
                    let (u, v) = (b.ancestor[x], b.ancestor[y]);
                    if u != v {
                        prop_assert_eq!(b.graph.has_edge(x, y), g.has_edge(u, v));
                    } else if x != y {
                        prop_assert!(b.graph.has_edge(x, y));
                    }
                }
            }
        }
    }
}
