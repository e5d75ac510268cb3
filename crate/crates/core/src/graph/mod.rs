//! Simple undirected graphs on the vertex set `0..n`.
//!
//! A [`Graph`] is immutable once built: every operation here returns a new
//! graph. Adjacency lists are kept sorted, so equality of two graphs is
//! equality of labeled edge sets.

pub(crate) mod generate;
mod io;
mod ops;

pub use generate::{generate, petersen, GraphKind, GraphSpec};
pub use io::{decode_graph6, encode_graph6, parse_edge_list, to_dot, to_edge_list};
pub use ops::{blowup, cartesian_product, disjoint_union, join, power, Blowup};

use std::collections::VecDeque;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// The edgeless graph of order `n`.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list, dropping duplicate pairs.
    ///
    /// Endpoints must lie in `0..n` and loops are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        order: n,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Graph { adj, m: m / 2 })
    }

    /// Internal constructor for edge lists already known to be valid.
    pub(crate) fn from_valid_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Graph::from_edges(n, edges).expect("internally generated edge list is valid")
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_valid_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn path(n: usize) -> Self {
        Graph::from_valid_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Graph::from_valid_edges(n, edges)
    }

    /// `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Self {
        Graph::from_valid_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }

    /// `|G|`
    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// `e(G)`
    #[inline]
    pub fn size(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// `δ(G)`; zero for the null graph.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// `Δ(G)`; zero for the null graph.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `Some(d)` if every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        Graph::from_valid_edges(
            n,
            (0..n).flat_map(|u| {
                (u + 1..n)
                    .filter(move |&v| !self.has_edge(u, v))
                    .map(move |v| (u, v))
            }),
        )
    }

    /// The subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_valid_edges(vertices.len(), edges)
    }

    /// One row per vertex, each holding its neighborhood as a bit set.
    pub fn adjacency_bits(&self) -> Vec<BitSet> {
        let n = self.order();
        self.adj
            .iter()
            .map(|l| BitSet::from_iter(n, l.iter().copied()))
            .collect()
    }

    /// Connected components of `G - removed`, each sorted, ordered by
    /// smallest vertex.
    pub fn components_without(&self, removed: &[usize]) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        for &r in removed {
            seen[r] = true;
        }
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_without(&[])
    }

    /// `ψ(G - removed)`: the order of the largest component left after
    /// deleting `removed`.
    pub fn largest_component_without(&self, removed: &[usize]) -> usize {
        self.components_without(removed)
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.order() >= 1 && self.size() + 1 == self.order() && self.is_connected()
    }

    /// BFS distances from `source`; `usize::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// `e(X, Y)` for disjoint `X`, `Y`.
    pub fn edges_between(&self, xs: &[usize], ys: &[usize]) -> usize {
        let mut in_y = vec![false; self.order()];
        for &y in ys {
            in_y[y] = true;
        }
        xs.iter()
            .map(|&x| self.adj[x].iter().filter(|&&w| in_y[w]).count())
            .sum()
    }

    /// `Γ(X)`: vertices adjacent to every member of `xs`. For empty `xs`
    /// this is the whole vertex set.
    pub fn common_neighbors(&self, xs: &[usize]) -> Vec<usize> {
        let Some((&first, rest)) = xs.split_first() else {
            return (0..self.order()).collect();
        };
        self.adj[first]
            .iter()
            .copied()
            .filter(|&v| rest.iter().all(|&x| self.has_edge(x, v)))
            .collect()
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }
}
