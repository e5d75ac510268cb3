//! Embeddings (monomorphisms) of a pattern graph into a host graph.
//!
//! Every constructive routine in this module places pattern vertices one at
//! a time along a degeneracy order, so each new vertex only has to land in
//! the common host neighborhood of a few already-placed images.

mod dense;
mod drc;
mod driver;

pub use dense::{dense_core, DenseCore};
pub use drc::{dependent_random_choice, DrcOptions, DrcResult};
pub use driver::{embed_splittable, SplitEmbedding, StepBound, ZonePlan};

use serde::ser::{Serialize, Serializer};

use crate::bitset::BitSet;
use crate::degeneracy::degeneracy_order;
use crate::graph::{encode_graph6, Graph};

/// Default number of backtracking steps before a search gives up.
pub const BACKTRACK_BUDGET: usize = 1000;

/// An injective, edge-preserving map `V(pattern) → V(host)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub pattern: Graph,
    pub host: Graph,
    pub map: Vec<usize>,
}

impl Embedding {
    pub fn new(pattern: Graph, host: Graph, map: Vec<usize>) -> Self {
        Embedding { pattern, host, map }
    }
}

impl Serialize for Embedding {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Dump<'a> {
            pattern_g6: String,
            host_g6: String,
            map: &'a [usize],
        }
        Dump {
            pattern_g6: String::from_utf8_lossy(&encode_graph6(&self.pattern)).into_owned(),
            host_g6: String::from_utf8_lossy(&encode_graph6(&self.host)).into_owned(),
            map: &self.map,
        }
        .serialize(s)
    }
}

/// Checks injectivity and edge preservation directly from the two graphs.
pub fn verify_embedding(e: &Embedding) -> bool {
    if e.map.len() != e.pattern.order() {
        return false;
    }
    let mut seen = vec![false; e.host.order()];
    for &x in &e.map {
        if x >= e.host.order() || std::mem::replace(&mut seen[x], true) {
            return false;
        }
    }
    e.pattern
        .edges()
        .all(|(u, v)| e.host.has_edge(e.map[u], e.map[v]))
}

/// Partial embedding state shared by the constructive routines.
pub(crate) struct Extender<'a> {
    pattern: &'a Graph,
    host_bits: &'a [BitSet],
    pub(crate) map: Vec<Option<usize>>,
    pub(crate) used: BitSet,
    budget: usize,
}

impl<'a> Extender<'a> {
    pub(crate) fn new(pattern: &'a Graph, host_bits: &'a [BitSet], host_order: usize) -> Self {
        Extender {
            pattern,
            host_bits,
            map: vec![None; pattern.order()],
            used: BitSet::new(host_order),
            budget: BACKTRACK_BUDGET,
        }
    }

    /// Free host vertices inside `allowed` adjacent to the images of every
    /// placed neighbor of `v`, ascending.
    pub(crate) fn candidates(&self, v: usize, allowed: &BitSet) -> Vec<usize> {
        let mut c = allowed.clone();
        for &w in self.pattern.neighbors(v) {
            if let Some(x) = self.map[w] {
                c.intersect_with(&self.host_bits[x]);
            }
        }
        c.difference_with(&self.used);
        c.iter().collect()
    }

    /// Places `order` in sequence, each vertex into `allowed`, lowest index
    /// first, backtracking at most `BACKTRACK_BUDGET` times per call. On
    /// failure the state is restored.
    pub(crate) fn extend(&mut self, order: &[usize], allowed: &BitSet) -> bool {
        self.budget = BACKTRACK_BUDGET;
        let mut stack: Vec<(Vec<usize>, usize)> = Vec::with_capacity(order.len());
        let mut i = 0;
        loop {
            if i == order.len() {
                return true;
            }
            if stack.len() == i {
                let cands = self.candidates(order[i], allowed);
                stack.push((cands, 0));
            }
            let v = order[i];
            if let Some(x) = self.map[v].take() {
                self.used.remove(x);
            }
            let (cands, next) = &mut stack[i];
            if *next < cands.len() {
                let x = cands[*next];
                *next += 1;
                self.map[v] = Some(x);
                self.used.insert(x);
                i += 1;
                continue;
            }
            // exhausted this level
            stack.pop();
            if i == 0 || self.budget == 0 {
                for &u in &order[..i] {
                    if let Some(x) = self.map[u].take() {
                        self.used.remove(x);
                    }
                }
                return false;
            }
            self.budget -= 1;
            i -= 1;
        }
    }

    pub(crate) fn finish(self, pattern: Graph, host: Graph) -> Embedding {
        let map = self
            .map
            .into_iter()
            .map(|x| x.expect("every vertex placed"))
            .collect();
        Embedding { pattern, host, map }
    }
}

/// Embeds `h` into `g` along a degeneracy order of `h`. Each vertex goes to
/// the lowest-index free host vertex adjacent to the images of its earlier
/// neighbors, with bounded backtracking.
///
/// When `δ(G) >= (1-τ)n`, `h` is `q`-degenerate and `|H| <= (1-qτ)n`, the
/// common neighborhood of the at most `q` earlier neighbors always has more
/// than `|H| - 1` vertices, so the search never needs to backtrack.
pub fn greedy_embed_degenerate(h: &Graph, g: &Graph) -> Option<Embedding> {
    if h.order() > g.order() {
        return None;
    }
    let bits = g.adjacency_bits();
    let mut ext = Extender::new(h, &bits, g.order());
    let order = degeneracy_order(h).order;
    if ext.extend(&order, &BitSet::full(g.order())) {
        Some(ext.finish(h.clone(), g.clone()))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind, GraphSpec};

    #[test]
    fn verify_examples() {
        let g = Graph::cycle(5);
        assert!(verify_embedding(&Embedding::new(
            g.clone(),
            g.clone(),
            (0..5).collect()
        )));
        assert!(!verify_embedding(&Embedding::new(
            g.clone(),
            g.clone(),
            vec![0; 5]
        )));
        assert!(!verify_embedding(&Embedding::new(
            Graph::path(3),
            g.clone(),
            vec![0, 2, 1]
        )));
        assert!(!verify_embedding(&Embedding::new(
            Graph::path(2),
            g,
            vec![0, 9]
        )));
    }

    #[test]
    fn greedy_examples() {
        let t = generate(&GraphSpec::new(GraphKind::RandomTree, [9]).with_seed(2)).unwrap();
        let e = greedy_embed_degenerate(&t, &Graph::complete(10)).unwrap();
        assert!(verify_embedding(&e));

        // K10 minus a perfect matching: δ = 8 = (1 - 0.2)·10.
        let host = Graph::from_edges(
            10,
            (0..10)
                .flat_map(|u| (u + 1..10).map(move |v| (u, v)))
                .filter(|&(u, v)| !(u % 2 == 0 && v == u + 1)),
        )
        .unwrap();
        assert_eq!(host.min_degree(), 8);
        let e = greedy_embed_degenerate(&Graph::path(7), &host).unwrap();
        assert!(verify_embedding(&e));

        assert!(greedy_embed_degenerate(&Graph::complete(4), &Graph::cycle(5)).is_none());
        assert!(greedy_embed_degenerate(&Graph::path(6), &Graph::path(5)).is_none());
    }

    #[test]
    fn backtracking_recovers_from_bad_first_choice() {
        // P3 into a star with center 1: the lowest-index first choice fails.
        let host = Graph::from_edges(4, [(1, 0), (1, 2), (1, 3)]).unwrap();
        let e = greedy_embed_degenerate(&Graph::path(3), &host).unwrap();
        assert!(verify_embedding(&e));
    }
}
