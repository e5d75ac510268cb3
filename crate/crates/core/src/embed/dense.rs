use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DenseCore {
    /// `W = {u : d(u) > (1-√τ)n}`, ascending.
    pub vertices: Vec<usize>,
    #[serde(skip)]
    pub subgraph: Graph,
    /// `(1-√τ)n`, which `|W|` exceeds.
    pub order_bound: f64,
    /// `(1-2√τ)n`, which `δ(G[W])` exceeds.
    pub min_degree_bound: f64,
}

/// Extracts the high-degree core of a graph with more than `(1-τ)n²/2`
/// edges. The core has more than `(1-√τ)n` vertices and minimum degree
/// above `(1-2√τ)n`.
pub fn dense_core(g: &Graph, tau: f64) -> Result<DenseCore> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::params(format!("tau must lie in (0, 1), got {tau}")));
    }
    let n = g.order() as f64;
    let need = (1.0 - tau) * n * n / 2.0;
    if (g.size() as f64) <= need {
        return Err(Error::precondition(format!(
            "e(G) = {} does not exceed (1-tau)n²/2 = {need:.3}; short by {:.3} edges",
            g.size(),
            need - g.size() as f64 + 1.0
        )));
    }
    let root = tau.sqrt();
    let threshold = (1.0 - root) * n;
    let vertices: Vec<usize> = (0..g.order())
        .filter(|&u| g.degree(u) as f64 > threshold)
        .collect();
    let subgraph = g.induced_subgraph(&vertices);
    Ok(DenseCore {
        vertices,
        subgraph,
        order_bound: threshold,
        min_degree_bound: (1.0 - 2.0 * root) * n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind, GraphSpec};

    fn holds(c: &DenseCore) -> bool {
        c.vertices.len() as f64 > c.order_bound
            && c.subgraph.min_degree() as f64 > c.min_degree_bound
    }

    #[test]
    fn complete_graph_keeps_everything() {
        // e(K10) = 45 sits exactly on (1-0.1)·100/2, which the strict bound excludes
        assert!(matches!(
            dense_core(&Graph::complete(10), 0.1),
            Err(Error::Precondition(_))
        ));
        let c = dense_core(&Graph::complete(10), 0.11).unwrap();
        assert_eq!(c.vertices, (0..10).collect::<Vec<_>>());
        assert!(holds(&c));
    }

    #[test]
    fn k10_minus_triangle() {
        let g = Graph::from_edges(
            10,
            Graph::complete(10)
                .edges()
                .filter(|&(u, v)| !(u < 3 && v < 3)),
        )
        .unwrap();
        // e = 42 > (1-τ)·50 needs τ > 0.16
        let c = dense_core(&g, 0.2).unwrap();
        assert!(g.degrees().iter().all(|&d| d >= 7));
        assert_eq!(c.vertices.len(), 10);
        assert!(holds(&c));
    }

    #[test]
    fn sparse_graph_rejected() {
        let g = generate(
            &GraphSpec::new(GraphKind::RandomGnp, [20])
                .with_real(0.2)
                .with_seed(1),
        )
        .unwrap();
        assert!(matches!(dense_core(&g, 0.1), Err(Error::Precondition(_))));
        assert!(dense_core(&g, 1.5).is_err());
    }
}
