use std::collections::BTreeSet;

use serde::Serialize;

use crate::degeneracy::degeneracy;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrimResult {
    /// `M ⊇ S0`, ascending. Every vertex outside has at most `2q` neighbors in it.
    pub set: Vec<usize>,
    /// Vertices added to `S0`.
    pub iterations: usize,
    /// `(2q+1)|S0|`
    pub size_bound: usize,
}

/// Closes `s0` under "has at least `2q+1` neighbors in the set", adding the
/// lowest eligible vertex each time.
///
/// Requires `G` to be `q`-degenerate and `ψ(G - S0) <= η|G|`. Because
/// `G[M]` is itself `q`-degenerate, the closure stays below `(2q+1)|S0|`.
pub fn trim(g: &Graph, s0: &[usize], q: usize, eta: f64) -> Result<TrimResult> {
    let n = g.order();
    if let Some(&v) = s0.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            order: n,
        });
    }
    let d = degeneracy(g);
    if d > q {
        return Err(Error::precondition(format!(
            "graph is {d}-degenerate, not {q}-degenerate"
        )));
    }
    let psi = g.largest_component_without(s0);
    if psi as f64 > eta * n as f64 {
        return Err(Error::precondition(format!(
            "largest component of G - S0 has order {psi} > eta·n = {}",
            eta * n as f64
        )));
    }
    let mut in_m = vec![false; n];
    for &v in s0 {
        in_m[v] = true;
    }
    let mut count = vec![0usize; n];
    for v in 0..n {
        if in_m[v] {
            for &w in g.neighbors(v) {
                count[w] += 1;
            }
        }
    }
    let threshold = 2 * q + 1;
    let mut eligible: BTreeSet<usize> = (0..n)
        .filter(|&u| !in_m[u] && count[u] >= threshold)
        .collect();
    let mut iterations = 0;
    while let Some(u) = eligible.pop_first() {
        in_m[u] = true;
        iterations += 1;
        for &w in g.neighbors(u) {
            count[w] += 1;
            if !in_m[w] && count[w] == threshold {
                eligible.insert(w);
            }
        }
    }
    let set: Vec<usize> = (0..n).filter(|&v| in_m[v]).collect();
    let distinct_s0 = s0.iter().collect::<BTreeSet<_>>().len();
    Ok(TrimResult {
        set,
        iterations,
        size_bound: threshold * distinct_s0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind, GraphSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fixpoint_examples() {
        let r = trim(&Graph::path(10), &[4], 1, 1.0).unwrap();
        assert_eq!(r.set, vec![4]);
        assert_eq!(r.iterations, 0);

        let g = generate(&GraphSpec::new(GraphKind::SubdividedComplete, [6])).unwrap();
        let s0: Vec<usize> = (0..6).collect();
        assert_eq!(trim(&g, &s0, 2, 1.0).unwrap().set, s0);
    }

    #[test]
    fn closure_adds_high_degree_vertices() {
        // three leaves of a star pull in the center
        let r = trim(&Graph::star(5), &[1, 2, 3], 1, 1.0).unwrap();
        assert_eq!(r.set, vec![0, 1, 2, 3]);
        assert_eq!(r.iterations, 1);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            trim(&Graph::complete(5), &[0], 2, 1.0),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            trim(&Graph::path(10), &[], 1, 0.5),
            Err(Error::Precondition(_))
        ));
        assert!(trim(&Graph::path(3), &[7], 1, 1.0).is_err());
    }

    #[test]
    fn postconditions_on_random_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for trial in 0..200u64 {
            let n = rng.gen_range(2..300);
            let t = generate(&GraphSpec::new(GraphKind::RandomTree, [n]).with_seed(trial)).unwrap();
            let s0: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.2)).collect();
            let psi0 = t.largest_component_without(&s0);
            let r = trim(&t, &s0, 1, 1.0).unwrap();
            assert!(s0.iter().all(|v| r.set.contains(v)));
            assert!(r.set.len() <= r.size_bound);
            assert!(t.largest_component_without(&r.set) <= psi0);
            let in_m: Vec<bool> = (0..n).map(|v| r.set.binary_search(&v).is_ok()).collect();
            assert!((0..n).filter(|&u| !in_m[u]).all(|u| t
                .neighbors(u)
                .iter()
                .filter(|&&w| in_m[w])
                .count()
                <= 2));
            assert!(r.iterations <= n);
        }
    }
}
