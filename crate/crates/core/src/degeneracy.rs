//! Degeneracy orderings and the elementary facts about `q`-degenerate graphs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// An ordering `v_1, …, v_n` in which every vertex has few earlier neighbors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegeneracyOrder {
    pub order: Vec<usize>,
    /// `back_degrees[i] = |Γ(v_i) ∩ {v_1, …, v_{i-1}}|`.
    pub back_degrees: Vec<usize>,
    pub degeneracy: usize,
}

impl DegeneracyOrder {
    /// `position[v]` is the index of `v` in `order`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

/// Repeatedly deletes a minimum-degree vertex (lowest index on ties) and
/// returns the deletion sequence reversed, so each vertex sees at most
/// `degeneracy` neighbors before it.
pub fn degeneracy_order(g: &Graph) -> DegeneracyOrder {
    let n = g.order();
    let mut deg = g.degrees();
    let max_deg = g.max_degree();
    // bucket queue; each bucket is an ordered set so ties go to the lowest index
    let mut buckets: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); max_deg + 1];
    for v in 0..n {
        buckets[deg[v]].insert(v);
    }
    let mut removed = vec![false; n];
    let mut peel = Vec::with_capacity(n);
    let mut lo = 0;
    for _ in 0..n {
        while buckets[lo].is_empty() {
            lo += 1;
        }
        let v = buckets[lo].pop_first().unwrap();
        removed[v] = true;
        peel.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                buckets[deg[w]].remove(&w);
                deg[w] -= 1;
                buckets[deg[w]].insert(w);
            }
        }
        lo = lo.saturating_sub(1);
    }
    peel.reverse();
    let mut pos = vec![0; n];
    for (i, &v) in peel.iter().enumerate() {
        pos[v] = i;
    }
    let back_degrees: Vec<usize> = peel
        .iter()
        .enumerate()
        .map(|(i, &v)| g.neighbors(v).iter().filter(|&&w| pos[w] < i).count())
        .collect();
    DegeneracyOrder {
        degeneracy: back_degrees.iter().copied().max().unwrap_or(0),
        order: peel,
        back_degrees,
    }
}

pub fn degeneracy(g: &Graph) -> usize {
    degeneracy_order(g).degeneracy
}

pub fn is_q_degenerate(g: &Graph, q: usize) -> bool {
    degeneracy(g) <= q
}

/// Greedy coloring along the degeneracy order; uses at most
/// `degeneracy + 1` colors.
pub fn degeneracy_coloring(g: &Graph) -> Vec<usize> {
    let ord = degeneracy_order(g);
    let mut color = vec![usize::MAX; g.order()];
    let mut taken = Vec::new();
    for &v in &ord.order {
        taken.clear();
        taken.extend(
            g.neighbors(v)
                .iter()
                .map(|&w| color[w])
                .filter(|&c| c != usize::MAX),
        );
        taken.sort_unstable();
        let mut c = 0;
        for &t in &taken {
            if t == c {
                c += 1;
            } else if t > c {
                break;
            }
        }
        color[v] = c;
    }
    color
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HighDegreeCheck {
    /// Vertices of degree at least `2q + 1`.
    pub count: usize,
    /// `2q·n / (2q + 1)`.
    pub bound: f64,
    pub holds: bool,
}

/// Counts high-degree vertices in a `q`-degenerate graph against the bound
/// `2q|H|/(2q+1)`.
pub fn high_degree_bound_check(g: &Graph, q: usize) -> Result<HighDegreeCheck> {
    let d = degeneracy(g);
    if d > q {
        return Err(Error::precondition(format!(
            "graph is {d}-degenerate, not {q}-degenerate"
        )));
    }
    let count = g.degrees().iter().filter(|&&x| x > 2 * q).count();
    let bound = (2 * q * g.order()) as f64 / (2 * q + 1) as f64;
    // count·(2q+1) <= 2q·n, compared in integers
    let holds = count * (2 * q + 1) <= 2 * q * g.order();
    Ok(HighDegreeCheck {
        count,
        bound,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{blowup, generate, GraphKind, GraphSpec};
    use rand::{Rng, SeedableRng};

    /// Max over all vertex subsets of the induced minimum degree.
    fn brute_degeneracy(g: &Graph) -> usize {
        let n = g.order();
        let mut best = 0;
        for mask in 1u32..(1 << n) {
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            best = best.max(g.induced_subgraph(&vs).min_degree());
        }
        best
    }

    fn random_graph(rng: &mut impl Rng, max_n: usize) -> Graph {
        let n = rng.gen_range(1..=max_n);
        let p = rng.gen::<f64>();
        generate(
            &GraphSpec::new(GraphKind::RandomGnp, [n])
                .with_real(p)
                .with_seed(rng.gen()),
        )
        .unwrap()
    }

    #[test]
    fn examples() {
        let tree = generate(&GraphSpec::new(GraphKind::RandomTree, [40]).with_seed(5)).unwrap();
        assert_eq!(degeneracy(&tree), 1);
        let sk = generate(&GraphSpec::new(GraphKind::SubdividedComplete, [6])).unwrap();
        assert_eq!(degeneracy(&sk), 2);
        assert_eq!(degeneracy(&Graph::complete(5)), 4);
        assert!(is_q_degenerate(&Graph::cycle(6), 2));
        assert!(!is_q_degenerate(&Graph::cycle(6), 1));
        assert_eq!(degeneracy(&Graph::empty(3)), 0);
        assert_eq!(degeneracy(&Graph::empty(0)), 0);
    }

    #[test]
    fn blown_up_trees() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let n = rng.gen_range(2..9);
            let t =
                generate(&GraphSpec::new(GraphKind::RandomTree, [n]).with_seed(rng.gen())).unwrap();
            let cap = rng.gen_range(1..4);
            let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=cap)).collect();
            let b = blowup(&t, &sizes).unwrap().graph;
            assert!(is_q_degenerate(&b, 2 * cap - 1));
            if b.order() <= 16 {
                assert!(brute_degeneracy(&b) <= 2 * cap - 1);
            }
        }
    }

    #[test]
    fn peeling_matches_subset_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let g = random_graph(&mut rng, 10);
            let ord = degeneracy_order(&g);
            assert_eq!(ord.degeneracy, brute_degeneracy(&g), "{g:?}");
            let pos = ord.positions();
            for (i, &v) in ord.order.iter().enumerate() {
                let back = g.neighbors(v).iter().filter(|&&w| pos[w] < i).count();
                assert_eq!(back, ord.back_degrees[i]);
            }
            // every prefix-induced subgraph has a vertex of degree <= degeneracy
            for k in 1..=g.order() {
                assert!(g.induced_subgraph(&ord.order[..k]).min_degree() <= ord.degeneracy);
            }
        }
    }

    #[test]
    fn subgraphs_are_no_more_degenerate() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let g = random_graph(&mut rng, 25);
            let vs: Vec<usize> = (0..g.order()).filter(|_| rng.gen_bool(0.5)).collect();
            assert!(degeneracy(&g.induced_subgraph(&vs)) <= degeneracy(&g));
        }
    }

    #[test]
    fn coloring_is_proper() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut graphs: Vec<Graph> = (0..100).map(|_| random_graph(&mut rng, 30)).collect();
        graphs.push(Graph::path(5));
        graphs.push(Graph::cycle(5));
        graphs.push(generate(&GraphSpec::new(GraphKind::SubdividedComplete, [5])).unwrap());
        for g in &graphs {
            let c = degeneracy_coloring(g);
            assert!(g.edges().all(|(u, v)| c[u] != c[v]));
            let used = c.iter().copied().max().map_or(0, |m| m + 1);
            assert!(used <= degeneracy(g) + 1);
        }
        let colors = |g: &Graph| degeneracy_coloring(g).into_iter().max().unwrap() + 1;
        assert_eq!(colors(&Graph::path(5)), 2);
        assert!(colors(&Graph::cycle(5)) <= 3);
        assert!(colors(&graphs[102]) <= 3);
    }

    #[test]
    fn high_degree_examples() {
        let star = high_degree_bound_check(&Graph::star(9), 1).unwrap();
        assert_eq!(star.count, 1);
        assert!((star.bound - 20.0 / 3.0).abs() < 1e-12);
        assert!(star.holds);
        let p = high_degree_bound_check(&Graph::path(10), 1).unwrap();
        assert_eq!((p.count, p.holds), (0, true));
        assert!(matches!(
            high_degree_bound_check(&Graph::cycle(4), 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn high_degree_on_random_trees() {
        for seed in 0..500 {
            let n = 2 + (seed as usize % 300);
            let t = generate(&GraphSpec::new(GraphKind::RandomTree, [n]).with_seed(seed)).unwrap();
            let r = high_degree_bound_check(&t, 1).unwrap();
            let scan = t.degrees().iter().filter(|&&d| d >= 3).count();
            assert_eq!(r.count, scan);
            assert!(r.holds);
        }
    }
}
