//! Named graph families.
//!
//! Vertex layouts are fixed so results are reproducible:
//!
//! | kind | params | layout |
//! |------|--------|--------|
//! | `path` | `[n]` | `0-1-…-(n-1)` |
//! | `cycle` | `[n]` | `i ~ i+1 mod n` |
//! | `complete` | `[n]` | all pairs |
//! | `complete_multipartite` | part sizes | parts occupy consecutive blocks |
//! | `book` | `[q, m]` | spine `0..q`, pages `q..q+m` |
//! | `wheel` | `[n]` | hub `0`, rim `1..=n` in cyclic order |
//! | `star` | `[leaves]` | center `0` |
//! | `subdivided_complete` | `[n]` | branch vertices `0..n`, then one vertex per pair `(i,j)`, `i<j`, lexicographically |
//! | `grid` | `[n, k]` | iterated Cartesian product of `P_n`; coordinate 1 is most significant |
//! | `random_tree` | `[n]` | uniform labeled tree from a Prüfer sequence |
//! | `random_regular` | `[n, d]` | pairing model with restarts |
//! | `random_gnp` | `[n]`, `real = p` | independent edges |

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{cartesian_product, join, Graph};
use crate::bitset::BitSet;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    Path,
    Cycle,
    Complete,
    CompleteMultipartite,
    Book,
    Wheel,
    Star,
    SubdividedComplete,
    Grid,
    RandomTree,
    RandomRegular,
    RandomGnp,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub kind: GraphKind,
    pub params: Vec<usize>,
    #[serde(default)]
    pub real: Option<f64>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl GraphSpec {
    pub fn new(kind: GraphKind, params: impl Into<Vec<usize>>) -> Self {
        GraphSpec {
            kind,
            params: params.into(),
            real: None,
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_real(mut self, real: f64) -> Self {
        self.real = Some(real);
        self
    }

    fn arity(&self, want: usize) -> Result<&[usize]> {
        if self.params.len() != want {
            return Err(Error::params(format!(
                "{:?} takes {want} integer parameter(s), got {}",
                self.kind,
                self.params.len()
            )));
        }
        Ok(&self.params)
    }
}

/// Restart cap for the pairing model.
pub const PAIRING_RESTARTS: usize = 10_000;

pub fn generate(spec: &GraphSpec) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed.unwrap_or(0));
    use GraphKind::*;
    match spec.kind {
        Path => Ok(Graph::path(spec.arity(1)?[0])),
        Cycle => {
            let n = spec.arity(1)?[0];
            if n < 3 {
                return Err(Error::params("cycle requires n >= 3"));
            }
            Ok(Graph::cycle(n))
        }
        Complete => Ok(Graph::complete(spec.arity(1)?[0])),
        CompleteMultipartite => complete_multipartite(&spec.params),
        Book => {
            let p = spec.arity(2)?;
            if p[0] == 0 {
                return Err(Error::params("book requires q >= 1"));
            }
            Ok(book(p[0], p[1]))
        }
        Wheel => {
            let n = spec.arity(1)?[0];
            if n < 3 {
                return Err(Error::params("wheel requires a rim of at least 3 vertices"));
            }
            Ok(join(&Graph::empty(1), &Graph::cycle(n)))
        }
        Star => Ok(Graph::star(spec.arity(1)?[0])),
        SubdividedComplete => Ok(subdivided_complete(spec.arity(1)?[0])),
        Grid => {
            let p = spec.arity(2)?;
            if p[0] == 0 || p[1] == 0 {
                return Err(Error::params("grid requires n >= 1 and k >= 1"));
            }
            Ok(grid(p[0], p[1]))
        }
        RandomTree => {
            let n = spec.arity(1)?[0];
            if n == 0 {
                return Err(Error::params("random tree requires n >= 1"));
            }
            Ok(random_tree(n, &mut rng))
        }
        RandomRegular => {
            let p = spec.arity(2)?;
            random_regular(p[0], p[1], &mut rng)
        }
        RandomGnp => {
            let n = spec.arity(1)?[0];
            let p = spec
                .real
                .ok_or_else(|| Error::params("random_gnp requires an edge probability"))?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::params(format!(
                    "edge probability {p} outside [0, 1]"
                )));
            }
            Ok(random_gnp(n, p, &mut rng))
        }
    }
}

pub(crate) fn complete_multipartite(sizes: &[usize]) -> Result<Graph> {
    if sizes.is_empty() {
        return Err(Error::params(
            "complete multipartite graph needs at least one part",
        ));
    }
    let mut part = Vec::new();
    for (i, &s) in sizes.iter().enumerate() {
        part.extend(std::iter::repeat_n(i, s));
    }
    let n = part.len();
    let part = &part;
    Ok(Graph::from_valid_edges(
        n,
        (0..n).flat_map(|u| {
            (u + 1..n)
                .filter(move |&v| part[u] != part[v])
                .map(move |v| (u, v))
        }),
    ))
}

/// `B_q(m) = K_q + mK_1`.
pub(crate) fn book(q: usize, m: usize) -> Graph {
    join(&Graph::complete(q), &Graph::empty(m))
}

pub(crate) fn subdivided_complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    let mut next = n;
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, next));
            edges.push((j, next));
            next += 1;
        }
    }
    Graph::from_valid_edges(next, edges)
}

pub(crate) fn grid(n: usize, k: usize) -> Graph {
    let p = Graph::path(n);
    let mut g = p.clone();
    for _ in 1..k {
        g = cartesian_product(&g, &p);
    }
    g
}

/// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_valid_edges(10, edges)
}

pub(crate) fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    if n <= 2 {
        return Graph::path(n);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    // linear-time Prüfer decoding
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = (0..n).find(|&v| degree[v] == 1).unwrap();
    let mut leaf = ptr;
    for &v in &seq {
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 && v < ptr {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Graph::from_valid_edges(n, edges)
}

pub(crate) fn random_gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_valid_edges(n, edges)
}

/// Random `d`-regular graph on `n` vertices.
///
/// Points (`d` per vertex) are paired one pair at a time, uniformly among
/// pairs that keep the graph simple; when no such pair remains the attempt is
/// discarded and the pairing restarts, up to [`PAIRING_RESTARTS`] times.
pub(crate) fn random_regular<R: Rng>(n: usize, d: usize, rng: &mut R) -> Result<Graph> {
    if (n * d) % 2 == 1 {
        return Err(Error::Infeasible(format!("n·d = {n}·{d} is odd")));
    }
    if d > 0 && d >= n {
        return Err(Error::Infeasible(format!(
            "degree {d} needs more than {n} vertices"
        )));
    }
    'attempt: for _ in 0..PAIRING_RESTARTS {
        let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        points.shuffle(rng);
        let mut adj: Vec<BitSet> = vec![BitSet::new(n); n];
        let mut edges = Vec::with_capacity(n * d / 2);
        while !points.is_empty() {
            let len = points.len();
            let mut chosen = None;
            for _ in 0..64 {
                let i = rng.gen_range(0..len);
                let j = rng.gen_range(0..len);
                let (u, v) = (points[i], points[j]);
                if i != j && u != v && !adj[u].contains(v) {
                    chosen = Some((i, j));
                    break;
                }
            }
            if chosen.is_none() {
                let suitable: Vec<(usize, usize)> = (0..len)
                    .flat_map(|i| (i + 1..len).map(move |j| (i, j)))
                    .filter(|&(i, j)| points[i] != points[j] && !adj[points[i]].contains(points[j]))
                    .collect();
                if suitable.is_empty() {
                    continue 'attempt;
                }
                chosen = Some(suitable[rng.gen_range(0..suitable.len())]);
            }
            let (i, j) = chosen.unwrap();
            let (u, v) = (points[i], points[j]);
            adj[u].insert(v);
            adj[v].insert(u);
            edges.push((u, v));
            let (hi, lo) = if i > j { (i, j) } else { (j, i) };
            points.swap_remove(hi);
            points.swap_remove(lo);
        }
        return Ok(Graph::from_valid_edges(n, edges));
    }
    Err(Error::Infeasible(format!(
        "no simple {d}-regular pairing on {n} vertices after {PAIRING_RESTARTS} restarts"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: GraphKind, p: &[usize]) -> GraphSpec {
        GraphSpec::new(kind, p)
    }

    #[test]
    fn named_families() {
        let b = generate(&spec(GraphKind::Book, &[2, 3])).unwrap();
        assert_eq!((b.order(), b.size()), (5, 7));
        let w = generate(&spec(GraphKind::Wheel, &[5])).unwrap();
        assert_eq!((w.order(), w.size()), (6, 10));
        let s = generate(&spec(GraphKind::SubdividedComplete, &[4])).unwrap();
        assert_eq!(s.order(), 10);
        assert!((4..10).all(|v| s.degree(v) == 2));
        let g = generate(&spec(GraphKind::Grid, &[3, 2])).unwrap();
        assert_eq!((g.order(), g.size()), (9, 12));
        let k = generate(&spec(GraphKind::CompleteMultipartite, &[2, 2, 2])).unwrap();
        assert_eq!(k.regular_degree(), Some(4));
        assert_eq!(petersen().regular_degree(), Some(3));
    }

    #[test]
    fn invalid_params() {
        assert!(generate(&spec(GraphKind::Book, &[0, 3])).is_err());
        assert!(generate(&spec(GraphKind::Grid, &[0, 2])).is_err());
        assert!(generate(&spec(GraphKind::Path, &[1, 2])).is_err());
        assert!(matches!(
            generate(&spec(GraphKind::RandomRegular, &[7, 3])),
            Err(Error::Infeasible(_))
        ));
        assert!(generate(&spec(GraphKind::RandomGnp, &[5])).is_err());
    }

    #[test]
    fn random_trees_are_trees() {
        for seed in 0..50 {
            for n in [1, 2, 3, 10, 57] {
                let t = generate(&spec(GraphKind::RandomTree, &[n]).with_seed(seed)).unwrap();
                assert!(t.is_tree(), "seed {seed} n {n}");
            }
        }
    }

    #[test]
    fn random_regular_is_regular_and_deterministic() {
        for (n, d) in [(10, 3), (12, 4), (30, 5), (200, 20), (8, 7), (6, 0)] {
            let s = spec(GraphKind::RandomRegular, &[n, d]).with_seed(9);
            let g = generate(&s).unwrap();
            assert_eq!(g.regular_degree(), Some(d));
            assert_eq!(g, generate(&s).unwrap());
        }
    }

    #[test]
    fn gnp_respects_seed() {
        let s = spec(GraphKind::RandomGnp, &[20])
            .with_real(0.5)
            .with_seed(3);
        assert_eq!(generate(&s).unwrap(), generate(&s).unwrap());
    }
}
