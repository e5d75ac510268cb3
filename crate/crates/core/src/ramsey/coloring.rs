use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{encode_graph6, Graph};

/// A red/blue coloring of `K_n`; blue is everything that is not red.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoColoring {
    pub red: Graph,
}

impl TwoColoring {
    pub fn new(red: Graph) -> Self {
        TwoColoring { red }
    }

    pub fn order(&self) -> usize {
        self.red.order()
    }

    pub fn blue(&self) -> Graph {
        self.red.complement()
    }

    /// The coloring induced on `vertices` (vertex `i` of the result is `vertices[i]`).
    pub fn restrict(&self, vertices: &[usize]) -> TwoColoring {
        TwoColoring::new(self.red.induced_subgraph(vertices))
    }

    /// Swaps the two colors.
    pub fn swapped(&self) -> TwoColoring {
        TwoColoring::new(self.blue())
    }
}

impl Serialize for TwoColoring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Dump {
            n: usize,
            red_g6: String,
            blue_g6: String,
        }
        let g6 = |g: &Graph| String::from_utf8_lossy(&encode_graph6(g)).into_owned();
        Dump {
            n: self.order(),
            red_g6: g6(&self.red),
            blue_g6: g6(&self.blue()),
        }
        .serialize(s)
    }
}

/// The coloring of `K_{(p-1)(n-1)}` whose blue graph is `p-1` disjoint
/// copies of `K_{n-1}` and whose red graph is the complete `(p-1)`-partite
/// graph between them. Red has no `K_p` and every blue component has order
/// `n-1`, so no connected graph of order `n` is blue.
pub fn goodness_lower_coloring(p: usize, n: usize) -> Result<TwoColoring> {
    if p < 2 || n < 2 {
        return Err(Error::params(format!(
            "need p >= 2 and n >= 2, got p={p}, n={n}"
        )));
    }
    let parts = vec![n - 1; p - 1];
    Ok(TwoColoring::new(
        crate::graph::generate::complete_multipartite(&parts)?,
    ))
}

/// Part sizes of `[2n-1]` into five nearly equal blocks, smaller blocks first.
pub fn pentagon_parts(n: usize) -> [usize; 5] {
    let total = 2 * n - 1;
    let (base, extra) = (total / 5, total % 5);
    std::array::from_fn(|i| base + usize::from(i >= 5 - extra))
}

/// Blow-up of `C5` on `2n-1` vertices: consecutive blocks `V_1..V_5` with
/// sizes from [`pentagon_parts`], red between blocks whose indices differ by
/// `±1 mod 5`. Red is triangle-free.
pub fn pentagon_coloring(n: usize) -> Result<TwoColoring> {
    if n < 3 {
        return Err(Error::params(format!(
            "pentagon coloring needs n >= 3, got {n}"
        )));
    }
    let sizes = pentagon_parts(n);
    let mut part = Vec::with_capacity(2 * n - 1);
    for (i, &s) in sizes.iter().enumerate() {
        part.extend(std::iter::repeat_n(i, s));
    }
    let total = part.len();
    let edges = (0..total)
        .flat_map(|u| (u + 1..total).map(move |v| (u, v)))
        .filter(|&(u, v)| matches!((part[v] + 5 - part[u]) % 5, 1 | 4));
    Ok(TwoColoring::new(Graph::from_valid_edges(total, edges)))
}

/// Largest red complete-bipartite edge count available inside a subset with
/// `x[i]` vertices in block `i`: `max_i x_i (x_{i-1} + x_{i+1})`.
pub fn pentagon_hole(x: &[usize; 5]) -> usize {
    (0..5)
        .map(|i| x[i] * (x[(i + 4) % 5] + x[(i + 1) % 5]))
        .max()
        .unwrap()
}

/// Largest `C(2n-1, n)` that [`pentagon_q`] will enumerate.
pub const PENTAGON_SUBSET_LIMIT: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct PentagonQ {
    pub n: usize,
    /// Minimum over `n`-subsets of [`pentagon_hole`]; an upper estimate when sampled.
    pub q: usize,
    /// A subset attaining `q`.
    pub minimizer: Vec<usize>,
    pub subsets_examined: u64,
    pub exhaustive: bool,
    /// `n²/25 - 2n`
    pub bound: f64,
    pub bound_holds: bool,
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, j| acc.saturating_mul(n - j) / (j + 1))
}

fn block_masks(n: usize) -> [u32; 5] {
    let sizes = pentagon_parts(n);
    let mut start = 0;
    std::array::from_fn(|i| {
        let m = ((1u32 << sizes[i]) - 1) << start;
        start += sizes[i];
        m
    })
}

fn report(n: usize, q: usize, mask: u32, examined: u64, exhaustive: bool) -> PentagonQ {
    let bound = (n * n) as f64 / 25.0 - 2.0 * n as f64;
    PentagonQ {
        n,
        q,
        minimizer: (0..2 * n - 1).filter(|&v| mask >> v & 1 == 1).collect(),
        subsets_examined: examined,
        exhaustive,
        bound,
        bound_holds: q as f64 >= bound,
    }
}

/// `q(n)` by enumerating every `n`-subset of `[2n-1]` (Gosper's hack, in
/// increasing mask order; the first minimizer is kept).
pub fn pentagon_q(n: usize) -> Result<PentagonQ> {
    if n < 3 {
        return Err(Error::params(format!("pentagon_q needs n >= 3, got {n}")));
    }
    let total = 2 * n - 1;
    let count = binom(total as u64, n as u64);
    if total > 31 || count > PENTAGON_SUBSET_LIMIT {
        return Err(Error::ScaleGuard(format!(
            "C({total},{n}) = {count} subsets exceeds {PENTAGON_SUBSET_LIMIT}; use the sampled mode"
        )));
    }
    let blocks = block_masks(n);
    let limit = 1u32 << total;
    let mut mask: u32 = (1u32 << n) - 1;
    let mut best = (usize::MAX, 0u32);
    let mut examined = 0u64;
    while mask < limit {
        examined += 1;
        let x = blocks.map(|b| (mask & b).count_ones() as usize);
        let h = pentagon_hole(&x);
        if h < best.0 {
            best = (h, mask);
        }
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    Ok(report(n, best.0, best.1, examined, true))
}

/// Upper estimate of `q(n)` from `samples` uniform random `n`-subsets.
pub fn pentagon_q_sampled(n: usize, samples: u64, seed: u64) -> Result<PentagonQ> {
    if !(3..=16).contains(&n) {
        return Err(Error::params(format!(
            "sampled pentagon_q supports 3 <= n <= 16, got {n}"
        )));
    }
    let total = 2 * n - 1;
    let blocks = block_masks(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = (usize::MAX, 0u32);
    for _ in 0..samples.max(1) {
        let picked = rand::seq::index::sample(&mut rng, total, n);
        let mask = picked.iter().fold(0u32, |m, v| m | 1 << v);
        let h = pentagon_hole(&blocks.map(|b| (mask & b).count_ones() as usize));
        if h < best.0 {
            best = (h, mask);
        }
    }
    Ok(report(n, best.0, best.1, samples.max(1), false))
}
