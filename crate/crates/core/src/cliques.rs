//! Clique statistics: `k_r(G)`, joint sizes `js_p(G)`, books, and complete
//! multipartite patterns.

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::degeneracy::degeneracy_order;
use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Neighborhoods restricted to higher-indexed vertices.
fn upper_neighborhoods(g: &Graph) -> Vec<BitSet> {
    let n = g.order();
    (0..n)
        .map(|v| BitSet::from_iter(n, g.neighbors(v).iter().copied().filter(|&w| w > v)))
        .collect()
}

/// Number of `k`-cliques inside `cand`, where `fwd` orients every edge once.
fn count_in(cand: &BitSet, k: usize, fwd: &[BitSet]) -> u128 {
    match k {
        0 => 1,
        1 => cand.len() as u128,
        _ => cand
            .iter()
            .map(|v| {
                let mut next = cand.clone();
                next.intersect_with(&fwd[v]);
                if next.len() + 1 < k {
                    0
                } else {
                    count_in(&next, k - 1, fwd)
                }
            })
            .sum(),
    }
}

/// `k_r(G)`, the number of `r`-vertex cliques. `k_0 = 1` by convention.
///
/// Edges are oriented along a degeneracy order, so each root only sees its
/// at most `degeneracy` later neighbors.
pub fn count_cliques(g: &Graph, r: usize) -> u128 {
    let n = g.order();
    match r {
        0 => return 1,
        1 => return n as u128,
        2 => return g.size() as u128,
        _ => {}
    }
    let pos = degeneracy_order(g).positions();
    let fwd: Vec<BitSet> = (0..n)
        .map(|v| {
            BitSet::from_iter(
                n,
                g.neighbors(v).iter().copied().filter(|&w| pos[w] > pos[v]),
            )
        })
        .collect();
    (0..n)
        .into_par_iter()
        .map(|v| count_in(&fwd[v], r - 1, &fwd))
        .sum()
}

/// Calls `f` on every `r`-clique, as an increasing vertex list, in
/// lexicographic order.
pub fn for_each_clique<F: FnMut(&[usize])>(g: &Graph, r: usize, mut f: F) {
    fn rec<F: FnMut(&[usize])>(
        cand: &BitSet,
        k: usize,
        fwd: &[BitSet],
        stack: &mut Vec<usize>,
        f: &mut F,
    ) {
        if k == 0 {
            f(stack);
            return;
        }
        for v in cand.iter() {
            let mut next = cand.clone();
            next.intersect_with(&fwd[v]);
            if next.len() + 1 < k {
                continue;
            }
            stack.push(v);
            rec(&next, k - 1, fwd, stack, f);
            stack.pop();
        }
    }
    let fwd = upper_neighborhoods(g);
    rec(
        &BitSet::full(g.order()),
        r,
        &fwd,
        &mut Vec::with_capacity(r),
        &mut f,
    );
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JointWitness {
    pub p: usize,
    /// `None` when the graph has no `p`-clique.
    pub edge: Option<(usize, usize)>,
    /// Number of `p`-cliques containing `edge`.
    pub size: u128,
}

/// `js_p(G)`: the largest number of `p`-cliques sharing one edge. Ties go
/// to the lexicographically first edge.
pub fn joint_size(g: &Graph, p: usize) -> Result<JointWitness> {
    if p < 3 {
        return Err(Error::params("joint size is defined for p >= 3"));
    }
    let bits = g.adjacency_bits();
    let fwd = upper_neighborhoods(g);
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let sizes: Vec<u128> = edges
        .par_iter()
        .map(|&(u, v)| {
            let mut common = bits[u].clone();
            common.intersect_with(&bits[v]);
            count_in(&common, p - 2, &fwd)
        })
        .collect();
    let mut best = JointWitness {
        p,
        edge: None,
        size: 0,
    };
    for (e, s) in edges.into_iter().zip(sizes) {
        if s > best.size {
            best.edge = Some(e);
            best.size = s;
        }
    }
    Ok(best)
}

/// The `p`-cliques through `edge`, each an increasing vertex list.
pub fn joint_cliques(g: &Graph, p: usize, edge: (usize, usize)) -> Vec<Vec<usize>> {
    let (u, v) = edge;
    if p < 2 || !g.has_edge(u, v) {
        return Vec::new();
    }
    let common = g.common_neighbors(&[u, v]);
    let sub = g.induced_subgraph(&common);
    let mut out = Vec::new();
    for_each_clique(&sub, p - 2, |c| {
        let mut q: Vec<usize> = c.iter().map(|&i| common[i]).chain([u, v]).collect();
        q.sort_unstable();
        out.push(q);
    });
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BookWitness {
    pub p: usize,
    /// The spine; empty when there is no `p`-clique.
    pub base: Vec<usize>,
    /// Vertices adjacent to the whole spine.
    pub pages: Vec<usize>,
    pub size: usize,
}

/// The largest book `B_p(m)` in `G`: maximizes the common neighborhood of a
/// `p`-clique. Ties go to the lexicographically first clique.
pub fn book_size(g: &Graph, p: usize) -> Result<BookWitness> {
    if p == 0 {
        return Err(Error::params("book size needs p >= 1"));
    }
    let bits = g.adjacency_bits();
    let mut best = BookWitness {
        p,
        base: Vec::new(),
        pages: Vec::new(),
        size: 0,
    };
    let mut found = false;
    for_each_clique(g, p, |q| {
        let mut common = bits[q[0]].clone();
        for &x in &q[1..] {
            common.intersect_with(&bits[x]);
        }
        let size = common.len();
        if !found || size > best.size {
            found = true;
            best.base = q.to_vec();
            best.pages = common.iter().collect();
            best.size = size;
        }
    });
    if best.size == 0 {
        best.base.clear();
    }
    Ok(best)
}

/// `ω(G)`.
pub fn clique_number(g: &Graph) -> usize {
    fn expand(cand: BitSet, size: usize, best: &mut usize, bits: &[BitSet]) {
        if cand.is_empty() {
            *best = (*best).max(size);
            return;
        }
        let mut cand = cand;
        while let Some(v) = cand.first() {
            if size + cand.len() <= *best {
                return;
            }
            let mut next = cand.clone();
            next.intersect_with(&bits[v]);
            expand(next, size + 1, best, bits);
            cand.remove(v);
        }
    }
    let bits = g.adjacency_bits();
    let mut best = 0;
    expand(BitSet::full(g.order()), 0, &mut best, &bits);
    best
}

/// Searches for the complete multipartite graph with the given part sizes as
/// a (not necessarily induced) subgraph. Edges inside a part are not
/// required.
///
/// Parts are filled largest first; among parts of equal size the smallest
/// vertex of each part must increase, which removes the symmetric copies.
pub fn find_complete_multipartite(g: &Graph, sizes: &[usize]) -> Option<Embedding> {
    let pattern = crate::graph::generate::complete_multipartite(sizes).ok()?;
    let total: usize = sizes.iter().sum();
    if total > g.order() {
        return None;
    }
    let mut fill: Vec<usize> = (0..sizes.len()).collect();
    fill.sort_by_key(|&i| (std::cmp::Reverse(sizes[i]), i));
    let bits = g.adjacency_bits();

    struct Search<'a> {
        sizes: &'a [usize],
        fill: &'a [usize],
        bits: &'a [BitSet],
        parts: Vec<Vec<usize>>,
    }

    impl Search<'_> {
        // `allowed`: vertices adjacent to everything in earlier parts and unused.
        fn part(&mut self, slot: usize, allowed: &BitSet, min_first: usize) -> bool {
            if slot == self.fill.len() {
                return true;
            }
            let want = self.sizes[self.fill[slot]];
            self.choose(slot, allowed, want, min_first, &mut Vec::new())
        }

        fn choose(
            &mut self,
            slot: usize,
            pool: &BitSet,
            want: usize,
            lo: usize,
            chosen: &mut Vec<usize>,
        ) -> bool {
            if chosen.len() == want {
                let mut next = pool.clone();
                for &v in chosen.iter() {
                    next.intersect_with(&self.bits[v]);
                }
                let same_next =
                    slot + 1 < self.fill.len() && self.sizes[self.fill[slot + 1]] == want;
                let min_first = if same_next {
                    chosen.first().map_or(0, |&f| f + 1)
                } else {
                    0
                };
                self.parts.push(chosen.clone());
                if self.part(slot + 1, &next, min_first) {
                    return true;
                }
                self.parts.pop();
                return false;
            }
            let remaining = want - chosen.len();
            let options: Vec<usize> = pool.iter().filter(|&v| v >= lo).collect();
            if options.len() < remaining {
                return false;
            }
            for (k, &v) in options.iter().enumerate() {
                if options.len() - k < remaining {
                    break;
                }
                chosen.push(v);
                if self.choose(slot, pool, want, v + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
            false
        }
    }

    let mut s = Search {
        sizes,
        fill: &fill,
        bits: &bits,
        parts: Vec::new(),
    };
    if !s.part(0, &BitSet::full(g.order()), 0) {
        return None;
    }
    // pattern numbering: part i occupies a consecutive block, parts in input order
    let mut by_part = vec![Vec::new(); sizes.len()];
    for (slot, chosen) in s.parts.into_iter().enumerate() {
        by_part[fill[slot]] = chosen;
    }
    let map: Vec<usize> = by_part.into_iter().flatten().collect();
    Some(Embedding::new(pattern, g.clone(), map))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinDegreeCliqueCheck {
    /// `k_{r+1}(G)`
    pub lhs: u128,
    /// `α·r²/(r+1)·(n/r)^{r+1}`
    pub rhs: f64,
    pub holds: bool,
}

/// Checks the supersaturation bound
/// `k_{r+1}(G) >= α·r²/(r+1)·(n/r)^{r+1}` for graphs with
/// `2 <= r < ω(G)` and `δ(G) >= ((r-1)/r + α)n`.
pub fn verify_min_degree_clique_bound(
    g: &Graph,
    r: usize,
    alpha: f64,
) -> Result<MinDegreeCliqueCheck> {
    if alpha < 0.0 || !alpha.is_finite() {
        return Err(Error::params(format!(
            "alpha must be a finite nonnegative real, got {alpha}"
        )));
    }
    if r < 2 {
        return Err(Error::precondition(format!("r = {r} is below 2")));
    }
    let omega = clique_number(g);
    if r >= omega {
        return Err(Error::precondition(format!(
            "r = {r} is not below the clique number {omega}"
        )));
    }
    let n = g.order() as f64;
    let need = ((r - 1) as f64 / r as f64 + alpha) * n;
    let delta = g.min_degree() as f64;
    if delta < need - 1e-9 * need.max(1.0) {
        return Err(Error::precondition(format!(
            "minimum degree {delta} is below ((r-1)/r + alpha)·n = {need:.6}"
        )));
    }
    let lhs = count_cliques(g, r + 1);
    let rhs = alpha * (r * r) as f64 / (r + 1) as f64 * (n / r as f64).powi(r as i32 + 1);
    Ok(MinDegreeCliqueCheck {
        lhs,
        rhs,
        holds: lhs as f64 >= rhs,
    })
}
