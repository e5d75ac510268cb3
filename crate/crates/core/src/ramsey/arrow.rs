//! Exhaustive search over red/blue colorings of `K_N`.
//!
//! Edges are colored one at a time in colex order, so every `K_k` on the
//! first `k` vertices is finished before vertex `k` is touched. After each
//! assignment only copies of the pattern that use the new edge need to be
//! looked for. Vertex 0 is normalized: its red neighbors are `1..=j` for
//! some `j`, which every coloring reaches after relabeling `1..N`.

use rayon::prelude::*;
use serde::Serialize;

use super::coloring::{goodness_lower_coloring, pentagon_coloring, TwoColoring};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest host the bitmask search supports.
pub const MAX_ARROW_ORDER: usize = 64;

/// Pattern with one search order per oriented edge: the edge's endpoints
/// first, then breadth-first, then whatever is left.
struct Pattern {
    order: usize,
    adj: Vec<u64>,
    anchored: Vec<Vec<usize>>,
}

impl Pattern {
    fn new(h: &Graph) -> Self {
        let k = h.order();
        let adj: Vec<u64> = (0..k)
            .map(|v| h.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
            .collect();
        let mut anchored = Vec::new();
        for (a, b) in h.edges() {
            for (x, y) in [(a, b), (b, a)] {
                let mut seq = vec![x, y];
                let mut seen = (1u64 << x) | (1u64 << y);
                let mut i = 0;
                while seq.len() < k {
                    if i == seq.len() {
                        let next = (0..k).find(|&v| seen >> v & 1 == 0).unwrap();
                        seq.push(next);
                        seen |= 1 << next;
                    }
                    let mut fresh = adj[seq[i]] & !seen;
                    while fresh != 0 {
                        let w = fresh.trailing_zeros() as usize;
                        fresh &= fresh - 1;
                        seq.push(w);
                        seen |= 1 << w;
                    }
                    i += 1;
                }
                anchored.push(seq);
            }
        }
        Pattern {
            order: k,
            adj,
            anchored,
        }
    }

    /// Whether `host` (bit adjacency on `n` vertices) has a copy of the
    /// pattern using the edge `uv`.
    fn through_edge(&self, host: &[u64], n: usize, u: usize, v: usize) -> bool {
        if self.order > n {
            return false;
        }
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut img = vec![usize::MAX; self.order];
        self.anchored.iter().any(|seq| {
            img[seq[0]] = u;
            img[seq[1]] = v;
            let found = self.extend(seq, 2, &mut img, (1u64 << u) | (1u64 << v), host, all);
            img.iter_mut().for_each(|x| *x = usize::MAX);
            found
        })
    }

    fn extend(
        &self,
        seq: &[usize],
        i: usize,
        img: &mut [usize],
        used: u64,
        host: &[u64],
        all: u64,
    ) -> bool {
        if i == seq.len() {
            return true;
        }
        let w = seq[i];
        let mut cand = all & !used;
        let mut placed = self.adj[w];
        while placed != 0 {
            let x = placed.trailing_zeros() as usize;
            placed &= placed - 1;
            if img[x] != usize::MAX {
                cand &= host[img[x]];
            }
        }
        while cand != 0 {
            let y = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            img[w] = y;
            if self.extend(seq, i + 1, img, used | 1 << y, host, all) {
                return true;
            }
        }
        img[w] = usize::MAX;
        false
    }
}

/// Outcome of [`check_arrowing`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArrowResult {
    pub n: usize,
    /// Every coloring of `K_n` has a red `H1` or a blue `H2`.
    pub arrows: bool,
    /// A coloring with neither, when `arrows` is false.
    pub witness: Option<TwoColoring>,
    /// Partial colorings visited.
    pub nodes: u64,
}

struct Search<'a> {
    n: usize,
    edges: &'a [(usize, usize)],
    h: [&'a Pattern; 2],
    host: [Vec<u64>; 2],
    nodes: u64,
}

impl Search<'_> {
    /// Colors `edges[idx..]`; true when a coloring avoiding both patterns exists.
    fn run(&mut self, idx: usize) -> bool {
        self.nodes += 1;
        let Some(&(u, v)) = self.edges.get(idx) else {
            return true;
        };
        for c in 0..2 {
            self.host[c][u] |= 1 << v;
            self.host[c][v] |= 1 << u;
            if !self.h[c].through_edge(&self.host[c], self.n, u, v) && self.run(idx + 1) {
                return true;
            }
            self.host[c][u] &= !(1 << v);
            self.host[c][v] &= !(1 << u);
        }
        false
    }
}

/// Decides `K_N → (H1, H2)` exhaustively. When the answer is no, the
/// returned witness is the first one met (smallest red degree of vertex 0,
/// then depth-first with red tried before blue).
pub fn check_arrowing(n: usize, h1: &Graph, h2: &Graph) -> Result<ArrowResult> {
    if n > MAX_ARROW_ORDER {
        return Err(Error::ScaleGuard(format!(
            "arrowing search supports N <= {MAX_ARROW_ORDER}, got {n}"
        )));
    }
    if (h1.size() == 0 && h1.order() <= n) || (h2.size() == 0 && h2.order() <= n) {
        // an edgeless pattern sits in every coloring
        return Ok(ArrowResult {
            n,
            arrows: true,
            witness: None,
            nodes: 0,
        });
    }
    let p1 = Pattern::new(h1);
    let p2 = Pattern::new(h2);
    let rest: Vec<(usize, usize)> = (2..n).flat_map(|v| (1..v).map(move |u| (u, v))).collect();
    let reds = if n == 0 { 0..1 } else { 0..n };
    let found = reds.into_par_iter().map(|j| {
        let mut host = [vec![0u64; n], vec![0u64; n]];
        for w in 1..n {
            let c = usize::from(w > j);
            host[c][0] |= 1 << w;
            host[c][w] |= 1;
        }
        let pats = [&p1, &p2];
        let star_hit = (1..n).any(|w| {
            let c = usize::from(w > j);
            pats[c].through_edge(&host[c], n, 0, w)
        });
        let mut s = Search {
            n,
            edges: &rest,
            h: pats,
            host,
            nodes: 0,
        };
        let ok = !star_hit && s.run(0);
        let witness = ok.then(|| {
            let red = &s.host[0];
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| red[u] >> v & 1 == 1);
            TwoColoring::new(Graph::from_valid_edges(n, edges))
        });
        (witness, s.nodes)
    });
    let results: Vec<(Option<TwoColoring>, u64)> = found.collect();
    let nodes = results.iter().map(|r| r.1).sum();
    let witness = results.into_iter().find_map(|r| r.0);
    Ok(ArrowResult {
        n,
        arrows: witness.is_none(),
        witness,
        nodes,
    })
}

/// Plain backtracking subgraph test on adjacency lists, independent of the
/// bitmask search.
pub fn contains_subgraph(host: &Graph, pattern: &Graph) -> bool {
    fn go(
        host: &Graph,
        pattern: &Graph,
        i: usize,
        img: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        if i == pattern.order() {
            return true;
        }
        for x in 0..host.order() {
            if used[x] {
                continue;
            }
            if pattern
                .neighbors(i)
                .iter()
                .filter(|&&w| w < i)
                .all(|&w| host.has_edge(img[w], x))
            {
                used[x] = true;
                img.push(x);
                if go(host, pattern, i + 1, img, used) {
                    return true;
                }
                img.pop();
                used[x] = false;
            }
        }
        false
    }
    pattern.order() <= host.order()
        && go(
            host,
            pattern,
            0,
            &mut Vec::new(),
            &mut vec![false; host.order()],
        )
}

/// Checks that `c` has no red `h1` and no blue `h2`.
pub fn verify_witness(c: &TwoColoring, h1: &Graph, h2: &Graph) -> bool {
    !contains_subgraph(&c.red, h1) && !contains_subgraph(&c.blue(), h2)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RamseyStep {
    pub n: usize,
    pub arrows: bool,
    /// `exhaustive`, or the name of the explicit coloring that refuted `n`.
    pub method: String,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RamseyResult {
    /// `r(H1, H2)`, or `None` when it exceeds `max_n`.
    pub r: Option<usize>,
    /// A verified coloring of `K_{r-1}` avoiding both patterns.
    pub lower_witness: Option<TwoColoring>,
    pub steps: Vec<RamseyStep>,
}

/// Explicit colorings of `K_n` tried before exhaustive search, each as the
/// induced coloring on its first `n` vertices, in both color orientations.
fn candidate_witnesses(n: usize, h1: &Graph, h2: &Graph) -> Vec<(String, TwoColoring)> {
    let mut out = Vec::new();
    let prefix: Vec<usize> = (0..n).collect();
    for p in 2..=h1.order().max(h2.order()).max(2) {
        for m in [h1.order(), h2.order()] {
            if let Ok(c) = goodness_lower_coloring(p, m.max(2)) {
                if c.order() >= n {
                    out.push((format!("goodness({p},{m})"), c.restrict(&prefix)));
                }
            }
        }
    }
    for m in 3..=n.div_ceil(2) + 1 {
        if let Ok(c) = pentagon_coloring(m) {
            if c.order() >= n {
                out.push((format!("pentagon({m})"), c.restrict(&prefix)));
            }
        }
    }
    let swapped: Vec<(String, TwoColoring)> = out
        .iter()
        .map(|(s, c)| (format!("{s}-swapped"), c.swapped()))
        .collect();
    out.extend(swapped);
    out
}

/// Smallest `N <= max_n` with `K_N → (H1, H2)`.
pub fn ramsey_number(h1: &Graph, h2: &Graph, max_n: usize) -> Result<RamseyResult> {
    let mut steps = Vec::new();
    let mut last_witness = None;
    for n in 1..=max_n {
        let known = candidate_witnesses(n, h1, h2)
            .into_iter()
            .find(|(_, c)| verify_witness(c, h1, h2));
        if let Some((name, c)) = known {
            steps.push(RamseyStep {
                n,
                arrows: false,
                method: name,
                nodes: 0,
            });
            last_witness = Some(c);
            continue;
        }
        let res = check_arrowing(n, h1, h2)?;
        steps.push(RamseyStep {
            n,
            arrows: res.arrows,
            method: "exhaustive".into(),
            nodes: res.nodes,
        });
        if res.arrows {
            return Ok(RamseyResult {
                r: Some(n),
                lower_witness: last_witness,
                steps,
            });
        }
        last_witness = res.witness;
    }
    Ok(RamseyResult {
        r: None,
        lower_witness: last_witness,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind, GraphSpec};

    fn k3() -> Graph {
        Graph::complete(3)
    }

    #[test]
    fn r33() {
        let r5 = check_arrowing(5, &k3(), &k3()).unwrap();
        assert!(!r5.arrows);
        let w = r5.witness.unwrap();
        assert!(verify_witness(&w, &k3(), &k3()));
        // the only triangle-free coloring of K5 with triangle-free complement is C5/C5
        assert_eq!(w.red.regular_degree(), Some(2));
        assert!(w.red.is_connected());
        assert!(check_arrowing(6, &k3(), &k3()).unwrap().arrows);
    }

    #[test]
    fn trivial_cases() {
        let k2 = Graph::complete(2);
        assert!(check_arrowing(3, &k2, &k2).unwrap().arrows);
        assert!(!check_arrowing(1, &k2, &k2).unwrap().arrows);
        assert!(check_arrowing(3, &Graph::empty(3), &k3()).unwrap().arrows);
        assert!(!check_arrowing(2, &Graph::empty(3), &k3()).unwrap().arrows);
        assert!(matches!(
            check_arrowing(65, &k2, &k2),
            Err(Error::ScaleGuard(_))
        ));
    }

    #[test]
    fn small_ramsey_numbers() {
        let r = ramsey_number(&k3(), &Graph::path(4), 10).unwrap();
        assert_eq!(r.r, Some(7));
        assert!(verify_witness(
            r.lower_witness.as_ref().unwrap(),
            &k3(),
            &Graph::path(4)
        ));
        assert_eq!(r.lower_witness.unwrap().order(), 6);
        assert_eq!(
            ramsey_number(&k3(), &Graph::star(3), 10).unwrap().r,
            Some(7)
        );
        assert_eq!(ramsey_number(&k3(), &k3(), 10).unwrap().r, Some(6));
        // r(K2, H) = |H| and r(K3, C4) = 7
        assert_eq!(
            ramsey_number(&Graph::complete(2), &Graph::cycle(5), 8)
                .unwrap()
                .r,
            Some(5)
        );
        assert_eq!(
            ramsey_number(&k3(), &Graph::cycle(4), 8).unwrap().r,
            Some(7)
        );
        assert_eq!(ramsey_number(&k3(), &k3(), 5).unwrap().r, None);
    }

    #[test]
    fn anchored_search_agrees_with_plain_search() {
        for seed in 0..40 {
            let host = generate(
                &GraphSpec::new(GraphKind::RandomGnp, [9])
                    .with_real(0.5)
                    .with_seed(seed),
            )
            .unwrap();
            let bits: Vec<u64> = (0..9)
                .map(|v| host.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
                .collect();
            for pat in [
                k3(),
                Graph::path(4),
                Graph::star(3),
                Graph::cycle(4),
                Graph::complete(4),
            ] {
                let p = Pattern::new(&pat);
                let anchored = host.edges().any(|(u, v)| p.through_edge(&bits, 9, u, v));
                assert_eq!(anchored, contains_subgraph(&host, &pat), "seed {seed}");
            }
        }
    }
}
