//! Dependent random choice between two disjoint vertex sets.
//!
//! For a tuple `I` of vertices of `U2`, `W = Γ(I) ∩ U1`. A `k`-subset of
//! `U1` is *bad* when its common neighborhood in `U2` has at most `a|U2|`
//! vertices. Writing `X = |W|` and `Y` for the number of bad sets inside
//! `W`, the statistic `Z = X - d^i/(a^i n^{k-1})·Y - d^i n/2` has
//! nonnegative mean over uniform tuples; any tuple with `Z >= 0` and
//! `(a/d)^i n^k < 1` forces `Y = 0`, so every `k`-subset of `W` is good.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest number of `k`-subsets of `U1` the bad-set table may hold.
pub const BAD_SET_LIMIT: u128 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DrcOptions {
    /// Replaces the smallest `i` with `(a/d)^i n^k < 1`.
    pub i_override: Option<u32>,
    /// Tuple count up to which the search is exhaustive.
    pub budget: u128,
    /// Tuples drawn when the search is not exhaustive.
    pub samples: usize,
    pub seed: u64,
}

impl Default for DrcOptions {
    fn default() -> Self {
        DrcOptions {
            i_override: None,
            budget: 1_000_000,
            samples: 20_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DrcResult {
    /// Ascending host labels.
    pub w: Vec<usize>,
    /// `d^{2k/λ+1}`
    pub a: f64,
    pub i: u32,
    /// True when no integer `i` makes `(a/d)^i n^k < 1` (which happens iff `d = 1`).
    pub i_capped: bool,
    /// The maximizing tuple, nondecreasing host labels from `U2`.
    pub tuple: Vec<usize>,
    pub z: f64,
    /// Bad `k`-sets inside `W`.
    pub bad_sets: u64,
    pub exhaustive: bool,
    /// Every `k`-subset of `W` has more than `a|U2|` common neighbors in `U2`.
    pub guarantee_holds: bool,
    /// `|U1|^{1-λ}`
    pub size_target: f64,
    pub size_target_met: bool,
}

fn binom(n: u128, k: u128) -> u128 {
    let mut acc: u128 = 1;
    for j in 0..k {
        match acc.checked_mul(n - j) {
            Some(v) => acc = v / (j + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// Calls `f` on every `k`-subset of `0..n`, lexicographically.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        f(&c);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn dependent_random_choice(
    g: &Graph,
    u1: &[usize],
    u2: &[usize],
    k: usize,
    d: f64,
    lambda: f64,
    opts: &DrcOptions,
) -> Result<DrcResult> {
    let order = g.order();
    if let Some(&v) = u1.iter().chain(u2).find(|&&v| v >= order) {
        return Err(Error::VertexOutOfRange { vertex: v, order });
    }
    if k == 0 || !(d > 0.0 && d <= 1.0) || !(lambda > 0.0) {
        return Err(Error::params(format!(
            "need k >= 1, 0 < d <= 1, lambda > 0; got k={k}, d={d}, lambda={lambda}"
        )));
    }
    let mut u1s = u1.to_vec();
    u1s.sort_unstable();
    u1s.dedup();
    let mut u2s = u2.to_vec();
    u2s.sort_unstable();
    u2s.dedup();
    if u1s.is_empty() || u2s.is_empty() || u1s.iter().any(|v| u2s.binary_search(v).is_ok()) {
        return Err(Error::precondition(
            "U1 and U2 must be nonempty and disjoint",
        ));
    }
    let (n, m) = (u1s.len(), u2s.len());
    let cross = g.edges_between(&u1s, &u2s);
    if (cross as f64) < d * (n * m) as f64 {
        return Err(Error::precondition(format!(
            "density below d: e(U1,U2) = {cross} < d·|U1||U2| = {:.3}",
            d * (n * m) as f64
        )));
    }

    let a = d.powf(2.0 * k as f64 / lambda + 1.0);
    let ratio = a / d;
    let nk = (n as f64).powi(k as i32);
    let (proof_i, i_capped) = if ratio >= 1.0 {
        (1, true)
    } else {
        let mut i = 1u32;
        while ratio.powi(i as i32) * nk >= 1.0 {
            i += 1;
        }
        (i, false)
    };
    let i = opts.i_override.unwrap_or(proof_i).max(1);

    // Γ restricted to U1 for each u in U2, and to U2 for each x in U1
    let pos1 = |v: usize| u1s.binary_search(&v).ok();
    let pos2 = |v: usize| u2s.binary_search(&v).ok();
    let to_u1: Vec<BitSet> = u2s
        .iter()
        .map(|&u| BitSet::from_iter(n, g.neighbors(u).iter().filter_map(|&w| pos1(w))))
        .collect();
    let to_u2: Vec<BitSet> = u1s
        .iter()
        .map(|&x| BitSet::from_iter(m, g.neighbors(x).iter().filter_map(|&w| pos2(w))))
        .collect();

    if binom(n as u128, k as u128) > BAD_SET_LIMIT {
        return Err(Error::ScaleGuard(format!(
            "C({n},{k}) k-subsets of U1 exceed {BAD_SET_LIMIT}"
        )));
    }
    let threshold = a * m as f64;
    let mut bad: Vec<Vec<usize>> = Vec::new();
    for_each_subset(n, k, |xs| {
        let mut common = to_u2[xs[0]].clone();
        for &x in &xs[1..] {
            common.intersect_with(&to_u2[x]);
        }
        if common.len() as f64 <= threshold {
            bad.push(xs.to_vec());
        }
    });

    let di = d.powi(i as i32);
    let y_weight = di / (a.powi(i as i32) * (n as f64).powi(k as i32 - 1));
    let offset = di * n as f64 / 2.0;
    let score = |tuple: &[usize]| -> (f64, BitSet, u64) {
        let mut w = to_u1[tuple[0]].clone();
        for &u in &tuple[1..] {
            w.intersect_with(&to_u1[u]);
        }
        let y = bad
            .iter()
            .filter(|xs| xs.iter().all(|&x| w.contains(x)))
            .count() as u64;
        (w.len() as f64 - y_weight * y as f64 - offset, w, y)
    };
    // best first by Z, then by lexicographically smallest tuple
    let better =
        |a: &(f64, Vec<usize>), b: &(f64, Vec<usize>)| a.0 > b.0 || (a.0 == b.0 && a.1 < b.1);

    let tuples = binom((m + i as usize - 1) as u128, i as u128);
    let exhaustive = tuples <= opts.budget;
    let best: (f64, Vec<usize>) = if exhaustive {
        (0..m)
            .into_par_iter()
            .filter_map(|first| {
                let mut best: Option<(f64, Vec<usize>)> = None;
                let mut t = vec![first; i as usize];
                loop {
                    let cand = (score(&t).0, t.clone());
                    if best.as_ref().is_none_or(|b| better(&cand, b)) {
                        best = Some(cand);
                    }
                    // next nondecreasing tuple with the same first entry
                    let mut j = t.len();
                    loop {
                        j -= 1;
                        if j == 0 {
                            return best;
                        }
                        if t[j] + 1 < m {
                            let v = t[j] + 1;
                            for x in &mut t[j..] {
                                *x = v;
                            }
                            break;
                        }
                    }
                }
            })
            .reduce_with(|x, y| if better(&y, &x) { y } else { x })
            .expect("U2 is nonempty")
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut best: Option<(f64, Vec<usize>)> = None;
        for _ in 0..opts.samples.max(1) {
            let mut t: Vec<usize> = (0..i).map(|_| rng.gen_range(0..m)).collect();
            t.sort_unstable();
            let cand = (score(&t).0, t);
            if best.as_ref().is_none_or(|b| better(&cand, b)) {
                best = Some(cand);
            }
        }
        best.expect("at least one sample")
    };

    let (z, wbits, y) = score(&best.1);
    let w: Vec<usize> = wbits.iter().map(|x| u1s[x]).collect();
    let size_target = (n as f64).powf(1.0 - lambda);
    Ok(DrcResult {
        guarantee_holds: y == 0,
        size_target_met: w.len() as f64 >= size_target,
        w,
        a,
        i,
        i_capped,
        tuple: best.1.iter().map(|&u| u2s[u]).collect(),
        z,
        bad_sets: y,
        exhaustive,
        size_target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k88_minus_matching() -> Graph {
        Graph::from_edges(
            16,
            (0..8).flat_map(|x| (0..8).filter(move |&y| y != x).map(move |y| (x, 8 + y))),
        )
        .unwrap()
    }

    /// Common neighbors of `xs` inside `u2`, counted edge by edge.
    fn common(g: &Graph, xs: &[usize], u2: &[usize]) -> usize {
        u2.iter()
            .filter(|&&u| xs.iter().all(|&x| g.has_edge(x, u)))
            .count()
    }

    #[test]
    fn complete_bipartite_keeps_everything() {
        let g = Graph::from_edges(10, (0..5).flat_map(|x| (5..10).map(move |y| (x, y)))).unwrap();
        let u1: Vec<usize> = (0..5).collect();
        let u2: Vec<usize> = (5..10).collect();
        let r = dependent_random_choice(&g, &u1, &u2, 2, 1.0, 0.5, &DrcOptions::default()).unwrap();
        assert_eq!(r.w, u1);
        assert!(r.i_capped);
        assert_eq!(r.a, 1.0);
        // with a = 1 no k-set can have more than a|U2| common neighbors
        assert!(!r.guarantee_holds);
    }

    #[test]
    fn k88_exhaustive_matches_oracle() {
        let g = k88_minus_matching();
        let u1: Vec<usize> = (0..8).collect();
        let u2: Vec<usize> = (8..16).collect();
        let r = dependent_random_choice(&g, &u1, &u2, 2, 7.0 / 8.0, 0.5, &DrcOptions::default())
            .unwrap();
        assert_eq!(r.i, 4);
        assert!(r.exhaustive && r.guarantee_holds && r.z >= 0.0);
        let limit = r.a * 8.0;
        for (p, &x) in r.w.iter().enumerate() {
            for &y in &r.w[p + 1..] {
                assert!(common(&g, &[x, y], &u2) as f64 > limit);
            }
        }
        // the largest W over all subsets of U1 with every pair good
        let best = (0u32..256)
            .filter(|mask| {
                let s: Vec<usize> = (0..8).filter(|b| mask >> b & 1 == 1).collect();
                s.iter().enumerate().all(|(p, &x)| {
                    s[p + 1..]
                        .iter()
                        .all(|&y| common(&g, &[x, y], &u2) as f64 > limit)
                })
            })
            .map(u32::count_ones)
            .max()
            .unwrap();
        assert_eq!(best, 8);
        // every Γ(I) loses exactly the partners of I, so the argmax is the
        // constant tuple on the first vertex
        assert_eq!(r.tuple, vec![8; 4]);
        assert_eq!(r.w, (1..8).collect::<Vec<_>>());
    }

    #[test]
    fn density_and_disjointness_checked() {
        let g = Graph::path(6);
        assert!(matches!(
            dependent_random_choice(&g, &[0, 2], &[1, 3], 2, 0.9, 0.5, &DrcOptions::default()),
            Err(Error::Precondition(_))
        ));
        assert!(
            dependent_random_choice(&g, &[0, 1], &[1, 3], 2, 0.1, 0.5, &DrcOptions::default())
                .is_err()
        );
    }

    #[test]
    fn sampling_is_seeded() {
        let g = k88_minus_matching();
        let u1: Vec<usize> = (0..8).collect();
        let u2: Vec<usize> = (8..16).collect();
        let opts = DrcOptions {
            budget: 0,
            samples: 50,
            seed: 9,
            ..DrcOptions::default()
        };
        let a = dependent_random_choice(&g, &u1, &u2, 2, 0.8, 0.5, &opts).unwrap();
        let b = dependent_random_choice(&g, &u1, &u2, 2, 0.8, 0.5, &opts).unwrap();
        assert_eq!(a, b);
        assert!(!a.exhaustive);
    }
}
