//! Spectral tools for regular graphs: the second singular value, the
//! expander mixing inequality, bipartite holes, and the test that rules out
//! 3-goodness when σ₂ is small.
//!
//! If a `d`-regular `G` on `n` vertices sat inside the blue graph of the
//! pentagon coloring of `K_{2n-1}`, its image would contain disjoint `X, Y`
//! with no `G`-edges between them and `|X||Y| >= q(n)`. The mixing
//! inequality then forces `(d/n)|X||Y| <= σ₂ √(|X||Y|)`.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Orders up to which `σ₂` comes from a dense eigendecomposition.
pub const DENSE_EIGEN_LIMIT: usize = 500;
const LANCZOS_TOL: f64 = 1e-10;

/// Second-largest singular value of the adjacency matrix, that is, the
/// second-largest eigenvalue in absolute value (with multiplicity).
pub fn second_singular_value(g: &Graph) -> f64 {
    if g.order() <= DENSE_EIGEN_LIMIT {
        dense_sigma2(g)
    } else {
        lanczos_sigma2(g)
    }
}

pub(crate) fn dense_sigma2(g: &Graph) -> f64 {
    let n = g.order();
    if n < 2 {
        return 0.0;
    }
    let mut a = DMatrix::<f64>::zeros(n, n);
    for (u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(a)
        .eigenvalues
        .iter()
        .map(|x| x.abs())
        .collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    ev[1]
}

fn matvec(g: &Graph, x: &[f64], y: &mut [f64]) {
    for (v, out) in y.iter_mut().enumerate() {
        *out = g.neighbors(v).iter().map(|&w| x[w]).sum();
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn orthogonalize(x: &mut [f64], basis: &[Vec<f64>]) {
    // twice, for numerical safety
    for _ in 0..2 {
        for q in basis {
            let c = dot(x, q);
            x.iter_mut().zip(q).for_each(|(a, b)| *a -= c * b);
        }
    }
}

/// Largest-magnitude eigenpair of the adjacency matrix restricted to the
/// orthogonal complement of `deflate` (orthonormal vectors), by Lanczos
/// with full reorthogonalization.
fn lanczos_extreme(g: &Graph, deflate: &[Vec<f64>], seed: u64) -> (f64, Vec<f64>) {
    let n = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
    orthogonalize(&mut q, deflate);
    let norm = dot(&q, &q).sqrt();
    q.iter_mut().for_each(|x| *x /= norm);

    let mut basis: Vec<Vec<f64>> = vec![q];
    let (mut alpha, mut beta): (Vec<f64>, Vec<f64>) = (Vec::new(), Vec::new());
    let mut w = vec![0.0; n];
    let scale = g.max_degree().max(1) as f64;
    loop {
        let j = basis.len() - 1;
        matvec(g, &basis[j], &mut w);
        let a = dot(&w, &basis[j]);
        alpha.push(a);
        orthogonalize(&mut w, deflate);
        orthogonalize(&mut w, &basis);
        let b = dot(&w, &w).sqrt();

        let m = alpha.len();
        let check = m % 10 == 0 || b <= 1e-12 * scale || m + deflate.len() >= n;
        if check {
            let mut t = DMatrix::<f64>::zeros(m, m);
            for i in 0..m {
                t[(i, i)] = alpha[i];
                if i + 1 < m {
                    t[(i, i + 1)] = beta[i];
                    t[(i + 1, i)] = beta[i];
                }
            }
            let eig = SymmetricEigen::new(t);
            let k = (0..m)
                .max_by(|&x, &y| {
                    eig.eigenvalues[x]
                        .abs()
                        .total_cmp(&eig.eigenvalues[y].abs())
                })
                .unwrap();
            let theta = eig.eigenvalues[k];
            let residual = (b * eig.eigenvectors[(m - 1, k)]).abs();
            if residual <= LANCZOS_TOL * scale || b <= 1e-12 * scale || m + deflate.len() >= n {
                let mut v = vec![0.0; n];
                for (i, qi) in basis.iter().enumerate() {
                    let c = eig.eigenvectors[(i, k)];
                    v.iter_mut().zip(qi).for_each(|(a, b)| *a += c * b);
                }
                let nv = dot(&v, &v).sqrt();
                v.iter_mut().for_each(|x| *x /= nv);
                return (theta, v);
            }
        }
        beta.push(b);
        basis.push(w.iter().map(|x| x / b).collect());
    }
}

/// `σ₂` for large graphs: the top eigenvector is found first and deflated,
/// then the largest magnitude on its complement is `σ₂`.
pub(crate) fn lanczos_sigma2(g: &Graph) -> f64 {
    if g.order() < 2 {
        return 0.0;
    }
    let (_, v1) = lanczos_extreme(g, &[], 0x5eed);
    let (theta, _) = lanczos_extreme(g, &[v1], 0x5eed + 1);
    theta.abs()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MixingMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

/// Orders up to which the mixing check may enumerate all `3^n` assignments.
pub const MIXING_EXHAUSTIVE_LIMIT: usize = 14;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixingReport {
    pub d: usize,
    pub sigma2: f64,
    /// Largest `|e(X,Y) - (d/n)|X||Y|| - σ₂√(|X||Y|)` seen; the lemma says
    /// this is never positive.
    pub max_violation: f64,
    pub worst: (Vec<usize>, Vec<usize>),
    pub pairs_tested: u64,
    pub exhaustive: bool,
}

/// Tests the mixing inequality over disjoint nonempty pairs `(X, Y)`.
pub fn expander_mixing_check(g: &Graph, mode: MixingMode) -> Result<MixingReport> {
    let n = g.order();
    let d = g
        .regular_degree()
        .ok_or_else(|| Error::precondition("expander mixing check needs a regular graph"))?;
    let sigma2 = second_singular_value(g);
    let ratio = if n == 0 { 0.0 } else { d as f64 / n as f64 };
    let mut rep = MixingReport {
        d,
        sigma2,
        max_violation: f64::NEG_INFINITY,
        worst: (Vec::new(), Vec::new()),
        pairs_tested: 0,
        exhaustive: matches!(mode, MixingMode::Exhaustive),
    };
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let consider = |x: u64, y: u64, rep: &mut MixingReport| {
        if x == 0 || y == 0 {
            return;
        }
        rep.pairs_tested += 1;
        let e: u32 = (0..n)
            .filter(|&v| x >> v & 1 == 1)
            .map(|v| (adj[v] & y).count_ones())
            .sum();
        let prod = (x.count_ones() * y.count_ones()) as f64;
        let viol = (e as f64 - ratio * prod).abs() - sigma2 * prod.sqrt();
        if viol > rep.max_violation {
            rep.max_violation = viol;
            let bits = |m: u64| (0..n).filter(|&v| m >> v & 1 == 1).collect();
            rep.worst = (bits(x), bits(y));
        }
    };
    match mode {
        MixingMode::Exhaustive => {
            if n > MIXING_EXHAUSTIVE_LIMIT {
                return Err(Error::ScaleGuard(format!(
                    "exhaustive mixing check needs n <= {MIXING_EXHAUSTIVE_LIMIT}, got {n}"
                )));
            }
            let mut digits = vec![0u8; n];
            loop {
                let (mut x, mut y) = (0u64, 0u64);
                for (v, &dg) in digits.iter().enumerate() {
                    match dg {
                        1 => x |= 1 << v,
                        2 => y |= 1 << v,
                        _ => {}
                    }
                }
                consider(x, y, &mut rep);
                let mut i = 0;
                while i < n && digits[i] == 2 {
                    digits[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                digits[i] += 1;
            }
        }
        MixingMode::Sampled { samples, seed } => {
            if n > 64 {
                return Err(Error::ScaleGuard(format!(
                    "sampled mixing check needs n <= 64, got {n}"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let (mut x, mut y) = (0u64, 0u64);
                for v in 0..n {
                    match rng.gen_range(0..3) {
                        1 => x |= 1 << v,
                        2 => y |= 1 << v,
                        _ => {}
                    }
                }
                consider(x, y, &mut rep);
            }
        }
    }
    Ok(rep)
}

/// Orders up to which [`bipartite_hole_max`] is exact.
pub const HOLE_EXHAUSTIVE_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HoleResult {
    /// Largest `|X||Y|` over disjoint nonempty `X, Y` with no edge between
    /// them; 0 when no such pair exists.
    pub value: usize,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub exhaustive: bool,
}

/// For a fixed `X` the best `Y` is everything outside `X ∪ Γ(X)`, so only
/// `X` is searched: all subsets up to [`HOLE_EXHAUSTIVE_LIMIT`] vertices,
/// greedy growth from every start vertex above.
pub fn bipartite_hole_max(g: &Graph) -> HoleResult {
    let n = g.order();
    let bits = g.adjacency_bits();
    let outside = |x: &[usize]| -> Vec<usize> {
        let mut blocked = vec![false; n];
        for &v in x {
            blocked[v] = true;
            for &w in g.neighbors(v) {
                blocked[w] = true;
            }
        }
        (0..n).filter(|&v| !blocked[v]).collect()
    };
    if n <= HOLE_EXHAUSTIVE_LIMIT {
        let adj: Vec<u32> = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
            .collect();
        let full = ((1u64 << n) - 1) as u32;
        let mut best = (0usize, 0u32);
        for x in 1..=full {
            let mut closed = x;
            let mut rest = x;
            while rest != 0 {
                closed |= adj[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            let val = (x.count_ones() * (full & !closed).count_ones()) as usize;
            if val > best.0 {
                best = (val, x);
            }
        }
        if best.0 == 0 {
            return HoleResult {
                value: 0,
                x: vec![],
                y: vec![],
                exhaustive: true,
            };
        }
        let x: Vec<usize> = (0..n).filter(|&v| best.1 >> v & 1 == 1).collect();
        let y = outside(&x);
        return HoleResult {
            value: best.0,
            x,
            y,
            exhaustive: true,
        };
    }
    let mut best = HoleResult {
        value: 0,
        x: vec![],
        y: vec![],
        exhaustive: false,
    };
    for start in 0..n {
        let mut x = vec![start];
        loop {
            let y = outside(&x);
            if x.len() * y.len() > best.value {
                best = HoleResult {
                    value: x.len() * y.len(),
                    x: x.clone(),
                    y: y.clone(),
                    exhaustive: false,
                };
            }
            // add the vertex that keeps the most of Y
            let pick = (0..n)
                .filter(|w| !x.contains(w))
                .map(|w| {
                    let mut lost = bits[w].clone();
                    lost.insert(w);
                    let kept = y.iter().filter(|&&z| !lost.contains(z)).count();
                    ((x.len() + 1) * kept, std::cmp::Reverse(w))
                })
                .max();
            match pick {
                Some((val, std::cmp::Reverse(w))) if val > 0 => x.push(w),
                _ => break,
            }
        }
    }
    best.x.sort_unstable();
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Refuted,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RefutationReport {
    pub d: usize,
    pub n: usize,
    pub sigma2: f64,
    /// `n²/25 - 2n`, the guaranteed hole size in any `n`-subset of the
    /// pentagon coloring's red graph.
    pub hole_lower: f64,
    /// The `O(n)` slack constant used in `hole_lower`.
    pub slack: f64,
    /// `(d/n)·hole_lower - σ₂√hole_lower`; not defined (None) when `hole_lower <= 0`.
    pub margin: Option<f64>,
    pub verdict: Verdict,
}

/// Slack constant `c` in `n²/25 - c·n`, checked exhaustively for `5 <= n <= 12`.
pub const HOLE_SLACK: f64 = 2.0;

/// Decides, from `σ₂` alone, whether the connected regular graph `g` is
/// forced out of the blue graph of the pentagon coloring of `K_{2n-1}`,
/// which would make it not 3-good.
pub fn refute_3_goodness(g: &Graph) -> Result<RefutationReport> {
    let d = g
        .regular_degree()
        .ok_or_else(|| Error::precondition("refutation needs a regular graph"))?;
    if !g.is_connected() {
        return Err(Error::precondition("refutation needs a connected graph"));
    }
    let sigma2 = second_singular_value(g);
    Ok(refutation_from_sigma2(d, g.order(), sigma2))
}

/// The arithmetic half of [`refute_3_goodness`].
pub fn refutation_from_sigma2(d: usize, n: usize, sigma2: f64) -> RefutationReport {
    let nf = n as f64;
    let hole_lower = nf * nf / 25.0 - HOLE_SLACK * nf;
    let margin =
        (hole_lower > 0.0).then(|| d as f64 / nf * hole_lower - sigma2 * hole_lower.sqrt());
    RefutationReport {
        d,
        n,
        sigma2,
        hole_lower,
        slack: HOLE_SLACK,
        margin,
        verdict: if margin.is_some_and(|m| m > 0.0) {
            Verdict::Refuted
        } else {
            Verdict::Inconclusive
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, petersen, GraphKind, GraphSpec};

    #[test]
    fn known_spectra() {
        assert!((second_singular_value(&petersen()) - 2.0).abs() < 1e-9);
        for n in 2..12 {
            assert!((second_singular_value(&Graph::complete(n)) - 1.0).abs() < 1e-9);
        }
        assert!((second_singular_value(&Graph::cycle(4)) - 2.0).abs() < 1e-9);
        assert_eq!(second_singular_value(&Graph::empty(1)), 0.0);
    }

    #[test]
    fn lanczos_matches_dense() {
        for seed in 0..6 {
            let g = generate(&GraphSpec::new(GraphKind::RandomRegular, [120, 6]).with_seed(seed))
                .unwrap();
            assert!((lanczos_sigma2(&g) - dense_sigma2(&g)).abs() < 1e-8);
            let h = generate(
                &GraphSpec::new(GraphKind::RandomGnp, [90])
                    .with_real(0.1)
                    .with_seed(seed),
            )
            .unwrap();
            assert!(
                (lanczos_sigma2(&h) - dense_sigma2(&h)).abs() < 1e-8,
                "seed {seed}"
            );
        }
        // repeated top eigenvalues: two disjoint copies, and a bipartite graph
        let two = crate::graph::disjoint_union(&petersen(), &petersen());
        assert!((lanczos_sigma2(&two) - 3.0).abs() < 1e-8);
        assert!((lanczos_sigma2(&Graph::cycle(30)) - 2.0).abs() < 1e-8);
    }

    #[test]
    fn mixing_holds() {
        for g in [petersen(), Graph::cycle(6), Graph::complete(4)] {
            let r = expander_mixing_check(&g, MixingMode::Exhaustive).unwrap();
            assert!(r.max_violation <= 1e-9);
            assert_eq!(
                r.pairs_tested,
                3u64.pow(g.order() as u32) - 2 * 2u64.pow(g.order() as u32) + 1
            );
        }
        let r = expander_mixing_check(
            &petersen(),
            MixingMode::Sampled {
                samples: 200,
                seed: 1,
            },
        )
        .unwrap();
        assert!(r.max_violation <= 1e-9 && !r.exhaustive);
        assert!(expander_mixing_check(&Graph::path(4), MixingMode::Exhaustive).is_err());
    }

    #[test]
    fn k4_single_pair_by_hand() {
        // |1 - 3/4| = 0.25 against σ₂ = 1
        let g = Graph::complete(4);
        let s = second_singular_value(&g);
        assert!(((1.0f64 - 0.75).abs() - s).abs() - 0.75 < 1e-12);
    }

    #[test]
    fn hole_examples() {
        assert_eq!(bipartite_hole_max(&Graph::complete(6)).value, 0);
        let e = bipartite_hole_max(&Graph::empty(6));
        assert_eq!(
            (e.value, e.x.clone(), e.y.clone()),
            (9, vec![0, 1, 2], vec![3, 4, 5])
        );
        let two = crate::graph::disjoint_union(&Graph::complete(3), &Graph::complete(3));
        let h = bipartite_hole_max(&two);
        assert_eq!((h.value, h.x, h.y), (9, vec![0, 1, 2], vec![3, 4, 5]));
        let big = crate::graph::disjoint_union(&Graph::complete(10), &Graph::complete(10));
        let h = bipartite_hole_max(&big);
        assert_eq!(h.value, 100);
        assert!(!h.exhaustive);
    }

    #[test]
    fn refutation_arithmetic() {
        let r = refute_3_goodness(&petersen()).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.margin.is_none());
        // n = 2000, d = 100: refuted exactly when σ₂ < (d/n)√(n²/25 - 2n) ≈ 19.748
        let edge = 0.05 * (160_000.0f64 - 4000.0).sqrt();
        assert_eq!(
            refutation_from_sigma2(100, 2000, edge - 1e-6).verdict,
            Verdict::Refuted
        );
        assert_eq!(
            refutation_from_sigma2(100, 2000, edge + 1e-6).verdict,
            Verdict::Inconclusive
        );
        assert!(refute_3_goodness(&Graph::path(5)).is_err());
        let two = crate::graph::disjoint_union(&Graph::cycle(5), &Graph::cycle(5));
        assert!(refute_3_goodness(&two).is_err());
    }

    #[test]
    fn verdict_monotone_in_sigma2() {
        for n in [60usize, 500, 2000] {
            let mut last = Verdict::Refuted;
            for i in 0..200 {
                let v = refutation_from_sigma2(100, n, i as f64 * 0.2).verdict;
                assert!(!(last == Verdict::Inconclusive && v == Verdict::Refuted));
                last = v;
            }
        }
    }

    #[test]
    fn four_regular_never_refuted() {
        for (n, seed) in [(10, 0), (50, 1), (200, 2), (600, 3)] {
            let g = generate(&GraphSpec::new(GraphKind::RandomRegular, [n, 4]).with_seed(seed))
                .unwrap();
            if g.is_connected() {
                assert_eq!(
                    refute_3_goodness(&g).unwrap().verdict,
                    Verdict::Inconclusive
                );
            }
        }
    }
}
