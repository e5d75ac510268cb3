//! `(γ, η)`-splittability.
//!
//! A graph of order `n` is `(γ, η)`-splittable when deleting fewer than
//! `n^{1-γ}` vertices leaves only components of order at most `ηn`. A
//! [`SplitCertificate`] records such a separator together with the
//! components it leaves; [`check_split`] validates one from scratch.

mod probe;
mod transfer;
mod tree;
mod trim;

pub use probe::{probe_crumbling, ProbeRow, Splitter};
pub use transfer::{transfer_blowup, transfer_join, transfer_power, transfer_product, Transfer};
pub use tree::{tree_split, TreeSplit};
pub use trim::{trim, TrimResult};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SplitCertificate {
    pub gamma: f64,
    pub eta: f64,
    /// Sorted, without repeats.
    pub separator: Vec<usize>,
    /// Components of `G - S`, as produced by [`Graph::components_without`].
    pub components: Vec<Vec<usize>>,
}

impl SplitCertificate {
    /// Builds the certificate for `separator` without judging it.
    pub fn from_separator(g: &Graph, gamma: f64, eta: f64, mut separator: Vec<usize>) -> Self {
        separator.sort_unstable();
        separator.dedup();
        let components = g.components_without(&separator);
        SplitCertificate {
            gamma,
            eta,
            separator,
            components,
        }
    }

    pub fn component_sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    /// `ψ(G - S)`
    pub fn largest_component(&self) -> usize {
        self.components.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// How a certificate was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitMethod {
    Exhaustive,
    BalancedPeeling,
    TreeSplit,
    LevelSeparator,
    DegreePeeling,
    Given,
    Transfer,
}

/// Certificate plus provenance, in the JSON layout used by the CLI.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SplitReport {
    pub gamma: f64,
    pub eta: f64,
    pub separator: Vec<usize>,
    pub component_sizes: Vec<usize>,
    pub method: SplitMethod,
    pub exhaustive: bool,
    pub valid: bool,
}

impl SplitReport {
    pub fn new(g: &Graph, cert: &SplitCertificate, method: SplitMethod, exhaustive: bool) -> Self {
        SplitReport {
            gamma: cert.gamma,
            eta: cert.eta,
            separator: cert.separator.clone(),
            component_sizes: cert.component_sizes(),
            method,
            exhaustive,
            valid: check_split(g, cert),
        }
    }
}

/// Whether `s < n^e` for real `e`, decided exactly when `n^e` is (within
/// rounding) an integer with a small rational exponent.
pub fn strictly_below_power(s: usize, n: usize, e: f64) -> bool {
    let t = (n as f64).powf(e);
    let sf = s as f64;
    if sf < t * (1.0 - 1e-12) {
        return true;
    }
    if sf > t * (1.0 + 1e-12) {
        return false;
    }
    match small_rational(e) {
        Some((p, q)) => BigUint::from(s).pow(q) < BigUint::from(n).pow(p),
        None => sf < t,
    }
}

/// `p/q` with `q <= 1000` and `|e - p/q| < 1e-12`, by continued fractions.
fn small_rational(e: f64) -> Option<(u32, u32)> {
    if !(0.0..=1.0).contains(&e) {
        return None;
    }
    let (mut h0, mut h1) = (0u64, 1u64);
    let (mut k0, mut k1) = (1u64, 0u64);
    let mut x = e;
    for _ in 0..40 {
        let a = x.floor();
        let ai = a as u64;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > 1000 {
            return None;
        }
        if (e - h2 as f64 / k2 as f64).abs() < 1e-12 {
            return Some((h2 as u32, k2 as u32));
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = x - a;
        if frac < 1e-15 {
            return None;
        }
        x = 1.0 / frac;
    }
    None
}

/// Largest separator size allowed by the strict bound `|S| < n^{1-γ}`.
pub fn max_separator_size(n: usize, gamma: f64) -> Option<usize> {
    let e = 1.0 - gamma;
    if !strictly_below_power(0, n, e) {
        return None;
    }
    let mut s = (n as f64).powf(e).floor() as usize + 1;
    while !strictly_below_power(s, n, e) {
        s -= 1;
    }
    Some(s)
}

fn params_ok(gamma: f64, eta: f64) -> bool {
    gamma > 0.0 && gamma < 1.0 && eta > 0.0 && eta <= 1.0
}

/// Validates all certificate invariants against `g`: parameter ranges, the
/// strict separator bound, component orders, and that the listed components
/// are exactly those of `G - S`.
pub fn check_split(g: &Graph, cert: &SplitCertificate) -> bool {
    let n = g.order();
    if !params_ok(cert.gamma, cert.eta) {
        return false;
    }
    if cert.separator.iter().any(|&v| v >= n) || cert.separator.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    if !strictly_below_power(cert.separator.len(), n, 1.0 - cert.gamma) {
        return false;
    }
    let limit = cert.eta * n as f64;
    if cert.components.iter().any(|c| c.len() as f64 > limit) {
        return false;
    }
    let mut listed = cert.components.clone();
    for c in listed.iter_mut() {
        c.sort_unstable();
    }
    listed.sort();
    let mut actual = g.components_without(&cert.separator);
    actual.sort();
    listed == actual
}

/// Outcome of [`find_split`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SplitSearch {
    pub certificate: Option<SplitCertificate>,
    pub method: Option<SplitMethod>,
    /// True when every admissible separator was examined, so absence is a
    /// proof of non-splittability.
    pub exhaustive: bool,
}

fn binom_capped(n: usize, k: usize, cap: u128) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > cap {
            return cap + 1;
        }
    }
    acc
}

/// Looks for a `(γ, η)` certificate. When the number of admissible
/// separators is at most `budget` every one is tried (smallest first, then
/// lexicographically); otherwise a sequence of heuristics runs and a miss
/// proves nothing.
pub fn find_split(g: &Graph, gamma: f64, eta: f64, budget: u128) -> Result<SplitSearch> {
    if !params_ok(gamma, eta) {
        return Err(Error::params(format!(
            "need 0 < gamma < 1 and 0 < eta <= 1, got {gamma}, {eta}"
        )));
    }
    let n = g.order();
    let Some(smax) = max_separator_size(n, gamma) else {
        return Ok(SplitSearch {
            certificate: None,
            method: None,
            exhaustive: true,
        });
    };
    let smax = smax.min(n);
    let mut cost: u128 = 0;
    for s in 0..=smax {
        cost = cost.saturating_add(binom_capped(n, s, budget));
        if cost > budget {
            break;
        }
    }
    if cost <= budget {
        let found = exhaustive_split(g, eta, smax);
        return Ok(SplitSearch {
            certificate: found.map(|s| SplitCertificate::from_separator(g, gamma, eta, s)),
            method: Some(SplitMethod::Exhaustive),
            exhaustive: true,
        });
    }
    for (method, sep) in heuristics(g, eta, smax) {
        if let Some(sep) = sep {
            let cert = SplitCertificate::from_separator(g, gamma, eta, sep);
            if check_split(g, &cert) {
                return Ok(SplitSearch {
                    certificate: Some(cert),
                    method: Some(method),
                    exhaustive: false,
                });
            }
        }
    }
    Ok(SplitSearch {
        certificate: None,
        method: None,
        exhaustive: false,
    })
}

fn exhaustive_split(g: &Graph, eta: f64, smax: usize) -> Option<Vec<usize>> {
    let n = g.order();
    let limit = eta * n as f64;
    let ok = |sep: &[usize]| g.largest_component_without(sep) as f64 <= limit;
    if ok(&[]) {
        return Some(Vec::new());
    }
    for s in 1..=smax {
        // the first element fixes a lexicographic block; blocks are searched in parallel
        let hit = (0..n).into_par_iter().find_map_first(|first| {
            let mut combo: Vec<usize> = (first..first + s).collect();
            if combo[s - 1] >= n {
                return None;
            }
            loop {
                if ok(&combo) {
                    return Some(combo);
                }
                // advance positions 1..s lexicographically
                let mut i = s - 1;
                loop {
                    if i == 0 {
                        return None;
                    }
                    if combo[i] < n - (s - i) {
                        combo[i] += 1;
                        for j in i + 1..s {
                            combo[j] = combo[j - 1] + 1;
                        }
                        break;
                    }
                    i -= 1;
                }
            }
        });
        if hit.is_some() {
            return hit;
        }
    }
    None
}

fn heuristics(g: &Graph, eta: f64, smax: usize) -> Vec<(SplitMethod, Option<Vec<usize>>)> {
    let limit = eta * g.order() as f64;
    let mut out = vec![(
        SplitMethod::BalancedPeeling,
        balanced_peeling(g, limit, smax),
    )];
    if g.is_tree() && g.order() >= 2 {
        let mut tree_sep = None;
        for k in 1..=usize::BITS as usize {
            let Ok(ts) = tree_split(g, k) else { break };
            if ts.separator.len() > smax {
                break;
            }
            if ts.largest_component as f64 <= limit {
                tree_sep = Some(ts.separator);
                break;
            }
        }
        out.push((SplitMethod::TreeSplit, tree_sep));
    }
    out.push((
        SplitMethod::LevelSeparator,
        level_separators(g, limit, smax),
    ));
    out.push((SplitMethod::DegreePeeling, degree_peeling(g, limit, smax)));
    out
}

fn largest_of(g: &Graph, sep: &[usize]) -> Vec<usize> {
    g.components_without(sep)
        .into_iter()
        .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)))
        .unwrap_or_default()
}

/// Repeatedly removes, from the largest component, the vertex whose removal
/// leaves the smallest largest piece.
fn balanced_peeling(g: &Graph, limit: f64, smax: usize) -> Option<Vec<usize>> {
    let mut sep = Vec::new();
    loop {
        let comp = largest_of(g, &sep);
        if comp.len() as f64 <= limit {
            return Some(sep);
        }
        if sep.len() >= smax {
            return None;
        }
        let sub = g.induced_subgraph(&comp);
        let work = comp.len() * (sub.size() + comp.len());
        let pick = if work <= 20_000_000 {
            (0..comp.len())
                .min_by_key(|&i| (sub.largest_component_without(&[i]), i))
                .unwrap()
        } else {
            (0..comp.len())
                .max_by_key(|&i| (sub.degree(i), std::cmp::Reverse(i)))
                .unwrap()
        };
        sep.push(comp[pick]);
    }
}

/// Removes high-degree vertices of the largest component.
fn degree_peeling(g: &Graph, limit: f64, smax: usize) -> Option<Vec<usize>> {
    let mut sep: Vec<usize> = Vec::new();
    loop {
        let comp = largest_of(g, &sep);
        if comp.len() as f64 <= limit {
            return Some(sep);
        }
        if sep.len() >= smax {
            return None;
        }
        let sub = g.induced_subgraph(&comp);
        let i = (0..comp.len())
            .max_by_key(|&i| (sub.degree(i), std::cmp::Reverse(i)))
            .unwrap();
        sep.push(comp[i]);
    }
}

/// Cuts the largest component along a BFS layer from a pseudo-peripheral
/// vertex, choosing the layer with the most balanced sides.
fn level_separators(g: &Graph, limit: f64, smax: usize) -> Option<Vec<usize>> {
    let mut sep: Vec<usize> = Vec::new();
    loop {
        let comp = largest_of(g, &sep);
        if comp.len() as f64 <= limit {
            return Some(sep);
        }
        let sub = g.induced_subgraph(&comp);
        let far = |src: usize| {
            let d = sub.bfs_distances(src);
            let i = (0..d.len())
                .max_by_key(|&i| (d[i], std::cmp::Reverse(i)))
                .unwrap();
            (i, d)
        };
        let (a, _) = far(0);
        let (_, dist) = far(a);
        let depth = dist.iter().copied().max().unwrap_or(0);
        let mut layer = vec![0usize; depth + 1];
        for &d in &dist {
            layer[d] += 1;
        }
        let total = comp.len();
        let mut best: Option<(usize, usize, usize)> = None; // (max side, layer size, level)
        let mut inside = 0;
        for lvl in 0..=depth {
            let outside = total - inside - layer[lvl];
            let key = (inside.max(outside), layer[lvl], lvl);
            if sep.len() + layer[lvl] <= smax && best.is_none_or(|b| key < b) {
                best = Some(key);
            }
            inside += layer[lvl];
        }
        let (_, _, lvl) = best?;
        let before = sep.len();
        sep.extend((0..total).filter(|&i| dist[i] == lvl).map(|i| comp[i]));
        if sep.len() == before {
            return None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind, GraphSpec};

    #[test]
    fn strict_bound_is_exact_at_integers() {
        assert!(!strictly_below_power(20, 400, 0.5));
        assert!(strictly_below_power(19, 400, 0.5));
        assert!(!strictly_below_power(4, 8, 2.0 / 3.0));
        assert!(strictly_below_power(3, 8, 2.0 / 3.0));
        assert!(strictly_below_power(4, 21, 0.5));
        assert_eq!(max_separator_size(400, 0.5), Some(19));
        assert_eq!(max_separator_size(21, 0.5), Some(4));
        assert_eq!(max_separator_size(100, 0.7), Some(3));
    }

    #[test]
    fn check_split_examples() {
        let star = Graph::star(20);
        let c = SplitCertificate::from_separator(&star, 0.5, 0.05, vec![0]);
        assert!(check_split(&star, &c));
        let p = Graph::path(10);
        assert!(!check_split(
            &p,
            &SplitCertificate::from_separator(&p, 0.5, 0.5, vec![])
        ));
        let k = Graph::complete(10);
        for s in [vec![], vec![0], vec![3, 7]] {
            assert!(!check_split(
                &k,
                &SplitCertificate::from_separator(&k, 0.5, 0.5, s)
            ));
        }
    }

    #[test]
    fn check_split_rejects_tampered_components() {
        let p = Graph::path(9);
        let mut c = SplitCertificate::from_separator(&p, 0.5, 0.5, vec![4]);
        assert!(check_split(&p, &c));
        c.components[0].pop();
        assert!(!check_split(&p, &c));
        let mut c = SplitCertificate::from_separator(&p, 0.5, 0.5, vec![4]);
        c.gamma = 1.0;
        assert!(!check_split(&p, &c));
    }

    #[test]
    fn find_split_examples() {
        let p = Graph::path(100);
        let r = find_split(&p, 0.3, 0.55, 1_000_000).unwrap();
        // 25 admissible separator sizes is far past the budget, so the
        // balanced-peeling heuristic answers with the middle vertex
        assert!(!r.exhaustive);
        assert_eq!(r.method, Some(SplitMethod::BalancedPeeling));
        let c = r.certificate.unwrap();
        assert_eq!(c.separator, vec![49]);
        assert!(c.largest_component() <= 55);

        let r = find_split(&Graph::complete(10), 0.5, 0.5, 1_000_000).unwrap();
        assert!(r.certificate.is_none() && r.exhaustive);

        let t = generate(&GraphSpec::new(GraphKind::RandomTree, [200]).with_seed(1)).unwrap();
        let r = find_split(&t, 0.5, 0.25, 1_000_000).unwrap();
        assert!(check_split(&t, r.certificate.as_ref().unwrap()));
    }

    #[test]
    fn exhaustive_finds_smallest_lexicographic() {
        // C8 needs two opposite vertices to get pieces of order <= 3
        let c = Graph::cycle(8);
        let r = find_split(&c, 0.5, 3.0 / 8.0, 1_000_000).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.certificate.unwrap().separator, vec![0, 4]);
    }

    #[test]
    fn heuristics_handle_grids() {
        let g = generate(&GraphSpec::new(GraphKind::Grid, [20, 2])).unwrap();
        let r = find_split(&g, 0.3, 0.3, 1000).unwrap();
        assert!(check_split(&g, r.certificate.as_ref().unwrap()));
    }
}
