//! Embedding a splittable degenerate graph component by component.
//!
//! The pattern is first trimmed so that every vertex outside the separator
//! `M` has at most `2q` neighbors in `M`. `H[M]` goes into a dense core of
//! the host; each component of `H - M` then goes, whole, into the first zone
//! with enough free room. Inside a zone, a vertex with `h` placed component
//! neighbors and `s` placed separator neighbors needs a free vertex in the
//! intersection of `h + s` host neighborhoods.

use serde::Serialize;

use super::{Embedding, Extender};
use crate::bitset::BitSet;
use crate::degeneracy::degeneracy_order;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::split::{trim, SplitCertificate};

/// Host-side layout: a core for the trimmed separator and zones for the
/// components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZonePlan {
    pub core: Vec<usize>,
    pub zones: Vec<Vec<usize>>,
    /// Free vertices a zone must keep beyond the component being placed.
    pub margin: usize,
}

impl ZonePlan {
    pub fn new(core: Vec<usize>, zones: Vec<Vec<usize>>, margin: usize) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &v in core.iter().chain(zones.iter().flatten()) {
            if !seen.insert(v) {
                return Err(Error::params(format!(
                    "vertex {v} appears twice in the zone plan"
                )));
            }
        }
        Ok(ZonePlan {
            core,
            zones,
            margin,
        })
    }

    /// `(6q+1)·⌈√ε·|U|⌉` for the largest zone `U`.
    pub fn default_margin(q: usize, largest_zone: usize, eps_zone: f64) -> usize {
        (6 * q + 1) * (eps_zone.sqrt() * largest_zone as f64).ceil() as usize
    }

    pub fn with_default_margin(
        core: Vec<usize>,
        zones: Vec<Vec<usize>>,
        q: usize,
        eps_zone: f64,
    ) -> Result<Self> {
        let largest = zones.iter().map(Vec::len).max().unwrap_or(0);
        ZonePlan::new(core, zones, Self::default_margin(q, largest, eps_zone))
    }

    /// Core `0..core`, then `zones` consecutive blocks of nearly equal size
    /// covering the rest of `0..n`.
    pub fn consecutive(n: usize, core: usize, zones: usize, margin: usize) -> Result<Self> {
        if core > n || zones == 0 {
            return Err(Error::params(format!(
                "cannot lay out core {core} and {zones} zones in {n} vertices"
            )));
        }
        let rest = n - core;
        let blocks = (0..zones)
            .map(|i| (core + i * rest / zones..core + (i + 1) * rest / zones).collect())
            .collect();
        ZonePlan::new((0..core).collect(), blocks, margin)
    }
}

/// Candidate-set accounting for one placed component vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepBound {
    pub vertex: usize,
    pub zone: usize,
    /// `h`: placed neighbors inside the component.
    pub component_neighbors: usize,
    /// `s`: neighbors in the trimmed separator.
    pub separator_neighbors: usize,
    /// `Σ_j |Γ(x_j) ∩ U| - (h+s-1)|U|`.
    pub bound: i64,
    /// `|∩_j Γ(x_j) ∩ U|`.
    pub actual: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitEmbedding {
    pub embedding: Embedding,
    /// The trimmed separator `M`.
    pub trimmed: Vec<usize>,
    /// Components of `H - M`, largest first, with the zone each went to.
    pub placements: Vec<(Vec<usize>, usize)>,
    pub steps: Vec<StepBound>,
}

fn ordered(h: &Graph, vertices: &[usize]) -> Vec<usize> {
    degeneracy_order(&h.induced_subgraph(vertices))
        .order
        .into_iter()
        .map(|i| vertices[i])
        .collect()
}

/// Runs the trim / core / zones pipeline. `Ok(None)` means some step ran out
/// of candidates; an error means the inputs or the plan are unusable.
pub fn embed_splittable(
    h: &Graph,
    q: usize,
    split: &SplitCertificate,
    host: &Graph,
    plan: &ZonePlan,
) -> Result<Option<SplitEmbedding>> {
    let n = host.order();
    if let Some(&v) = plan
        .core
        .iter()
        .chain(plan.zones.iter().flatten())
        .find(|&&v| v >= n)
    {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            order: n,
        });
    }
    let trimmed = trim(h, &split.separator, q, split.eta)?.set;
    if plan.core.len() < trimmed.len() {
        return Err(Error::precondition(format!(
            "zone plan infeasible: core has {} vertices, trimmed separator needs {}",
            plan.core.len(),
            trimmed.len()
        )));
    }

    let bits = host.adjacency_bits();
    let mut ext = Extender::new(h, &bits, n);
    let core = BitSet::from_iter(n, plan.core.iter().copied());
    if !ext.extend(&ordered(h, &trimmed), &core) {
        return Ok(None);
    }

    let zones: Vec<BitSet> = plan
        .zones
        .iter()
        .map(|z| BitSet::from_iter(n, z.iter().copied()))
        .collect();
    let mut comps = h.components_without(&trimmed);
    comps.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut placements = Vec::with_capacity(comps.len());
    let mut orders = Vec::with_capacity(comps.len());
    for comp in comps {
        let fits = |z: &BitSet| {
            let mut free = z.clone();
            free.difference_with(&ext.used);
            free.len() >= comp.len() + plan.margin
        };
        let Some(zi) = zones.iter().position(fits) else {
            return Ok(None);
        };
        let order = ordered(h, &comp);
        if !ext.extend(&order, &zones[zi]) {
            return Ok(None);
        }
        placements.push((comp, zi));
        orders.push(order);
    }
    let embedding = ext.finish(h.clone(), host.clone());

    let in_m = BitSet::from_iter(h.order(), trimmed.iter().copied());
    let mut steps = Vec::new();
    for ((_, zi), order) in placements.iter().zip(&orders) {
        let zone = &zones[*zi];
        let mut before = BitSet::new(h.order());
        for &v in order {
            let placed: Vec<usize> = h
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| in_m.contains(w) || before.contains(w))
                .collect();
            let s = placed.iter().filter(|&&w| in_m.contains(w)).count();
            let mut inter = zone.clone();
            let mut sum = 0i64;
            for &w in &placed {
                let x = embedding.map[w];
                sum += bits[x].intersection_len(zone) as i64;
                inter.intersect_with(&bits[x]);
            }
            let k = placed.len() as i64;
            let bound = if k == 0 {
                zone.len() as i64
            } else {
                sum - (k - 1) * zone.len() as i64
            };
            steps.push(StepBound {
                vertex: v,
                zone: *zi,
                component_neighbors: placed.len() - s,
                separator_neighbors: s,
                bound,
                actual: inter.len(),
            });
            before.insert(v);
        }
    }
    Ok(Some(SplitEmbedding {
        embedding,
        trimmed,
        placements,
        steps,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::verify_embedding;
    use crate::split::check_split;

    fn spider(legs: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..legs {
            let a = 1 + 2 * i;
            edges.push((0, a));
            edges.push((a, a + 1));
        }
        Graph::from_edges(1 + 2 * legs, edges).unwrap()
    }

    #[test]
    fn spider_into_complete_host() {
        let h = spider(10);
        assert_eq!(h.order(), 21);
        let cert = SplitCertificate::from_separator(&h, 0.5, 0.1, vec![0]);
        assert!(check_split(&h, &cert));
        let plan = ZonePlan::new((0..5).collect(), vec![(5..30).collect()], 0).unwrap();
        let out = embed_splittable(&h, 1, &cert, &Graph::complete(30), &plan)
            .unwrap()
            .unwrap();
        assert!(verify_embedding(&out.embedding));
        assert_eq!(out.trimmed, vec![0]);
        assert!(out.steps.iter().all(|s| s.actual as i64 >= s.bound));
        assert!(out
            .steps
            .iter()
            .all(|s| s.separator_neighbors <= 2 && s.component_neighbors <= 1));
    }

    #[test]
    fn margin_blocks_tight_zone() {
        let h = spider(3);
        let cert = SplitCertificate::from_separator(&h, 0.3, 0.5, vec![0]);
        let plan = ZonePlan::new(vec![0], vec![(1..7).collect()], 1).unwrap();
        assert_eq!(
            embed_splittable(&h, 1, &cert, &Graph::complete(7), &plan).unwrap(),
            None
        );
        let plan = ZonePlan::new(vec![0], vec![(1..7).collect()], 0).unwrap();
        assert!(embed_splittable(&h, 1, &cert, &Graph::complete(7), &plan)
            .unwrap()
            .is_some());
    }

    #[test]
    fn infeasible_plan_is_an_error() {
        let h = spider(4);
        let cert = SplitCertificate::from_separator(&h, 0.3, 0.5, vec![0]);
        let plan = ZonePlan::new(vec![], vec![(0..20).collect()], 0).unwrap();
        assert!(matches!(
            embed_splittable(&h, 1, &cert, &Graph::complete(20), &plan),
            Err(Error::Precondition(_))
        ));
        assert!(ZonePlan::new(vec![1], vec![vec![1, 2]], 0).is_err());
    }

    #[test]
    fn default_margin_formula() {
        assert_eq!(ZonePlan::default_margin(1, 25, 0.01), 21);
        assert_eq!(ZonePlan::default_margin(2, 100, 0.01), 130);
    }

    #[test]
    fn consecutive_layout() {
        let p = ZonePlan::consecutive(10, 2, 3, 0).unwrap();
        assert_eq!(p.core, vec![0, 1]);
        assert_eq!(p.zones, vec![vec![2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        assert!(ZonePlan::consecutive(3, 4, 1, 0).is_err());
    }
}
