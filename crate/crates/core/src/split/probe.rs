use serde::Serialize;

use super::{check_split, find_split, tree_split, SplitCertificate};
use crate::error::{Error, Result};
use crate::graph::{generate, GraphKind, GraphSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Splitter {
    TreeSplit,
    BranchVertices,
    FindSplit,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeRow {
    /// Family parameter substituted into the template.
    pub n: usize,
    /// Order of the generated graph.
    pub order: usize,
    pub found: bool,
    pub separator_size: Option<usize>,
    pub largest_component: Option<usize>,
    pub splitter: Splitter,
    /// True when a miss is certain, not just a heuristic miss.
    pub exhaustive: bool,
}

/// Generates the family member for each `n` (replacing the template's first
/// parameter) and reports whether a `(γ, η)` certificate was found. Trees
/// go through `tree_split` with `k = ⌈log2(1/η)⌉`, subdivided cliques try
/// their branch vertices, and every miss falls through to `find_split`.
pub fn probe_crumbling(
    template: &GraphSpec,
    gamma: f64,
    eta: f64,
    n_values: &[usize],
    budget: u128,
) -> Result<Vec<ProbeRow>> {
    if !(gamma > 0.0 && gamma < 1.0 && eta > 0.0 && eta <= 1.0) {
        return Err(Error::params(format!(
            "need 0 < gamma < 1 and 0 < eta <= 1, got {gamma}, {eta}"
        )));
    }
    let mut rows = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let mut spec = template.clone();
        if spec.params.is_empty() {
            spec.params.push(n);
        } else {
            spec.params[0] = n;
        }
        let g = generate(&spec)?;
        let direct = match spec.kind {
            GraphKind::RandomTree if g.order() >= 2 => {
                let k = ((1.0 / eta).log2().ceil() as usize).max(1);
                Some((Splitter::TreeSplit, tree_split(&g, k)?.separator))
            }
            GraphKind::SubdividedComplete => Some((Splitter::BranchVertices, (0..n).collect())),
            _ => None,
        };
        if let Some((splitter, sep)) = direct {
            let cert = SplitCertificate::from_separator(&g, gamma, eta, sep);
            if check_split(&g, &cert) {
                rows.push(ProbeRow {
                    n,
                    order: g.order(),
                    found: true,
                    separator_size: Some(cert.separator.len()),
                    largest_component: Some(cert.largest_component()),
                    splitter,
                    exhaustive: false,
                });
                continue;
            }
        }
        let search = find_split(&g, gamma, eta, budget)?;
        rows.push(ProbeRow {
            n,
            order: g.order(),
            found: search.certificate.is_some(),
            separator_size: search.certificate.as_ref().map(|c| c.separator.len()),
            largest_component: search.certificate.as_ref().map(|c| c.largest_component()),
            splitter: Splitter::FindSplit,
            exhaustive: search.exhaustive,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trees_crumble() {
        let ns: Vec<usize> = (1..=16).map(|i| 50 * i).collect();
        let rows = probe_crumbling(
            &GraphSpec::new(GraphKind::RandomTree, [0]).with_seed(11),
            0.5,
            0.125,
            &ns,
            100_000,
        )
        .unwrap();
        let first = rows.iter().position(|r| r.found).unwrap();
        assert!(rows[first..].iter().all(|r| r.found));
        assert!(rows
            .iter()
            .filter(|r| r.splitter == Splitter::TreeSplit)
            .all(|r| r.separator_size.unwrap() <= 26));
        assert!(rows.last().unwrap().splitter == Splitter::TreeSplit);
    }

    #[test]
    fn cliques_never_split() {
        let rows = probe_crumbling(
            &GraphSpec::new(GraphKind::Complete, [0]),
            0.5,
            0.5,
            &[4, 6, 8, 10],
            1_000_000,
        )
        .unwrap();
        assert!(rows.iter().all(|r| !r.found && r.exhaustive));
    }

    #[test]
    fn subdivided_clique_branch_set_is_too_large() {
        // order N = n(n+1)/2 and the n branch vertices exceed N^{1/2};
        // König gives vertex cover number n, so nothing smaller works either
        for n in [4usize, 6, 10] {
            let eta = 2.0 / (n * (n + 1)) as f64;
            let rows = probe_crumbling(
                &GraphSpec::new(GraphKind::SubdividedComplete, [0]),
                0.5,
                eta,
                &[n],
                10_000_000,
            )
            .unwrap();
            assert!(!rows[0].found, "n = {n}");
        }
        let rows = probe_crumbling(
            &GraphSpec::new(GraphKind::SubdividedComplete, [0]),
            0.4,
            2.0 / 110.0,
            &[10],
            0,
        )
        .unwrap();
        assert!(rows[0].found);
        assert_eq!(rows[0].splitter, Splitter::BranchVertices);
    }
}
