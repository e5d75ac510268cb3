//! Certificates for graphs built from splittable pieces. Each construction
//! is post-checked against the new graph; when the size bound fails at this
//! order the constructed set is still reported and `find_split` is tried on
//! the new graph instead.

use std::collections::VecDeque;

use serde::Serialize;

use super::{check_split, find_split, SplitCertificate, SplitMethod};
use crate::error::{Error, Result};
use crate::graph::{blowup, cartesian_product, join, power, Graph};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Transfer {
    #[serde(skip)]
    pub graph: Graph,
    /// The set built by the construction, with the transformed `(γ', η')`.
    pub constructed: SplitCertificate,
    /// False when `constructed` fails `check_split` on `graph`.
    pub constructed_valid: bool,
    /// `constructed` when valid, otherwise whatever the fallback search found.
    pub certificate: Option<SplitCertificate>,
    pub method: Option<SplitMethod>,
    pub diagnostic: Option<String>,
}

fn require_valid(g: &Graph, cert: &SplitCertificate, name: &str) -> Result<()> {
    if check_split(g, cert) {
        Ok(())
    } else {
        Err(Error::precondition(format!(
            "{name} certificate is not valid for its graph"
        )))
    }
}

fn settle(graph: Graph, constructed: SplitCertificate, budget: u128) -> Result<Transfer> {
    if check_split(&graph, &constructed) {
        return Ok(Transfer {
            certificate: Some(constructed.clone()),
            graph,
            constructed,
            constructed_valid: true,
            method: Some(SplitMethod::Transfer),
            diagnostic: None,
        });
    }
    let n = graph.order();
    let diagnostic = format!(
        "invalid at n = {n}: |S'| = {} vs n^(1-gamma') = {:.3}, psi = {} vs eta'·n = {:.3}",
        constructed.separator.len(),
        (n as f64).powf(1.0 - constructed.gamma),
        constructed.largest_component(),
        constructed.eta * n as f64
    );
    let search = find_split(&graph, constructed.gamma, constructed.eta, budget)?;
    Ok(Transfer {
        graph,
        constructed,
        constructed_valid: false,
        certificate: search.certificate,
        method: search.method,
        diagnostic: Some(diagnostic),
    })
}

/// `G^k` with `M' = {v : dist(v, M) <= k}`, `γ' = γ/2`, `η' = η`.
pub fn transfer_power(
    g: &Graph,
    cert: &SplitCertificate,
    k: usize,
    budget: u128,
) -> Result<Transfer> {
    require_valid(g, cert, "input")?;
    let gk = power(g, k)?;
    let mut dist = vec![usize::MAX; g.order()];
    let mut queue: VecDeque<usize> = cert.separator.iter().copied().collect();
    for &v in &cert.separator {
        dist[v] = 0;
    }
    while let Some(v) = queue.pop_front() {
        if dist[v] == k {
            continue;
        }
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let ball: Vec<usize> = (0..g.order()).filter(|&v| dist[v] <= k).collect();
    let constructed = SplitCertificate::from_separator(&gk, cert.gamma / 2.0, cert.eta, ball);
    settle(gk, constructed, budget)
}

/// `G1 × G2` with `M' = M × V(other)` taken from the larger factor,
/// `γ' = min(γ1, γ2)/2`, `η' = max(η1, η2)`.
pub fn transfer_product(
    g1: &Graph,
    c1: &SplitCertificate,
    g2: &Graph,
    c2: &SplitCertificate,
    budget: u128,
) -> Result<Transfer> {
    require_valid(g1, c1, "first")?;
    require_valid(g2, c2, "second")?;
    let prod = cartesian_product(g1, g2);
    let m = g2.order();
    let sep: Vec<usize> = if g1.order() >= g2.order() {
        c1.separator
            .iter()
            .flat_map(|&a| (0..m).map(move |b| a * m + b))
            .collect()
    } else {
        (0..g1.order())
            .flat_map(|a| c2.separator.iter().map(move |&b| a * m + b))
            .collect()
    };
    let constructed = SplitCertificate::from_separator(
        &prod,
        c1.gamma.min(c2.gamma) / 2.0,
        c1.eta.max(c2.eta),
        sep,
    );
    settle(prod, constructed, budget)
}

/// Blow-up with part sizes `sizes`: `M' = φ^{-1}(M)`, `γ' = γ/2` and
/// `η' = min(1, Kηn/N')` where `K` is the largest part and `N'` the new
/// order. The all-ones blow-up returns the input certificate unchanged.
pub fn transfer_blowup(
    g: &Graph,
    cert: &SplitCertificate,
    sizes: &[usize],
    budget: u128,
) -> Result<Transfer> {
    require_valid(g, cert, "input")?;
    let b = blowup(g, sizes)?;
    if sizes.iter().all(|&s| s == 1) {
        return settle(b.graph, cert.clone(), budget);
    }
    let big_n = b.graph.order() as f64;
    let eta = (b.max_multiplicity as f64 * cert.eta * g.order() as f64 / big_n).min(1.0);
    let sep = b.preimage(&cert.separator);
    let constructed = SplitCertificate::from_separator(&b.graph, cert.gamma / 2.0, eta, sep);
    settle(b.graph, constructed, budget)
}

/// `K_l + G` with apexes `0..l`: `M' = apexes ∪ (M + l)`, `γ' = γ/2`, `η' = η`.
pub fn transfer_join(
    g: &Graph,
    cert: &SplitCertificate,
    l: usize,
    budget: u128,
) -> Result<Transfer> {
    require_valid(g, cert, "input")?;
    let joined = join(&Graph::complete(l), g);
    let sep: Vec<usize> = (0..l)
        .chain(cert.separator.iter().map(|&v| v + l))
        .collect();
    let constructed = SplitCertificate::from_separator(&joined, cert.gamma / 2.0, cert.eta, sep);
    settle(joined, constructed, budget)
}
