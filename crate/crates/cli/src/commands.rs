//! One function per subcommand, each returning an [`Output`] whose body is a
//! JSON object. Keys are emitted in sorted order (serde_json's default map),
//! so equal inputs give byte-identical reports.

use std::path::Path;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use rgood::cliques::{
    book_size, count_cliques, find_complete_multipartite, joint_cliques, joint_size,
    verify_min_degree_clique_bound,
};
use rgood::degeneracy::{
    degeneracy, degeneracy_coloring, degeneracy_order, high_degree_bound_check,
};
use rgood::embed::{
    dense_core, dependent_random_choice, embed_splittable, greedy_embed_degenerate,
    verify_embedding, DrcOptions, ZonePlan,
};
use rgood::graph::{encode_graph6, generate, GraphKind, GraphSpec};
use rgood::ramsey::{
    bipartite_hole_max, check_arrowing, expander_mixing_check, pentagon_coloring, pentagon_parts,
    pentagon_q, pentagon_q_sampled, ramsey_number, refute_3_goodness, second_singular_value,
    verify_witness, MixingMode, DENSE_EIGEN_LIMIT,
};
use rgood::split::{
    check_split, find_split, probe_crumbling, transfer_blowup, transfer_join, transfer_power,
    transfer_product, tree_split, trim, SplitCertificate, SplitReport, SplitSearch,
};
use rgood::{Error, Graph, Result};

use crate::literal::{parse_graph, parse_vertices};
use crate::{envelope, Cli, Command, Output};

/// Separator candidates `split` and friends may enumerate before switching
/// to heuristics.
pub const DEFAULT_SPLIT_BUDGET: u128 = 1_000_000;
/// Tuples `drc` may enumerate before sampling.
pub const DEFAULT_DRC_BUDGET: u128 = 1_000_000;
/// Absolute tolerance for floats when replaying recorded reports.
pub const REPLAY_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TransferKind {
    Power,
    Product,
    Blowup,
    Join,
}

fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// Counts as JSON numbers while they fit in 64 bits, decimal strings beyond.
fn big(x: u128) -> Value {
    u64::try_from(x).map_or_else(|_| x.to_string().into(), Value::from)
}

fn g6(g: &Graph) -> String {
    String::from_utf8_lossy(&encode_graph6(g)).into_owned()
}

pub fn graph_summary(g: &Graph) -> Value {
    json!({ "order": g.order(), "size": g.size(), "graph6": g6(g) })
}

fn report(method: &'static str, body: Value) -> Result<Output> {
    Ok(Output::Report { method, body })
}

fn tag(exhaustive: bool) -> &'static str {
    if exhaustive {
        "exhaustive"
    } else {
        "heuristic"
    }
}

/// Family name to a generator spec whose first parameter is the order knob.
fn family_spec(name: &str, n: usize, seed: u64) -> Result<GraphSpec> {
    let (kind, params) = match name {
        "tree" => (GraphKind::RandomTree, vec![n]),
        "path" => (GraphKind::Path, vec![n]),
        "cycle" => (GraphKind::Cycle, vec![n]),
        "complete" => (GraphKind::Complete, vec![n]),
        "star" => (GraphKind::Star, vec![n]),
        "wheel" => (GraphKind::Wheel, vec![n]),
        "grid" => (GraphKind::Grid, vec![n, 2]),
        "subdivided-complete" => (GraphKind::SubdividedComplete, vec![n]),
        _ => {
            return Err(Error::InvalidParams(format!(
                "unknown family {name:?}; expected tree, path, cycle, complete, star, wheel, grid or subdivided-complete"
            )))
        }
    };
    Ok(GraphSpec::new(kind, params).with_seed(seed))
}

fn split_body(g: &Graph, search: &SplitSearch) -> Value {
    let certificate = match (&search.certificate, search.method) {
        (Some(c), Some(m)) => value(&SplitReport::new(g, c, m, search.exhaustive)),
        _ => Value::Null,
    };
    json!({
        "order": g.order(),
        "found": search.certificate.is_some(),
        "exhaustive": search.exhaustive,
        "certificate": certificate,
    })
}

/// A certificate for `g`, or an error saying none was found.
fn require_split(
    g: &Graph,
    gamma: f64,
    eta: f64,
    budget: u128,
    which: &str,
) -> Result<SplitCertificate> {
    find_split(g, gamma, eta, budget)?
        .certificate
        .ok_or_else(|| {
            Error::Infeasible(format!(
                "no ({gamma}, {eta}) certificate found for the {which} graph"
            ))
        })
}

pub fn run(cmd: &Command, seed: u64, budget: Option<u128>) -> Result<Output> {
    let graph = |lit: &str| parse_graph(lit, seed);
    let split_budget = budget.unwrap_or(DEFAULT_SPLIT_BUDGET);
    match cmd {
        Command::Generate { graph: lit } => Ok(Output::Graph(graph(lit)?)),
        Command::Degeneracy { graph: lit } => {
            let g = graph(lit)?;
            let d = degeneracy_order(&g);
            let coloring = degeneracy_coloring(&g);
            let colors = coloring.iter().max().map_or(0, |&c| c + 1);
            let high = high_degree_bound_check(&g, d.degeneracy)?;
            report(
                "exhaustive",
                json!({
                    "degeneracy": d.degeneracy,
                    "order": d.order,
                    "back_degrees": d.back_degrees,
                    "coloring": coloring,
                    "colors": colors,
                    "high_degree": value(&high),
                }),
            )
        }
        Command::Cliques { graph: lit, r } => {
            let g = graph(lit)?;
            if *r == 0 {
                return Err(Error::InvalidParams("r must be at least 1".into()));
            }
            report(
                "exhaustive",
                json!({ "r": r, "count": big(count_cliques(&g, *r)) }),
            )
        }
        Command::Joint { graph: lit, p } => {
            let g = graph(lit)?;
            let w = joint_size(&g, *p)?;
            let cliques = w.edge.map(|e| joint_cliques(&g, *p, e)).unwrap_or_default();
            report(
                "exhaustive",
                json!({ "p": w.p, "edge": w.edge, "size": big(w.size), "cliques": cliques }),
            )
        }
        Command::Book { graph: lit, p } => {
            report("exhaustive", value(&book_size(&graph(lit)?, *p)?))
        }
        Command::Multipartite { graph: lit, parts } => {
            let g = graph(lit)?;
            let found = find_complete_multipartite(&g, parts);
            let verified = found.as_ref().is_some_and(verify_embedding);
            report(
                "exhaustive",
                json!({ "parts": parts, "found": found.is_some(), "verified": verified, "embedding": value(&found) }),
            )
        }
        Command::CliqueBound {
            graph: lit,
            r,
            alpha,
        } => {
            let c = verify_min_degree_clique_bound(&graph(lit)?, *r, *alpha)?;
            report(
                "exhaustive",
                json!({ "lhs": big(c.lhs), "rhs": c.rhs, "holds": c.holds }),
            )
        }
        Command::Split {
            graph: lit,
            family,
            n,
            gamma,
            eta,
        } => {
            let g = match (lit, family) {
                (Some(lit), None) => graph(lit)?,
                (None, Some(f)) => generate(&family_spec(f, n.expect("clap requires --n"), seed)?)?,
                _ => {
                    return Err(Error::InvalidParams(
                        "give exactly one of --graph and --family".into(),
                    ))
                }
            };
            let search = find_split(&g, *gamma, *eta, split_budget)?;
            report(tag(search.exhaustive), split_body(&g, &search))
        }
        Command::CheckSplit {
            graph: lit,
            separator,
            gamma,
            eta,
        } => {
            let g = graph(lit)?;
            let sep = parse_vertices(separator)?;
            if let Some(&v) = sep.iter().find(|&&v| v >= g.order()) {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    order: g.order(),
                });
            }
            let cert = SplitCertificate::from_separator(&g, *gamma, *eta, sep);
            let valid = check_split(&g, &cert);
            report(
                "exhaustive",
                json!({
                    "valid": valid,
                    "separator": cert.separator,
                    "component_sizes": cert.component_sizes(),
                    "largest_component": cert.largest_component(),
                    "gamma": gamma,
                    "eta": eta,
                }),
            )
        }
        Command::TreeSplit { graph: lit, k } => {
            let t = tree_split(&graph(lit)?, *k)?;
            // size_bound outgrows 64 bits for large k, so no derived Serialize here
            report(
                "exhaustive",
                json!({
                    "k": t.k,
                    "separator": t.separator,
                    "largest_component": t.largest_component,
                    "size_bound": big(t.size_bound),
                    "component_bound": t.component_bound,
                    "within_bounds": t.within_bounds(),
                }),
            )
        }
        Command::Trim {
            graph: lit,
            s0,
            q,
            eta,
        } => {
            let g = graph(lit)?;
            let s0 = parse_vertices(s0)?;
            let t = trim(&g, &s0, *q, *eta)?;
            let mut body = value(&t);
            body["largest_component"] = g.largest_component_without(&t.set).into();
            report("exhaustive", body)
        }
        Command::Transfer {
            kind,
            graph: lit,
            graph2,
            gamma,
            eta,
            k,
            sizes,
            l,
        } => {
            let g = graph(lit)?;
            let cert = require_split(&g, *gamma, *eta, split_budget, "input")?;
            let t = match kind {
                TransferKind::Power => transfer_power(&g, &cert, *k, split_budget)?,
                TransferKind::Blowup => transfer_blowup(&g, &cert, sizes, split_budget)?,
                TransferKind::Join => transfer_join(&g, &cert, *l, split_budget)?,
                TransferKind::Product => {
                    let lit2 = graph2
                        .as_deref()
                        .ok_or_else(|| Error::InvalidParams("product needs --graph2".into()))?;
                    let g2 = graph(lit2)?;
                    let cert2 = require_split(&g2, *gamma, *eta, split_budget, "second")?;
                    transfer_product(&g, &cert, &g2, &cert2, split_budget)?
                }
            };
            let certificate = match (&t.certificate, t.method) {
                (Some(c), Some(m)) => value(&SplitReport::new(&t.graph, c, m, false)),
                _ => Value::Null,
            };
            report(
                "heuristic",
                json!({
                    "input": value(&SplitReport::new(&g, &cert, rgood::split::SplitMethod::Given, false)),
                    "order": t.graph.order(),
                    "constructed": value(&SplitReport::new(&t.graph, &t.constructed, rgood::split::SplitMethod::Transfer, false)),
                    "constructed_valid": t.constructed_valid,
                    "certificate": certificate,
                    "diagnostic": t.diagnostic,
                }),
            )
        }
        Command::Probe {
            family,
            gamma,
            eta,
            n_values,
        } => {
            let template = family_spec(family, n_values.first().copied().unwrap_or(1), seed)?;
            let rows = probe_crumbling(&template, *gamma, *eta, n_values, split_budget)?;
            let certain = rows.iter().all(|r| r.found || r.exhaustive);
            report(
                tag(certain),
                json!({ "family": family, "gamma": gamma, "eta": eta, "rows": value(&rows) }),
            )
        }
        Command::Embed {
            pattern,
            host,
            splittable,
            q,
            gamma,
            eta,
            core,
            zones,
            margin,
            eps_zone,
        } => {
            let h = graph(pattern)?;
            let g = graph(host)?;
            if !splittable {
                let e = greedy_embed_degenerate(&h, &g);
                let verified = e.as_ref().is_some_and(verify_embedding);
                return report(
                    "heuristic",
                    json!({ "found": e.is_some(), "verified": verified, "embedding": value(&e) }),
                );
            }
            let q = q.unwrap_or_else(|| degeneracy(&h));
            let cert = require_split(&h, *gamma, *eta, split_budget, "pattern")?;
            let core = match core {
                Some(c) => *c,
                None => trim(&h, &cert.separator, q, cert.eta)?.set.len(),
            };
            let zones = (*zones).max(1);
            let largest_zone = g.order().saturating_sub(core).div_ceil(zones);
            let margin =
                margin.unwrap_or_else(|| ZonePlan::default_margin(q, largest_zone, *eps_zone));
            let plan = ZonePlan::consecutive(g.order(), core, zones, margin)?;
            let out = embed_splittable(&h, q, &cert, &g, &plan)?;
            let verified = out.as_ref().is_some_and(|o| verify_embedding(&o.embedding));
            report(
                "heuristic",
                json!({
                    "found": out.is_some(),
                    "verified": verified,
                    "q": q,
                    "separator": cert.separator,
                    "plan": value(&plan),
                    "result": value(&out),
                }),
            )
        }
        Command::Drc {
            graph: lit,
            u1,
            u2,
            k,
            d,
            lambda,
            i,
            samples,
        } => {
            let g = graph(lit)?;
            let opts = DrcOptions {
                i_override: *i,
                budget: budget.unwrap_or(DEFAULT_DRC_BUDGET),
                samples: *samples,
                seed,
            };
            let r = dependent_random_choice(
                &g,
                &parse_vertices(u1)?,
                &parse_vertices(u2)?,
                *k,
                *d,
                *lambda,
                &opts,
            )?;
            report(
                if r.exhaustive {
                    "exhaustive"
                } else {
                    "sampled"
                },
                value(&r),
            )
        }
        Command::DenseCore { graph: lit, tau } => {
            let c = dense_core(&graph(lit)?, *tau)?;
            let mut body = value(&c);
            body["size"] = c.vertices.len().into();
            body["min_degree"] = c.subgraph.min_degree().into();
            report("exhaustive", body)
        }
        Command::Arrow { n, red, blue } => {
            let (h1, h2) = (graph(red)?, graph(blue)?);
            let a = check_arrowing(*n, &h1, &h2)?;
            let verified = a.witness.as_ref().map(|w| verify_witness(w, &h1, &h2));
            let mut body = value(&a);
            body["witness_verified"] = value(&verified);
            report("exhaustive", body)
        }
        Command::Ramsey { h1, h2, max_n } => {
            let (h1, h2) = (graph(h1)?, graph(h2)?);
            let r = ramsey_number(&h1, &h2, *max_n)?;
            let verified = r
                .lower_witness
                .as_ref()
                .map(|w| verify_witness(w, &h1, &h2));
            let mut body = value(&r);
            body["witness_verified"] = value(&verified);
            report("exhaustive", body)
        }
        Command::Pentagon {
            n,
            check_triangle_free,
            q,
            samples,
        } => {
            let c = pentagon_coloring(*n)?;
            let mut body = Map::new();
            body.insert("n".into(), (*n).into());
            body.insert("order".into(), c.order().into());
            body.insert("parts".into(), value(&pentagon_parts(*n)));
            body.insert("coloring".into(), value(&c));
            if *check_triangle_free {
                body.insert("k3_red".into(), (count_cliques(&c.red, 3) as u64).into());
            }
            let mut method = "exhaustive";
            if let Some(s) = samples {
                body.insert("q".into(), value(&pentagon_q_sampled(*n, *s, seed)?));
                method = "sampled";
            } else if *q {
                body.insert("q".into(), value(&pentagon_q(*n)?));
            }
            report(method, Value::Object(body))
        }
        Command::Refute { graph: lit } => {
            report("exhaustive", value(&refute_3_goodness(&graph(lit)?)?))
        }
        Command::Sigma2 { graph: lit } => {
            let g = graph(lit)?;
            let solver = if g.order() <= DENSE_EIGEN_LIMIT {
                "dense"
            } else {
                "lanczos"
            };
            report(
                "exhaustive",
                json!({ "order": g.order(), "sigma2": second_singular_value(&g), "solver": solver }),
            )
        }
        Command::Mixing {
            graph: lit,
            samples,
        } => {
            let g = graph(lit)?;
            let mode = match samples {
                Some(s) => MixingMode::Sampled { samples: *s, seed },
                None => MixingMode::Exhaustive,
            };
            let m = expander_mixing_check(&g, mode)?;
            let mut body = value(&m);
            body["holds"] = (m.max_violation <= 1e-9).into();
            report(
                if m.exhaustive {
                    "exhaustive"
                } else {
                    "sampled"
                },
                body,
            )
        }
        Command::Hole { graph: lit } => {
            let h = bipartite_hole_max(&graph(lit)?);
            report(tag(h.exhaustive), value(&h))
        }
        Command::Replay { .. } => Err(Error::Precondition(
            "replay files cannot nest replay commands".into(),
        )),
    }
}

/// Whether every key of `expect` appears in `actual` with a matching value;
/// arrays must agree elementwise and numbers within [`REPLAY_TOLERANCE`].
/// Returns the JSON path of the first disagreement.
fn first_mismatch(expect: &Value, actual: &Value, path: &str) -> Option<String> {
    match (expect, actual) {
        (Value::Object(e), Value::Object(a)) => e.iter().find_map(|(k, ev)| match a.get(k) {
            Some(av) => first_mismatch(ev, av, &format!("{path}.{k}")),
            None => Some(format!("{path}.{k}")),
        }),
        (Value::Array(e), Value::Array(a)) if e.len() == a.len() => e
            .iter()
            .zip(a)
            .enumerate()
            .find_map(|(i, (ev, av))| first_mismatch(ev, av, &format!("{path}[{i}]"))),
        (Value::Number(e), Value::Number(a)) => {
            let (e, a) = (
                e.as_f64().unwrap_or(f64::NAN),
                a.as_f64().unwrap_or(f64::NAN),
            );
            ((e - a).abs() > REPLAY_TOLERANCE).then(|| path.to_string())
        }
        _ => (expect != actual).then(|| path.to_string()),
    }
}

#[derive(serde::Deserialize)]
struct Case {
    args: Vec<String>,
    expect: Value,
}

/// Runs every `{args, expect}` case of a JSON array. A case whose command
/// fails is compared as `{"error": kind}`. Each case uses its own `--seed`;
/// the environment override does not apply inside a replay.
pub fn replay(file: &Path, _seed: u64) -> Result<(Value, bool)> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Error::InvalidParams(format!("cannot read {}: {e}", file.display())))?;
    let cases: Vec<Case> = serde_json::from_str(&text).map_err(|e| Error::Parse {
        offset: 0,
        reason: format!("replay file: {e}"),
    })?;
    let mut failures = Vec::new();
    for (index, case) in cases.iter().enumerate() {
        let argv = std::iter::once("rgood".to_string()).chain(case.args.iter().cloned());
        let cli = Cli::try_parse_from(argv)
            .map_err(|e| Error::InvalidParams(format!("case {index}: {}", e.kind())))?;
        let actual = match run(&cli.command, cli.seed, cli.budget) {
            Ok(out) => envelope(&cli, cli.seed, out),
            Err(e) => json!({ "error": crate::error_kind(&e), "message": e.to_string() }),
        };
        if let Some(path) = first_mismatch(&case.expect, &actual, "$") {
            failures.push(json!({ "index": index, "args": case.args, "path": path }));
        }
    }
    let passed = cases.len() - failures.len();
    let ok = failures.is_empty();
    Ok((
        json!({ "cases": cases.len(), "passed": passed, "failures": failures }),
        ok,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mismatch_paths() {
        let actual = json!({ "r": 7, "steps": [{ "n": 6 }, { "n": 7 }], "x": 0.5 });
        assert_eq!(first_mismatch(&json!({ "r": 7 }), &actual, "$"), None);
        assert_eq!(
            first_mismatch(&json!({ "x": 0.5 + 1e-12 }), &actual, "$"),
            None
        );
        assert_eq!(
            first_mismatch(&json!({ "r": 6 }), &actual, "$"),
            Some("$.r".into())
        );
        assert_eq!(
            first_mismatch(&json!({ "steps": [{}, { "n": 8 }] }), &actual, "$"),
            Some("$.steps[1].n".into())
        );
        assert_eq!(
            first_mismatch(&json!({ "steps": [{}] }), &actual, "$"),
            Some("$.steps".into())
        );
        assert_eq!(
            first_mismatch(&json!({ "y": null }), &actual, "$"),
            Some("$.y".into())
        );
    }

    #[test]
    fn families() {
        assert_eq!(
            generate(&family_spec("grid", 4, 0).unwrap())
                .unwrap()
                .order(),
            16
        );
        assert!(generate(&family_spec("tree", 30, 3).unwrap())
            .unwrap()
            .is_tree());
        assert!(family_spec("hypercube", 3, 0).is_err());
    }
}
