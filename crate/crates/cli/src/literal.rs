//! Graph literals accepted wherever a command takes a graph.
//!
//! | literal | graph |
//! |---------|-------|
//! | `K5` | complete graph |
//! | `K2,3,4` | complete multipartite graph with the given parts |
//! | `P5`, `C5`, `E5` | path, cycle, edgeless graph |
//! | `S4` | star with 4 leaves (center 0) |
//! | `W5` | wheel: hub 0 joined to a 5-cycle |
//! | `B2_3` | book: `K_2` joined to 3 independent vertices |
//! | `Grid6_2` | `P_6 × P_6` |
//! | `SK5` | subdivided `K_5` |
//! | `Petersen` | Petersen graph |
//! | `T50` | random tree on 50 vertices (uses the run seed) |
//! | `RR20_3` | random 3-regular graph on 20 vertices (run seed) |
//! | `G48_0.9` | `G(48, 0.9)` (run seed) |
//! | `g6:Bw` | graph6 string |
//! | `@path` | graph6 file if the name ends in `.g6`, edge list otherwise |

use rgood::graph::{decode_graph6, generate, parse_edge_list, petersen, GraphKind, GraphSpec};
use rgood::{Error, Graph, Result};

fn bad(offset: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        reason: reason.into(),
    }
}

fn ints(text: &str, sep: char, offset: usize) -> Result<Vec<usize>> {
    text.split(sep)
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| bad(offset, format!("expected an integer, found {t:?}")))
        })
        .collect()
}

pub fn parse_graph(lit: &str, seed: u64) -> Result<Graph> {
    if let Some(g6) = lit.strip_prefix("g6:") {
        return decode_graph6(g6.as_bytes());
    }
    if let Some(path) = lit.strip_prefix('@') {
        let data = std::fs::read(path).map_err(|e| bad(1, format!("cannot read {path}: {e}")))?;
        return if path.ends_with(".g6") {
            decode_graph6(&data)
        } else {
            parse_edge_list(&String::from_utf8_lossy(&data))
        };
    }
    if lit == "Petersen" {
        return Ok(petersen());
    }
    let split = lit
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| bad(0, format!("unknown graph literal {lit:?}")))?;
    let (name, rest) = lit.split_at(split);
    let spec = |kind, params: Vec<usize>| GraphSpec::new(kind, params).with_seed(seed);
    let pair = |sep| -> Result<Vec<usize>> {
        let v = ints(rest, sep, split)?;
        if v.len() != 2 {
            return Err(bad(
                split,
                format!("{name} takes two numbers separated by {sep:?}"),
            ));
        }
        Ok(v)
    };
    let one = || -> Result<usize> {
        rest.parse::<usize>()
            .map_err(|_| bad(split, format!("{name} takes one number, found {rest:?}")))
    };
    let g = match name {
        "K" if rest.contains(',') => generate(&spec(
            GraphKind::CompleteMultipartite,
            ints(rest, ',', split)?,
        ))?,
        "K" => Graph::complete(one()?),
        "P" => Graph::path(one()?),
        "C" => generate(&spec(GraphKind::Cycle, vec![one()?]))?,
        "E" => Graph::empty(one()?),
        "S" => Graph::star(one()?),
        "W" => generate(&spec(GraphKind::Wheel, vec![one()?]))?,
        "B" => generate(&spec(GraphKind::Book, pair('_')?))?,
        "Grid" => generate(&spec(GraphKind::Grid, pair('_')?))?,
        "SK" => generate(&spec(GraphKind::SubdividedComplete, vec![one()?]))?,
        "T" => generate(&spec(GraphKind::RandomTree, vec![one()?]))?,
        "RR" => generate(&spec(GraphKind::RandomRegular, pair('_')?))?,
        "G" => {
            let (n, p) = rest
                .split_once('_')
                .ok_or_else(|| bad(split, "G takes <n>_<p>"))?;
            let at = split + n.len() + 1;
            let n: usize = n
                .parse()
                .map_err(|_| bad(split, format!("bad order {n:?}")))?;
            let p: f64 = p
                .parse()
                .map_err(|_| bad(at, format!("bad probability {p:?}")))?;
            generate(&spec(GraphKind::RandomGnp, vec![n]).with_real(p))?
        }
        _ => return Err(bad(0, format!("unknown graph family {name:?}"))),
    };
    Ok(g)
}

/// Comma-separated vertex list; the empty string is the empty set.
pub fn parse_vertices(text: &str) -> Result<Vec<usize>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    ints(text, ',', 0)
}
