//! graph6, plain edge lists and DOT.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

const HEADER: &[u8] = b">>graph6<<";

fn push_order(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Encodes `g` in graph6, without header or trailing newline.
pub fn encode_graph6(g: &Graph) -> Vec<u8> {
    let n = g.order();
    let mut out = Vec::new();
    push_order(&mut out, n);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    out
}

fn parse_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        reason: reason.into(),
    }
}

/// Decodes one graph6 record. An optional `>>graph6<<` header and trailing
/// line terminator are accepted; everything else must be exact, including
/// zero padding bits.
pub fn decode_graph6(bytes: &[u8]) -> Result<Graph> {
    let mut end = bytes.len();
    while end > 0 && matches!(bytes[end - 1], b'\n' | b'\r') {
        end -= 1;
    }
    let start = if bytes.starts_with(HEADER) {
        HEADER.len()
    } else {
        0
    };
    let data = &bytes[start..end];
    let at = |i: usize| start + i;

    for (i, &b) in data.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(
                at(i),
                format!("byte 0x{b:02x} outside the graph6 range"),
            ));
        }
    }
    let take = |from: usize, count: usize| -> Result<usize> {
        if data.len() < from + count {
            return Err(parse_err(at(data.len()), "truncated order field"));
        }
        Ok(data[from..from + count]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize))
    };
    let (n, mut pos) = match data.first() {
        None => return Err(parse_err(at(0), "empty input")),
        Some(&126) if data.get(1) == Some(&126) => (take(2, 6)?, 8),
        Some(&126) => (take(1, 3)?, 4),
        Some(&b) => ((b - 63) as usize, 1),
    };

    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if data.len() - pos != need {
        return Err(parse_err(
            at(pos),
            format!(
                "expected {need} adjacency bytes for order {n}, found {}",
                data.len() - pos
            ),
        ));
    }
    let mut edges = Vec::new();
    let mut bit = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = data[pos + bit / 6] - 63;
            if byte & (1 << (5 - bit % 6)) != 0 {
                edges.push((i, j));
            }
            bit += 1;
            if bit == nbits {
                break 'outer;
            }
        }
    }
    if nbits % 6 != 0 {
        let last = data[pos + need - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(parse_err(at(pos + need - 1), "nonzero padding bits"));
        }
    }
    pos += need;
    debug_assert_eq!(pos, data.len());
    Ok(Graph::from_valid_edges(n, edges))
}

/// `# n=<order>` header, then one `u v` line per edge.
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("# n={}\n", g.order());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// Parses `u v` lines (0-indexed). Blank lines and `#` comments are
/// skipped; a `# n=<order>` comment fixes the order, which otherwise is one
/// more than the largest endpoint.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut order = None;
    let mut edges = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let trimmed = line.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(n) = comment.trim().strip_prefix("n=") {
                order = Some(
                    n.trim()
                        .parse::<usize>()
                        .map_err(|e| parse_err(offset, e.to_string()))?,
                );
            }
        } else if !trimmed.is_empty() {
            let mut it = trimmed.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
                _ => {
                    return Err(parse_err(
                        offset,
                        format!("expected `u v`, got {trimmed:?}"),
                    ))
                }
            }
        }
        offset += line.len();
    }
    let n = order.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
    Graph::from_edges(n, edges)
}

pub fn to_dot(g: &Graph) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.order() {
        let _ = writeln!(s, "  {v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  {u} -- {v};");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::petersen;
    use rand::{Rng, SeedableRng};

    #[test]
    fn known_encodings() {
        assert_eq!(encode_graph6(&Graph::complete(1)), b"@");
        assert_eq!(encode_graph6(&Graph::empty(0)), b"?");
        // Published examples: K4 is "C~", the Petersen graph is "IheA@GUAo".
        assert_eq!(encode_graph6(&Graph::complete(4)), b"C~");
        assert_eq!(encode_graph6(&petersen()), b"IheA@GUAo");
    }

    #[test]
    fn large_order_header() {
        let g = Graph::path(100);
        let enc = encode_graph6(&g);
        assert_eq!(&enc[..4], &[126, 63, 64, 99]);
        assert_eq!(decode_graph6(&enc).unwrap(), g);
    }

    #[test]
    fn decode_accepts_header_and_newline() {
        assert_eq!(
            decode_graph6(b">>graph6<<C~\n").unwrap(),
            Graph::complete(4)
        );
    }

    #[test]
    fn decode_rejects_garbage() {
        match decode_graph6(b"garbage\xFF") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 7),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            decode_graph6(b"D"),
            Err(Error::Parse { offset: 1, .. })
        ));
        assert!(matches!(decode_graph6(b""), Err(Error::Parse { .. })));
        // P3 is "Bg"; "Bh" sets a padding bit.
        assert_eq!(decode_graph6(b"Bg").unwrap(), Graph::path(3));
        assert!(decode_graph6(b"Bh").is_err());
    }

    #[test]
    fn roundtrip_random_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let n = rng.gen_range(0..=30);
            let p: f64 = rng.gen();
            let g = crate::graph::generate::random_gnp(n, p, &mut rng);
            assert_eq!(decode_graph6(&encode_graph6(&g)).unwrap(), g);
        }
    }

    #[test]
    fn edge_list_roundtrip() {
        let g = Graph::from_edges(6, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
        assert_eq!(parse_edge_list("0 1\n1 2\n").unwrap(), Graph::path(3));
        assert!(parse_edge_list("0 x\n").is_err());
        assert!(to_dot(&Graph::path(2)).contains("0 -- 1;"));
    }
}
