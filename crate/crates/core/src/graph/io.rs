//! Text formats: the `p mcg` edge list (multigraphs) and graph6 (simple
//! graphs only).
//!
//! Edge list:
//!
//! ```text
//! # optional comments
//! p mcg <n> <m>
//! e <u> <v>      (exactly m lines, 1-based ids)
//! ```

use std::fmt::Write as _;

use super::{Multigraph, Vertex};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Multigraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tok = line.split_whitespace();
        match (tok.next(), header) {
            (Some("p"), None) => {
                if tok.next() != Some("mcg") {
                    return Err(parse_err(lineno, "expected header `p mcg <n> <m>`"));
                }
                let n = parse_num(tok.next(), lineno, "vertex count")?;
                let m = parse_num(tok.next(), lineno, "edge count")?;
                if tok.next().is_some() {
                    return Err(parse_err(lineno, "trailing tokens after header"));
                }
                if n == 0 {
                    return Err(parse_err(lineno, "vertex count must be positive"));
                }
                header = Some((n, m));
            }
            (Some("p"), Some(_)) => return Err(parse_err(lineno, "duplicate header")),
            (Some("e"), Some((n, m))) => {
                let u = parse_num(tok.next(), lineno, "endpoint")?;
                let v = parse_num(tok.next(), lineno, "endpoint")?;
                if tok.next().is_some() {
                    return Err(parse_err(lineno, "trailing tokens after edge"));
                }
                if edges.len() == m {
                    return Err(parse_err(lineno, format!("more than {m} edge lines")));
                }
                for w in [u, v] {
                    if !(1..=n).contains(&w) {
                        return Err(Error::VertexOutOfRange {
                            vertex: w,
                            order: n,
                        });
                    }
                }
                if u == v {
                    return Err(Error::LoopEdge(u));
                }
                edges.push((u, v));
            }
            (Some("e"), None) => return Err(parse_err(lineno, "edge line before header")),
            _ => return Err(parse_err(lineno, format!("unrecognised line `{line}`"))),
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(last_line.max(1), "missing `p mcg` header"))?;
    if edges.len() != m {
        return Err(parse_err(
            last_line,
            format!("header promises {m} edges, found {}", edges.len()),
        ));
    }
    Multigraph::new(n, edges)
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("invalid {what}")))
}

pub fn to_edge_list(g: &Multigraph) -> String {
    let mut out = format!("p mcg {} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

/// Decodes one graph6 string. Edges come out sorted lexicographically as
/// `(u, v)` with `u < v`.
pub fn parse_graph6(line: &str) -> Result<Multigraph> {
    let line = line.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty string".into()));
    }
    if let Some(b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("invalid byte {b:#04x}")));
    }
    let six = |b: u8| (b - 63) as usize;
    let (n, rest) = if bytes[0] != 126 {
        (six(bytes[0]), &bytes[1..])
    } else if bytes.len() >= 4 && bytes[1] != 126 {
        let n = bytes[1..4].iter().fold(0, |acc, &b| (acc << 6) | six(b));
        (n, &bytes[4..])
    } else if bytes.len() >= 8 {
        let n = bytes[2..8].iter().fold(0, |acc, &b| (acc << 6) | six(b));
        (n, &bytes[8..])
    } else {
        return Err(Error::Graph6("truncated size field".into()));
    };
    if n == 0 {
        return Err(Error::Graph6("graph has no vertices".into()));
    }
    let bits = n * (n - 1) / 2;
    let need = bits.div_ceil(6);
    if rest.len() != need {
        return Err(Error::Graph6(format!(
            "expected {need} adjacency bytes for n={n}, found {}",
            rest.len()
        )));
    }
    let bit = |k: usize| (six(rest[k / 6]) >> (5 - k % 6)) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i + 1, j + 1));
            }
            k += 1;
        }
    }
    edges.sort_unstable();
    Multigraph::new(n, edges)
}

/// Encodes a simple graph as graph6. Multigraphs have no graph6 form.
pub fn to_graph6(g: &Multigraph) -> Result<String> {
    if g.has_parallel_edges() {
        return Err(Error::Graph6("graph has parallel edges".into()));
    }
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
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
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 2..=n {
        for i in 1..j {
            acc = (acc << 1) | g.are_adjacent(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Reads one edge-list graph or any number of graph6 lines. The format is
/// chosen by the first meaningful line: `p `/`#` means edge list.
pub fn parse_graphs(text: &str) -> Result<Vec<Multigraph>> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with('#') || first.starts_with("p ") || first == "p" {
        return parse_edge_list(text).map(|g| vec![g]);
    }
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(parse_graph6)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::named;
    use proptest::prelude::*;

    #[test]
    fn k4_edge_list() {
        let text = "# K4\np mcg 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 6));
        assert_eq!(g, named::complete(4));
    }

    #[test]
    fn loop_rejected() {
        assert_eq!(
            parse_edge_list("p mcg 2 1\ne 1 1\n"),
            Err(Error::LoopEdge(1))
        );
    }

    #[test]
    fn c6_edge_list_degrees() {
        let text = "p mcg 6 6\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 1\n";
        let g = parse_edge_list(text).unwrap();
        assert!(g.vertices().all(|v| g.degree(v) == 2));
        assert_eq!(g, named::cycle(6));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(
            parse_edge_list("p foo 2 1\ne 1 2"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_edge_list("p mcg 2\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_edge_list("p mcg 2 2\ne 1 2\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_edge_list("e 1 2\np mcg 2 1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_edge_list("p mcg 2 1\ne 1 3\n"),
            Err(Error::VertexOutOfRange {
                vertex: 3,
                order: 2
            })
        ));
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn graph6_known_strings() {
        // K4 is "C~", the Petersen graph is "IheA@GUAo"
        assert_eq!(parse_graph6("C~").unwrap(), named::complete(4));
        let p = parse_graph6("IheA@GUAo").unwrap();
        assert_eq!(p.vertex_count(), 10);
        assert_eq!(p.edge_count(), 15);
        assert!(p.vertices().all(|v| p.degree(v) == 3));
        assert_eq!(to_graph6(&named::complete(4)).unwrap(), "C~");
    }

    #[test]
    fn graph6_rejects_multigraph_and_garbage() {
        let g = Multigraph::new(2, [(1, 2), (1, 2)]).unwrap();
        assert!(to_graph6(&g).is_err());
        assert!(parse_graph6("C ").is_err());
        assert!(parse_graph6("C~~").is_err());
    }

    #[test]
    fn autodetect() {
        let gs = parse_graphs("C~\nA_\n").unwrap();
        assert_eq!(gs.len(), 2);
        let gs = parse_graphs("p mcg 2 1\ne 1 2\n").unwrap();
        assert_eq!(gs.len(), 1);
    }

    fn arb_multigraph() -> impl Strategy<Value = Multigraph> {
        (2usize..9).prop_flat_map(|n| {
            prop::collection::vec((1..=n, 1..=n), 0..20).prop_map(move |pairs| {
                let edges: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
                Multigraph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn edge_list_round_trip(g in arb_multigraph()) {
            prop_assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
        }

        #[test]
        fn graph6_round_trip_on_support(g in arb_multigraph()) {
            let s = g.simple_support();
            let back = parse_graph6(&to_graph6(&s).unwrap()).unwrap();
            prop_assert_eq!(back.vertex_count(), s.vertex_count());
            for u in s.vertices() {
                for v in s.vertices() {
                    prop_assert_eq!(back.are_adjacent(u, v), s.are_adjacent(u, v));
                }
            }
        }
    }
}
