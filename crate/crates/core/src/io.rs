//! Text formats: a plain edge list with an `n m` header, and graph6.
//!
//! graph6 reference: <https://users.cecs.anu.edu.au/~bdm/data/formats.txt>.
//! Only the single-byte size form is supported (n <= 62).

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order representable with the one-byte graph6 header.
pub const GRAPH6_MAX_N: usize = 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Graph6,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" | "edgelist" => Ok(Format::EdgeList),
            "graph6" | "g6" => Ok(Format::Graph6),
            other => Err(Error::parse(0, format!("unknown graph format `{other}`"))),
        }
    }
}

pub fn parse_graph(input: &str, format: Format) -> Result<Graph> {
    match format {
        Format::EdgeList => parse_edge_list(input),
        Format::Graph6 => parse_graph6(input),
    }
}

pub fn serialize_graph(g: &Graph, format: Format) -> Result<String> {
    match format {
        Format::EdgeList => Ok(to_edge_list(g)),
        Format::Graph6 => to_graph6(g).map(|mut s| {
            s.push('\n');
            s
        }),
    }
}

/// Parses `n m` followed by `m` lines `u v`. Blank lines and lines starting
/// with `#` are ignored.
pub fn parse_edge_list(input: &str) -> Result<Graph> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or_else(|| Error::parse(0, "missing `n m` header"))?;
    let (n, m) = parse_pair(header_line, header)?;

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut count = 0usize;
    for (line, text) in lines {
        let (u, v) = parse_pair(line, text)?;
        if u >= n || v >= n {
            return Err(Error::parse(line, format!("vertex id {} >= n = {n}", u.max(v))));
        }
        if u == v {
            return Err(Error::parse(line, format!("self-loop at vertex {u}")));
        }
        if adj[u].contains(&v) {
            return Err(Error::parse(line, format!("duplicate edge {u} {v}")));
        }
        adj[u].push(v);
        adj[v].push(u);
        count += 1;
    }
    if count != m {
        return Err(Error::parse(
            0,
            format!("header declares {m} edges but {count} were given"),
        ));
    }
    Ok(Graph::from_edges_lossy(
        n,
        adj.iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v))),
    ))
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it
            .next()
            .ok_or_else(|| Error::parse(line, format!("expected two integers, missing {what}")))?;
        tok.parse::<usize>()
            .map_err(|_| Error::parse(line, format!("`{tok}` is not a non-negative integer")))
    };
    let a = next("first")?;
    let b = next("second")?;
    if it.next().is_some() {
        return Err(Error::parse(line, "expected exactly two integers"));
    }
    Ok((a, b))
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Decodes one graph6 string (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(input: &str) -> Result<Graph> {
    let text = input.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(Error::parse(1, "empty graph6 string"));
    };
    if let Some(pos) = bytes.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(Error::parse(1, format!("invalid graph6 byte at offset {pos}")));
    }
    if first == 126 {
        return Err(Error::parse(
            1,
            format!("graph6 orders above {GRAPH6_MAX_N} are not supported; use the edge-list format"),
        ));
    }
    let n = (first - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let body = &bytes[1..];
    if body.len() != nbits.div_ceil(6) {
        return Err(Error::parse(
            1,
            format!(
                "graph6 body has {} bytes, expected {} for n = {n}",
                body.len(),
                nbits.div_ceil(6)
            ),
        ));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges)
}

pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_MAX_N {
        return Err(Error::Domain(format!(
            "graph6 output is limited to n <= {GRAPH6_MAX_N} (got {n})"
        )));
    }
    let mut out = String::with_capacity(1 + (n * n).div_ceil(12));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, path};
    use proptest::prelude::*;

    #[test]
    fn edge_list_path() {
        let g = parse_edge_list("3 2\n0 1\n1 2").unwrap();
        assert_eq!(g, path(3));
    }

    #[test]
    fn edge_list_errors_name_the_line() {
        assert_eq!(
            parse_edge_list("2 1\n0 0"),
            Err(Error::parse(2, "self-loop at vertex 0"))
        );
        assert!(matches!(
            parse_edge_list("3 2\n0 1\n1 0"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(parse_edge_list("3 1\n0 3"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("3 1\n0 x"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("3 2\n0 1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
    }

    // Expected strings produced by networkx.to_graph6_bytes.
    #[test]
    fn graph6_reference_strings() {
        assert_eq!(parse_graph6("C~").unwrap(), complete(4));
        assert_eq!(parse_graph6(">>graph6<<C~\n").unwrap(), complete(4));
        assert_eq!(parse_graph6("Ch").unwrap(), path(4));
        let petersen = parse_graph6("IheA@GUAo").unwrap();
        assert_eq!(petersen, crate::generators::petersen());
        let c5 = parse_graph6("Dhc").unwrap();
        assert_eq!(c5, crate::generators::cycle(5));
        assert_eq!(parse_graph6("@").unwrap().n(), 1);
        assert_eq!(parse_graph6("?").unwrap().n(), 0);

        assert_eq!(to_graph6(&complete(4)).unwrap(), "C~");
        assert_eq!(to_graph6(&crate::generators::petersen()).unwrap(), "IheA@GUAo");
        assert_eq!(to_graph6(&crate::generators::star(5)).unwrap(), "Esa?");
    }

    #[test]
    fn graph6_rejects_bad_input() {
        assert!(parse_graph6("C~~").is_err());
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("~?@~").is_err());
        assert!(to_graph6(&Graph::empty(63)).is_err());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn round_trip_both_formats(g in arb_graph(20)) {
            for f in [Format::EdgeList, Format::Graph6] {
                let text = serialize_graph(&g, f).unwrap();
                prop_assert_eq!(parse_graph(&text, f).unwrap(), g.clone());
            }
        }
    }
}
