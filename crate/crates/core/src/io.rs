//! Edge-list text format and graph6.
//!
//! Edge list: a header line `n m` followed by `m` lines `u v`, 0-indexed.
//! Blank lines and lines starting with `#` are ignored.

use crate::graph::{Graph, GraphError, Vertex};

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines
        .next()
        .ok_or_else(|| GraphError::Parse("missing header line".into()))?;
    let (n, m) = two_numbers(header).map_err(|e| GraphError::Parse(format!("header: {e}")))?;
    let mut edges = Vec::with_capacity(m);
    for (no, line) in lines {
        let pair =
            two_numbers(line).map_err(|e| GraphError::Parse(format!("line {}: {e}", no + 1)))?;
        edges.push(pair);
    }
    if edges.len() != m {
        return Err(GraphError::Parse(format!(
            "header declares {m} edges, found {}",
            edges.len()
        )));
    }
    Graph::new(n, &edges)
}

fn two_numbers(line: &str) -> Result<(usize, usize), String> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize, String> {
        let tok = it
            .next()
            .ok_or_else(|| format!("expected two integers in {line:?}"))?;
        tok.parse()
            .map_err(|_| format!("not a non-negative integer: {tok:?}"))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(format!("trailing tokens in {line:?}"));
    }
    Ok((a, b))
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Decodes one graph6 string (an optional `>>graph6<<` header is accepted).
/// Edges come out in column-major upper-triangle order, the order in which
/// the format stores them.
pub fn parse_graph6(s: &str) -> Result<Graph, GraphError> {
    let s = s.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(GraphError::Parse("empty graph6 string".into()));
    }
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(GraphError::Parse(format!(
                "byte {b} outside the graph6 range"
            )));
        }
    }
    let (n, body) = if bytes[0] != 126 {
        (usize::from(bytes[0] - 63), &bytes[1..])
    } else if bytes.len() >= 4 && bytes[1] != 126 {
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63));
        (n, &bytes[4..])
    } else if bytes.len() >= 8 {
        let n = bytes[2..8]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63));
        (n, &bytes[8..])
    } else {
        return Err(GraphError::Parse("truncated graph6 size field".into()));
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if body.len() != need {
        return Err(GraphError::Parse(format!(
            "graph6 body has {} bytes, expected {need} for n = {n}",
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    // Padding bits must be zero.
    for p in pairs..need * 6 {
        if bit(p) {
            return Err(GraphError::Parse("non-zero graph6 padding".into()));
        }
    }
    Graph::new(n, &edges)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
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
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Reads every non-empty line of a graph6 file.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>, GraphError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| {
            parse_graph6(l.trim())
                .map_err(|e| GraphError::Parse(format!("graph6 line {}: {e}", i + 1)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path};

    #[test]
    fn edge_list_roundtrip() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let text = format_edge_list(&g);
        assert_eq!(text, "4 4\n0 1\n1 2\n2 3\n0 3\n");
        assert_eq!(parse_edge_list(&text).unwrap(), g);
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("3 1\n0 x\n").is_err());
        assert!(parse_edge_list("").is_err());
        assert_eq!(parse_edge_list("# c\n2 1\n\n0 1\n").unwrap().m(), 1);
    }

    #[test]
    fn graph6_known_strings() {
        // "A_" is K2, "Bw" is K3, "BW" is the path 0-2-1, "C~" is K4.
        assert_eq!(parse_graph6("A_").unwrap().edges(), &[(0, 1)]);
        assert_eq!(parse_graph6("Bw").unwrap().m(), 3);
        assert_eq!(parse_graph6("BW").unwrap().edges(), &[(0, 2), (1, 2)]);
        assert_eq!(parse_graph6("C~").unwrap().m(), 6);
        assert_eq!(to_graph6(&complete(4).unwrap()), "C~");
        assert_eq!(to_graph6(&path(3).unwrap()), "Bg");
        assert_eq!(to_graph6(&Graph::empty(0).unwrap()), "?");
        assert_eq!(parse_graph6(">>graph6<<C~").unwrap().m(), 6);
    }

    #[test]
    fn graph6_errors() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("C").is_err());
        assert!(parse_graph6("A`").is_err());
        assert!(parse_graph6("A\u{7f}").is_err());
    }

    #[test]
    fn graph6_roundtrip_larger() {
        let g = crate::graph::grid(8, 9).unwrap();
        assert_eq!(g.n(), 72);
        let s = to_graph6(&g);
        let h = parse_graph6(&s).unwrap();
        assert_eq!(h.n(), g.n());
        assert!(g.edges().iter().all(|&(a, b)| h.has_edge(a, b)));
        assert_eq!(h.m(), g.m());
    }
}
