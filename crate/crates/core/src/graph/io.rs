use super::Graph;
use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses the `n m` header followed by `m` lines `u v`.
///
/// Blank lines and lines starting with `#` are ignored; reported line
/// numbers are 1-based positions in the original text.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let (n, m) = parse_pair(hline, header)?;

    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::new();
    for (lineno, line) in lines {
        if edges.len() == m {
            return Err(parse_err(lineno, format!("more than the declared {m} edges")));
        }
        let (u, v) = parse_pair(lineno, line)?;
        if u >= n || v >= n {
            return Err(parse_err(lineno, format!("vertex out of range 0..{n}")));
        }
        if u == v {
            return Err(parse_err(lineno, format!("self-loop at {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(lineno, format!("duplicate edge {u} {v}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        let last = text.lines().count().max(1);
        return Err(parse_err(last, format!("expected {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, edges)
}

fn parse_pair(lineno: usize, line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next().and_then(|t| t.parse::<usize>().ok());
    let b = it.next().and_then(|t| t.parse::<usize>().ok());
    match (a, b, it.next()) {
        (Some(a), Some(b), None) => Ok((a, b)),
        _ => Err(parse_err(lineno, format!("expected two non-negative integers, got {line:?}"))),
    }
}

/// Writes the edge-list format accepted by [`parse_edge_list`].
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Decodes one graph6 string (an optional `>>graph6<<` header is allowed).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty string".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("byte {b} outside 63..=126")));
    }
    let (n, offset) = decode_size(bytes)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    let body = &bytes[offset..];
    if body.len() < need {
        return Err(Error::Graph6(format!("truncated: need {need} data bytes, found {}", body.len())));
    }
    if body.len() > need {
        return Err(Error::Graph6(format!("{} trailing bytes", body.len() - need)));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges)
}

fn decode_size(bytes: &[u8]) -> Result<(usize, usize)> {
    let word = |range: std::ops::Range<usize>| -> Result<usize> {
        let part = bytes.get(range).ok_or_else(|| Error::Graph6("truncated size field".into()))?;
        Ok(part.iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize))
    };
    if bytes[0] != 126 {
        Ok(((bytes[0] - 63) as usize, 1))
    } else if bytes.get(1) != Some(&126) {
        Ok((word(1..4)?, 4))
    } else {
        Ok((word(2..8)?, 8))
    }
}

/// Encodes `g` in graph6 (no header, no newline).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
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
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Accepts either format: a first line holding two integers means an edge
/// list, anything else is read as graph6.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    let looks_like_header = {
        let toks: Vec<&str> = first.split_whitespace().collect();
        toks.len() == 2 && toks.iter().all(|t| t.parse::<usize>().is_ok())
    };
    if looks_like_header {
        parse_edge_list(text)
    } else {
        parse_graph6(first)
    }
}
