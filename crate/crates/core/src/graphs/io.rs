//! graph6 and edge-list text formats.

use super::Graph;
use crate::{Error, Result};

/// Decodes one graph6 line (header-less; a leading `>>graph6<<` is tolerated).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Error::MalformedGraph6("empty input".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::MalformedGraph6(format!("byte {b} outside 63..=126")));
    }
    let (n, body) = decode_n(bytes)?;
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() != need {
        return Err(Error::MalformedGraph6(format!(
            "expected {need} data bytes for n={n}, found {}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[idx / 6] - 63;
            if byte >> (5 - idx % 6) & 1 == 1 {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

fn decode_n(bytes: &[u8]) -> Result<(usize, &[u8])> {
    let six = |s: &[u8]| s.iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
    if bytes[0] != 126 {
        return Ok(((bytes[0] - 63) as usize, &bytes[1..]));
    }
    if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(Error::MalformedGraph6("truncated 8-byte header".into()));
        }
        return Ok((six(&bytes[2..8]), &bytes[8..]));
    }
    if bytes.len() < 4 {
        return Err(Error::MalformedGraph6("truncated 4-byte header".into()));
    }
    Ok((six(&bytes[1..4]), &bytes[4..]))
}

/// Encodes a graph as a single graph6 line without trailing newline.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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

/// One `u v` pair per line, 0-indexed. Blank lines and `#` comments are
/// skipped. The vertex count is one more than the largest index seen.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut max_v = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(Error::MalformedEdgeList(format!(
                "line {}: expected two vertex indices",
                lineno + 1
            )));
        }
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| {
                Error::MalformedEdgeList(format!("line {}: bad vertex '{s}'", lineno + 1))
            })
        };
        let (u, v) = (parse(parts[0])?, parse(parts[1])?);
        max_v = Some(max_v.unwrap_or(0).max(u).max(v));
        edges.push((u, v));
    }
    let n = max_v.map(|m| m + 1).ok_or_else(|| Error::MalformedEdgeList("no edges".into()))?;
    Graph::from_edges(n, &edges)
}
