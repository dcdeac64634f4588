//! graph6 and plain edge-list text formats.
//!
//! graph6: header byte N(n) = n + 63 for n <= 62, the 4-byte form
//! `126 b b b` for larger n (capped at 64 here), then the upper-triangle
//! adjacency bits in column order packed big-endian 6 bits per byte, each
//! byte offset by 63.
//!
//! Edge list: first line `n m`, then `m` lines `u v` with 0-based labels;
//! lines starting with `#` are ignored.

use crate::error::{FormatError, MAX_VERTICES};
use crate::graph::Graph;

const OFFSET: u8 = 63;

pub fn emit_graph6(g: &Graph) -> Result<Vec<u8>, FormatError> {
    let n = g.n();
    if n == 0 {
        return Err(FormatError::EmptyGraph);
    }
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + OFFSET);
        out.push(((n >> 6) & 63) as u8 + OFFSET);
        out.push((n & 63) as u8 + OFFSET);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    Ok(out)
}

pub fn parse_graph6(bytes: &[u8]) -> Result<Graph, FormatError> {
    // tolerate one trailing newline so whole census lines parse directly
    let bytes = bytes.strip_suffix(b"\n").unwrap_or(bytes);
    if bytes.is_empty() {
        return Err(FormatError::Truncated {
            offset: 0,
            need: 1,
            got: 0,
        });
    }
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            // 8-byte header form encodes n >= 2^18, far past capacity
            return Err(FormatError::TooLarge(1 << 18));
        }
        if bytes.len() < 4 {
            return Err(FormatError::Truncated {
                offset: bytes.len(),
                need: 4,
                got: bytes.len(),
            });
        }
        let mut n = 0usize;
        for (i, &b) in bytes[1..4].iter().enumerate() {
            if !(OFFSET..=126).contains(&b) {
                return Err(FormatError::BadHeader { byte: b, offset: 1 + i });
            }
            n = n << 6 | (b - OFFSET) as usize;
        }
        (n, 4)
    } else {
        let b = bytes[0];
        if !(OFFSET..=125).contains(&b) {
            return Err(FormatError::BadHeader { byte: b, offset: 0 });
        }
        ((b - OFFSET) as usize, 1)
    };
    if n == 0 {
        return Err(FormatError::EmptyGraph);
    }
    if n > MAX_VERTICES {
        return Err(FormatError::TooLarge(n));
    }
    let nbits = n * (n - 1) / 2;
    let need = nbits.div_ceil(6);
    let payload = &bytes[pos..];
    if payload.len() < need {
        return Err(FormatError::Truncated {
            offset: bytes.len(),
            need,
            got: payload.len(),
        });
    }
    if payload.len() > need {
        return Err(FormatError::Trailing { offset: pos + need });
    }
    let mut g = Graph::empty(n).expect("n <= 64");
    let mut bit = 0usize;
    for &b in payload {
        if !(OFFSET..=126).contains(&b) {
            return Err(FormatError::BadAlphabet { byte: b, offset: pos });
        }
        let chunk = b - OFFSET;
        for k in (0..6).rev() {
            let set = chunk >> k & 1 == 1;
            if bit >= nbits {
                if set {
                    return Err(FormatError::Padding { offset: pos });
                }
                continue;
            }
            if set {
                let (u, v) = triangle_coords(bit);
                g = g.add_edge(u, v).expect("in range, no duplicates");
            }
            bit += 1;
        }
        pos += 1;
    }
    Ok(g)
}

/// Column-order position `bit` within the upper triangle -> `(u, v)`, u < v.
fn triangle_coords(bit: usize) -> (usize, usize) {
    let mut v = 1usize;
    let mut base = 0usize;
    while base + v <= bit {
        base += v;
        v += 1;
    }
    (bit - base, v)
}

pub fn emit_edge_list(g: &Graph) -> Result<String, FormatError> {
    if g.n() == 0 {
        return Err(FormatError::EmptyGraph);
    }
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    Ok(out)
}

/// Parse the edge-list format. Returns the graph and the number of input
/// lines consumed, so callers can parse trailing content (move scripts).
pub fn parse_edge_list_prefix(text: &str) -> Result<(Graph, usize), FormatError> {
    let mut lines = text.lines().enumerate();
    let err = |line: usize, msg: &str| FormatError::EdgeList {
        line: line + 1,
        msg: msg.to_string(),
    };
    let (header_line, n, m) = loop {
        match lines.next() {
            None => return Err(err(0, "missing 'n m' header line")),
            Some((i, l)) => {
                let l = l.trim();
                if l.is_empty() || l.starts_with('#') {
                    continue;
                }
                let mut it = l.split_whitespace();
                let n: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(i, "expected vertex count"))?;
                let m: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(i, "expected edge count"))?;
                if it.next().is_some() {
                    return Err(err(i, "header has more than two fields"));
                }
                break (i, n, m);
            }
        }
    };
    if n > MAX_VERTICES {
        return Err(err(header_line, &format!("{n} vertices exceeds capacity {MAX_VERTICES}")));
    }
    let mut edges = Vec::with_capacity(m);
    let mut last = header_line;
    while edges.len() < m {
        match lines.next() {
            None => return Err(err(last, &format!("expected {m} edges, found {}", edges.len()))),
            Some((i, l)) => {
                last = i;
                let l = l.trim();
                if l.is_empty() || l.starts_with('#') {
                    continue;
                }
                let mut it = l.split_whitespace();
                let u: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(i, "expected edge endpoint"))?;
                let v: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(i, "expected edge endpoint"))?;
                if it.next().is_some() {
                    return Err(err(i, "edge line has more than two fields"));
                }
                if u >= n || v >= n {
                    return Err(err(i, &format!("endpoint out of range 0..{n}")));
                }
                if u == v {
                    return Err(err(i, "loops are not allowed"));
                }
                edges.push((u, v));
            }
        }
    }
    let g = Graph::from_edges(n, &edges).map_err(|e| err(last, &e.to_string()))?;
    Ok((g, last + 1))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let (g, consumed) = parse_edge_list_prefix(text)?;
    for (i, l) in text.lines().enumerate().skip(consumed) {
        let l = l.trim();
        if !l.is_empty() && !l.starts_with('#') {
            return Err(FormatError::EdgeList {
                line: i + 1,
                msg: "unexpected content after edge list".to_string(),
            });
        }
    }
    Ok(g)
}
