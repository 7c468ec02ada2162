//! graph6 encoding.
//!
//! The body of a graph6 string lists the upper triangle of the adjacency
//! matrix column by column, which is exactly the colex slot order used by
//! [`EdgeSet`], six bits per printable character.

use crate::error::{Error, Result};
use crate::graph::{choose2, EdgeSet, Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 { offset, reason: reason.into() }
}

/// Parses one graph6 line. A leading `>>graph6<<` header and a trailing
/// line terminator are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    if bytes.starts_with(HEADER.as_bytes()) {
        pos = HEADER.len();
    } else if bytes.first() == Some(&b'>') {
        return Err(err(0, "malformed header"));
    }
    let mut end = bytes.len();
    while end > pos && matches!(bytes[end - 1], b'\n' | b'\r') {
        end -= 1;
    }
    let body = &bytes[..end];

    let digit = |i: usize| -> Result<u32> {
        match body.get(i) {
            None => Err(err(i, "unexpected end of input")),
            Some(&c) if (63..=126).contains(&c) => Ok((c - 63) as u32),
            Some(&c) => Err(err(i, format!("byte 0x{c:02x} outside the graph6 range 63..=126"))),
        }
    };

    let n = match digit(pos)? {
        63 => {
            // 18-bit or 36-bit vertex counts; always beyond the cap, but
            // decode them so the error names the actual size.
            let start = pos;
            let n = if body.get(pos + 1) == Some(&126) {
                pos += 2;
                (0..6).try_fold(0u64, |acc, i| Ok::<_, Error>(acc << 6 | digit(pos + i)? as u64))?
            } else {
                pos += 1;
                (0..3).try_fold(0u64, |acc, i| Ok::<_, Error>(acc << 6 | digit(pos + i)? as u64))?
            };
            return Err(err(start, format!("vertex count {n} exceeds {MAX_VERTICES}")));
        }
        d => d as usize,
    };
    if n == 0 {
        return Err(err(pos, "vertex count 0 is not supported"));
    }
    if n > MAX_VERTICES {
        return Err(err(pos, format!("vertex count {n} exceeds {MAX_VERTICES}")));
    }
    pos += 1;

    let m = choose2(n);
    let chars = m.div_ceil(6);
    let mut bits: u128 = 0;
    for c in 0..chars {
        let d = digit(pos + c)?;
        for b in 0..6 {
            let s = c * 6 + b;
            if d >> (5 - b) & 1 == 1 {
                if s >= m {
                    return Err(err(pos + c, "nonzero padding bits"));
                }
                bits |= 1u128 << s;
            }
        }
    }
    pos += chars;
    if pos != body.len() {
        return Err(err(pos, "trailing garbage"));
    }
    Ok(Graph::from_edge_set(EdgeSet::from_bits(n, bits)?))
}

/// Encodes a graph as graph6 without header or newline.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let m = choose2(n);
    let bits = g.edges().bits();
    let mut out = String::with_capacity(1 + m.div_ceil(6));
    out.push((n as u8 + 63) as char);
    for c in 0..m.div_ceil(6) {
        let mut d = 0u8;
        for b in 0..6 {
            let s = c * 6 + b;
            if s < m && bits >> s & 1 == 1 {
                d |= 1 << (5 - b);
            }
        }
        out.push((d + 63) as char);
    }
    out
}

/// Parses every non-blank line; errors carry the 1-based line number.
pub fn parse_graph6_lines(text: &str) -> Vec<(usize, Result<Graph>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, parse_graph6(l.trim_end())))
        .collect()
}
