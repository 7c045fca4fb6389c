//! graph6 encoding and decoding.
//!
//! Layout: `N(n)` followed by the upper triangle of the adjacency matrix read
//! column by column (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), packed six bits per
//! printable byte with an offset of 63.

use thiserror::Error;

use crate::graph::{GraphError, SmallGraph};

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("invalid byte {byte:#04x} at offset {offset}")]
    InvalidByte { byte: u8, offset: usize },
    #[error("malformed order header")]
    BadHeader,
    #[error("adjacency data truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("{extra} trailing bytes after adjacency data")]
    TrailingData { extra: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

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

pub fn encode_bytes(g: &SmallGraph) -> Vec<u8> {
    let n = g.order();
    let bits = n * (n - 1) / 2;
    let mut out = Vec::with_capacity(8 + bits.div_ceil(6));
    push_order(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    out
}

pub fn encode(g: &SmallGraph) -> String {
    String::from_utf8(encode_bytes(g)).expect("graph6 is printable ASCII")
}

/// Decodes one graph6 line. An optional `>>graph6<<` header and surrounding
/// whitespace are accepted.
pub fn decode(text: &str) -> Result<SmallGraph, Graph6Error> {
    decode_with_cap(text, crate::graph::DEFAULT_ORDER_CAP)
}

pub fn decode_with_cap(text: &str, cap: usize) -> Result<SmallGraph, Graph6Error> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if let Some((offset, &byte)) = bytes.iter().enumerate().find(|(_, &b)| !(63..=126).contains(&b)) {
        return Err(Graph6Error::InvalidByte { byte, offset });
    }
    let (n, body) = read_order(bytes)?;
    let mut g = SmallGraph::empty_with_cap(n, cap)?;
    let bits = n * (n - 1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingData {
            extra: body.len() - expected,
        });
    }
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

fn read_order(bytes: &[u8]) -> Result<(usize, &[u8]), Graph6Error> {
    let fold = |digits: &[u8]| digits.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    match bytes {
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Graph6Error::BadHeader);
            }
            Ok((fold(&rest[..6]), &rest[6..]))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Graph6Error::BadHeader);
            }
            Ok((fold(&rest[..3]), &rest[3..]))
        }
        [b, rest @ ..] => Ok(((b - 63) as usize, rest)),
        [] => Err(Graph6Error::Empty),
    }
}
