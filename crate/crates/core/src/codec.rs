//! graph6 text encoding (short form only, orders 1..=16).
//!
//! A line is a header byte `n + 63` followed by the upper-triangle bits in
//! column order (x01; x02, x12; x03, x13, x23; ...) packed six to a byte,
//! most significant first, each byte offset by 63 and zero padded.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

/// Optional stream header some exporters prepend.
pub const STREAM_HEADER: &str = ">>graph6<<";

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::with_capacity(1 + (n * (n - 1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.adjacent(i, j) as u8;
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
    out
}

pub fn decode(line: &str) -> Result<Graph> {
    let line = line.strip_prefix(STREAM_HEADER).unwrap_or(line);
    let line = line.trim_end_matches(['\n', '\r']);
    let bytes = line.as_bytes();
    let malformed = |msg: &str| Error::MalformedLine(format!("{msg}: {line:?}"));
    let (&head, body) = bytes.split_first().ok_or_else(|| malformed("empty line"))?;
    if !(63..=126).contains(&head) {
        return Err(malformed("header byte out of range"));
    }
    if head == 126 {
        return Err(malformed("long-form header is not supported"));
    }
    let n = (head - 63) as usize;
    if n == 0 {
        return Err(malformed("zero-vertex graph"));
    }
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    let nbits = n * (n - 1) / 2;
    if body.len() != nbits.div_ceil(6) {
        return Err(malformed("wrong body length"));
    }
    if let Some(&c) = body.iter().find(|&&c| !(63..=126).contains(&c)) {
        return Err(malformed(&format!("character {c} out of range")));
    }
    let bit = |k: usize| (body[k / 6] - 63) & (1 << (5 - k % 6)) != 0;
    if (nbits..body.len() * 6).any(bit) {
        return Err(malformed("nonzero padding bits"));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.set(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// True for lines a graph6 reader should skip: blanks, `#` comments and the
/// bare stream header.
pub fn is_ignorable(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#') || t == STREAM_HEADER
}
