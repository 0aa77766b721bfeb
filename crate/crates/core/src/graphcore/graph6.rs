//! graph6 encoding: vertex count header, then the upper triangle in
//! column-major order packed into 6-bit groups offset by 63.

use super::graph::Graph;
use crate::error::{Error, Result};

/// Largest order expressible in graph6 (six-byte header form).
pub const GRAPH6_MAX_ORDER: usize = 68_719_476_735;

fn push_order(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Encodes without a trailing newline.
pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    push_order(&mut out, n);
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
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

fn bad(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 { offset, reason: reason.into() }
}

fn value(bytes: &[u8], offset: usize) -> Result<usize> {
    match bytes.get(offset) {
        Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as usize),
        Some(&b) => Err(bad(offset, format!("byte 0x{b:02x} outside the printable range 63..=126"))),
        None => Err(bad(offset, "unexpected end of input")),
    }
}

/// Decodes one graph6 line. A trailing `\n` or `\r\n` is accepted, and so is
/// the optional `>>graph6<<` header.
pub fn decode(line: &str) -> Result<Graph> {
    let mut bytes = line.as_bytes();
    while let Some((&last, rest)) = bytes.split_last() {
        if last == b'\n' || last == b'\r' {
            bytes = rest;
        } else {
            break;
        }
    }
    let mut pos = 0;
    const HEADER: &[u8] = b">>graph6<<";
    if bytes.starts_with(HEADER) {
        pos = HEADER.len();
    }
    if pos >= bytes.len() {
        return Err(bad(pos, "empty graph6 string"));
    }
    let n = if bytes[pos] != 126 {
        let n = value(bytes, pos)?;
        pos += 1;
        n
    } else if bytes.get(pos + 1) != Some(&126) {
        let mut n = 0;
        for k in 1..=3 {
            n = n << 6 | value(bytes, pos + k)?;
        }
        pos += 4;
        n
    } else {
        let mut n = 0;
        for k in 2..=7 {
            n = n << 6 | value(bytes, pos + k)?;
        }
        pos += 8;
        n
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    let body = &bytes[pos..];
    if body.len() != need {
        let at = pos + body.len().min(need);
        return Err(bad(at, format!("expected {need} edge bytes for {n} vertices, found {}", body.len())));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = value(bytes, pos + k / 6)?;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
            if k == pairs {
                break 'outer;
            }
        }
    }
    if pairs % 6 != 0 {
        let last = value(bytes, pos + need - 1)?;
        if last & ((1 << (6 - pairs % 6)) - 1) != 0 {
            return Err(bad(pos + need - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}
