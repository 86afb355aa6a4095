//! graph6 encoding (McKay's format): a size prefix followed by the upper
//! triangle of the adjacency matrix in column order, six bits per byte,
//! each byte offset by 63.

use super::TGraph;
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

pub fn to_graph6(g: &TGraph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        push_bits(&mut out, n as u64, 18);
    } else {
        out.extend([126, 126]);
        push_bits(&mut out, n as u64, 36);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i + 1, j + 1) as u8;
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
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn push_bits(out: &mut Vec<u8>, value: u64, bits: u32) {
    for k in (0..bits / 6).rev() {
        out.push(((value >> (6 * k)) & 63) as u8 + 63);
    }
}

/// Parses one graph6 line. An optional `>>graph6<<` header and trailing
/// whitespace are accepted; errors carry the byte offset into `text`.
pub fn parse_graph6(text: &str) -> Result<TGraph> {
    let start = if text.starts_with(HEADER) { HEADER.len() } else { 0 };
    let bytes = text.as_bytes();
    let end = text.trim_end().len();
    if end <= start {
        return Err(Error::parse(start, "empty graph6 string"));
    }
    let body = &bytes[start..end];
    let at = |k: usize| start + k;
    let value = |k: usize| -> Result<u64> {
        let b = body[k];
        if (63..=126).contains(&b) {
            Ok((b - 63) as u64)
        } else {
            Err(Error::parse(at(k), format!("byte {b:#04x} outside the graph6 range")))
        }
    };
    let read_wide = |from: usize, groups: usize| -> Result<u64> {
        if body.len() < from + groups {
            return Err(Error::parse(at(body.len()), "truncated size prefix"));
        }
        (from..from + groups).try_fold(0u64, |acc, k| Ok((acc << 6) | value(k)?))
    };

    let (n, mut pos) = if body[0] != 126 {
        (value(0)?, 1)
    } else if body.len() > 1 && body[1] == 126 {
        (read_wide(2, 6)?, 8)
    } else {
        (read_wide(1, 3)?, 4)
    };
    let n = usize::try_from(n).map_err(|_| Error::parse(at(0), "vertex count too large"))?;

    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() - pos != need {
        return Err(Error::parse(
            at(pos),
            format!("expected {need} adjacency bytes for {n} vertices, found {}", body.len() - pos),
        ));
    }
    let mut g = TGraph::empty(n);
    let mut k = 0usize;
    let mut cur = 0u64;
    for j in 1..n {
        for i in 0..j {
            if k.is_multiple_of(6) {
                cur = value(pos)?;
                pos += 1;
            }
            if (cur >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i + 1, j + 1);
            }
            k += 1;
        }
    }
    if !k.is_multiple_of(6) {
        let pad = 6 - k % 6;
        if cur & ((1 << pad) - 1) != 0 {
            return Err(Error::parse(at(pos - 1), "nonzero padding bits"));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::super::families::*;
    use super::*;

    #[test]
    fn known_strings() {
        let g = parse_graph6("D?{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.degree(5), 4);
        assert_eq!(to_graph6(&g), "D?{");

        // a-c, a-e, b-d, d-e
        let g = TGraph::from_edge_list(5, &[(1, 3), (1, 5), (2, 4), (4, 5)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(to_graph6(&complete(4)), "C~");
        assert_eq!(to_graph6(&TGraph::empty(0)), "?");
        assert_eq!(to_graph6(&TGraph::empty(1)), "@");
        assert_eq!(parse_graph6(">>graph6<<C~\n").unwrap(), complete(4));
    }

    #[test]
    fn wide_size_prefix() {
        let g = path(63);
        let s = to_graph6(&g);
        assert!(s.starts_with("~??~"));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_graph6(""), Err(Error::Parse { offset: 0, .. })));
        // too short for 5 vertices
        assert!(matches!(parse_graph6("D?"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(parse_graph6("D?{{"), Err(Error::Parse { offset: 1, .. })));
        // padding bits must be zero: '|' = 61 sets the lowest bit
        assert!(matches!(parse_graph6("D?|"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_graph6("D?\x01"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_graph6("~?"), Err(Error::Parse { .. })));
    }
}
