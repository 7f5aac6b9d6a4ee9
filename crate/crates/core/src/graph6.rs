//! graph6 records (short form): the ingestion format for externally
//! generated graph streams.
//!
//! A record is `N(n)` followed by the upper-triangle adjacency bits in
//! column-major pair order (0,1),(0,2),(1,2),(0,3),..., packed six bits per
//! printable byte (value = byte - 63, most significant bit first). The
//! optional `>>graph6<<` header is tolerated and stripped.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

const HEADER: &str = ">>graph6<<";

/// Position of pair (u, v), u < v, in column-major order.
#[inline]
pub(crate) fn pair_index(u: usize, v: usize) -> usize {
    v * (v - 1) / 2 + u
}

/// Decode one graph6 record into an unweighted graph (all weights 1.0).
pub fn parse_graph6(line: &str) -> Result<WeightedGraph> {
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.trim_end_matches(['\r', '\n']).as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6Parse {
            offset: 0,
            reason: "empty record".into(),
        });
    }
    if bytes[0] == b'~' {
        return Err(Error::Graph6Parse {
            offset: 0,
            reason: "extended order encoding (n >= 63) not supported".into(),
        });
    }
    let n = match bytes[0] {
        b @ 63..=125 => (b - 63) as usize,
        b => {
            return Err(Error::Graph6Parse {
                offset: 0,
                reason: format!("order byte 0x{b:02x} outside graph6 range"),
            })
        }
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() != 1 + nbytes {
        return Err(Error::Graph6Parse {
            offset: bytes.len().min(1 + nbytes),
            reason: format!(
                "record for n = {n} needs {} payload bytes, found {}",
                nbytes,
                bytes.len() - 1
            ),
        });
    }
    let mut pairs = Vec::new();
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = bytes[1 + bit / 6];
            if !(63..=126).contains(&byte) {
                return Err(Error::Graph6Parse {
                    offset: 1 + bit / 6,
                    reason: format!("payload byte 0x{byte:02x} outside graph6 range"),
                });
            }
            let val = byte - 63;
            if val >> (5 - bit % 6) & 1 == 1 {
                pairs.push((u, v));
            }
            bit += 1;
        }
    }
    // trailing padding bits must be zero
    if nbits % 6 != 0 {
        let last = bytes[bytes.len() - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::Graph6Parse {
                offset: bytes.len() - 1,
                reason: "nonzero padding bits".into(),
            });
        }
    }
    WeightedGraph::unweighted(n, &pairs)
}

/// Inverse encoder (short form). Weights are ignored.
pub fn write_graph6(g: &WeightedGraph) -> Result<String> {
    let n = g.n();
    if n >= 63 {
        return Err(Error::InvalidArgument(format!(
            "graph6 short form encodes n < 63, got {n}"
        )));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let mut vals = vec![0u8; nbits.div_ceil(6)];
    for e in g.edges() {
        let bit = pair_index(e.u, e.v);
        vals[bit / 6] |= 1 << (5 - bit % 6);
    }
    let mut out = String::with_capacity(1 + vals.len());
    out.push((63 + n as u8) as char);
    for v in vals {
        out.push((63 + v) as char);
    }
    Ok(out)
}

/// Iterate graph6 records from text, one per line, skipping blank lines.
/// Yields `(line_number, parse result)` so callers can report and skip bad
/// records.
pub fn parse_graph6_stream(
    text: &str,
) -> impl Iterator<Item = (usize, Result<WeightedGraph>)> + '_ {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, parse_graph6(l)))
}
