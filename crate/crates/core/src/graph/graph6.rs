//! graph6 encoding, as produced by nauty's `geng` and `showg`.
//!
//! The order is written as `N(n)` (one byte for `n < 63`, `126` plus three
//! bytes for `n <= 258047`), followed by the upper triangle of the adjacency
//! matrix read column by column (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), packed six
//! bits per byte, most significant bit first, each byte offset by 63.

use std::io::BufRead;

use super::Graph;
use crate::error::{Graph6Error, GraphError};

const BIAS: u8 = 63;
const LONG_MARK: u8 = 126;
const MAX_G6_ORDER: usize = 258_047;
const HEADER: &[u8] = b">>graph6<<";

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n < 63 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(LONG_MARK);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
}

/// Encodes `g` as a graph6 string (no trailing newline).
pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    encode_order(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes a single graph6 string. A leading `>>graph6<<` header and
/// trailing line terminators are accepted.
pub fn decode(text: &[u8]) -> Result<Graph, Graph6Error> {
    let mut s = text.strip_prefix(HEADER).unwrap_or(text);
    while let [rest @ .., b'\n' | b'\r'] = s {
        s = rest;
    }
    if s.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (offset, &byte) in s.iter().enumerate() {
        if !(BIAS..=LONG_MARK).contains(&byte) {
            return Err(Graph6Error::ByteOutOfRange { byte, offset });
        }
    }
    let (n, body) = if s[0] != LONG_MARK {
        ((s[0] - BIAS) as usize, &s[1..])
    } else {
        if s.len() >= 2 && s[1] == LONG_MARK {
            return Err(Graph6Error::UnsupportedSize(format!(
                "orders above {MAX_G6_ORDER}"
            )));
        }
        if s.len() < 4 {
            return Err(Graph6Error::BadLength {
                n: 0,
                expected: 4,
                found: s.len(),
            });
        }
        let n = s[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
        if n < 63 {
            return Err(Graph6Error::UnsupportedSize(format!(
                "long-form header for small order {n}"
            )));
        }
        (n, &s[4..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Graph6Error::BadLength {
            n,
            expected,
            found: body.len(),
        });
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[idx / 6] - BIAS;
            if byte >> (5 - idx % 6) & 1 == 1 {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    Graph::from_edges(n, &edges).map_err(|e| match e {
        GraphError::TooLarge { n, cap } => {
            Graph6Error::UnsupportedSize(format!("order {n} exceeds cap {cap}"))
        }
        other => Graph6Error::UnsupportedSize(other.to_string()),
    })
}

/// One graph6 line from a stream; failures carry their 1-based line number.
pub type StreamItem = (usize, Result<Graph, Graph6Error>);

/// Reads graph6 lines, skipping blank lines. I/O errors end the stream.
pub fn read_stream<R: BufRead>(reader: R) -> impl Iterator<Item = StreamItem> {
    reader
        .lines()
        .map_while(Result::ok)
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| (i + 1, decode(line.trim_end().as_bytes())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_encoded_examples() {
        assert_eq!(decode(b"Bw").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(decode(b"B?").unwrap(), Graph::empty(3).unwrap());
        assert_eq!(encode(&Graph::complete(3).unwrap()), "Bw");
        assert_eq!(encode(&Graph::empty(0).unwrap()), "?");
        assert_eq!(encode(&Graph::empty(1).unwrap()), "@");
        // P_3 with centre 1: x(0,1)=1, x(0,2)=0, x(1,2)=1 -> 101000 = 40
        assert_eq!(encode(&Graph::path(3).unwrap()), "Bg");
        // 101001 100100: the 5-cycle 0-1-2-3-4-0
        let g = decode(b"Dhc").unwrap();
        assert_eq!(g.edge_count(), 5);
        assert!(g.degrees().iter().all(|&d| d == 2));
    }

    #[test]
    fn header_and_newline_accepted() {
        assert_eq!(
            decode(b">>graph6<<Bw\n").unwrap(),
            Graph::complete(3).unwrap()
        );
        assert_eq!(decode(b"Bw\r\n").unwrap(), Graph::complete(3).unwrap());
    }

    #[test]
    fn long_form_orders() {
        for n in [63, 64, 70, 300] {
            let g = Graph::path(n).unwrap();
            let s = encode(&g);
            assert_eq!(s.as_bytes()[0], LONG_MARK);
            assert_eq!(decode(s.as_bytes()).unwrap(), g);
        }
        let s = encode(&Graph::empty(63).unwrap());
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 63, 126]);
    }

    #[test]
    fn errors() {
        assert_eq!(decode(b""), Err(Graph6Error::Empty));
        assert!(matches!(
            decode(b"B w"),
            Err(Graph6Error::ByteOutOfRange { offset: 1, .. })
        ));
        assert!(matches!(
            decode(b"Bww"),
            Err(Graph6Error::BadLength {
                n: 3,
                expected: 1,
                found: 2
            })
        ));
        assert!(matches!(decode(b"C"), Err(Graph6Error::BadLength { .. })));
        assert!(matches!(
            decode(b"~~??????"),
            Err(Graph6Error::UnsupportedSize(_))
        ));
        // order 2000 is a valid graph6 header but above the graph cap
        let mut big = vec![LONG_MARK];
        for shift in [12, 6, 0] {
            big.push(((2000usize >> shift) & 0x3f) as u8 + BIAS);
        }
        big.extend(std::iter::repeat_n(
            BIAS,
            (2000 * 1999 / 2usize).div_ceil(6),
        ));
        assert!(matches!(decode(&big), Err(Graph6Error::UnsupportedSize(_))));
    }

    #[test]
    fn stream_reports_line_numbers() {
        let input = "Bw\n\nB x\nB?\n";
        let items: Vec<_> = read_stream(input.as_bytes()).collect();
        assert_eq!(items.len(), 3);
        assert_eq!(items[0].0, 1);
        assert!(items[1].1.is_err() && items[1].0 == 3);
        assert_eq!(items[2].0, 4);
    }
}
