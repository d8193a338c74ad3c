//! graph6 codec for simple undirected graphs with fewer than 2^18 vertices.

use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";
const MAX_ORDER: usize = 1 << 18;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        msg: msg.into(),
    }
}

/// Decodes one graph6 record into its order and sorted edge list `(i, j)`, `i < j`.
pub fn decode(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| parse_err("empty graph6 input"))?;
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(parse_err(format!("byte {b:#04x} outside the graph6 range")));
    }
    if bytes.is_empty() {
        return Err(parse_err("missing order byte"));
    }

    let (n, body) = if bytes[0] < 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 {
            return Err(parse_err("truncated order field"));
        }
        if bytes[1] == 126 {
            return Err(parse_err("orders of 2^18 or more are not supported"));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    };

    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(parse_err(format!(
            "expected {expected} adjacency bytes for order {n}, found {}",
            body.len()
        )));
    }

    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    edges.sort_unstable();
    Ok((n, edges))
}

/// Encodes a graph of order `n` with the given undirected edges (no header).
pub fn encode(n: usize, edges: &[(usize, usize)]) -> String {
    assert!(n < MAX_ORDER, "graph6 order must be below 2^18");
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let mut bits = vec![false; nbits];
    for &(a, b) in edges {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        bits[j * (j - 1) / 2 + i] = true;
    }
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for (pos, &bit) in chunk.iter().enumerate() {
            if bit {
                byte |= 1 << (5 - pos);
            }
        }
        out.push(byte + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_known_strings() {
        // Petersen graph in canonical nauty form.
        let (n, edges) = decode("IheA@GUAo").unwrap();
        assert_eq!(n, 10);
        assert_eq!(edges.len(), 15);
        let (n, edges) = decode(">>graph6<<A_\n").unwrap();
        assert_eq!((n, edges), (2, vec![(0, 1)]));
        let (n, edges) = decode("Bw").unwrap();
        assert_eq!(n, 3);
        assert_eq!(edges, vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn large_order_roundtrip() {
        let n = 70;
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let s = encode(n, &edges);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(decode(&s).unwrap(), (n, edges));
    }

    #[test]
    fn rejects_malformed() {
        assert!(decode("").is_err());
        assert!(decode("Bww").is_err());
        assert!(decode("B ").is_err());
        assert!(decode("~~??????").is_err());
    }
}
