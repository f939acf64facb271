use super::{Graph, GraphError};

const HEADER: &str = ">>graph6<<";

fn err(offset: usize, message: impl Into<String>) -> GraphError {
    GraphError::Graph6 { offset, message: message.into() }
}

/// Parses one graph6 line. A leading `>>graph6<<` header and trailing
/// line terminators are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let line = text.trim_end_matches(['\n', '\r']);
    let (bytes, base) = match line.strip_prefix(HEADER) {
        Some(rest) => (rest.as_bytes(), HEADER.len()),
        None => (line.as_bytes(), 0),
    };
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(base + i, format!("byte {b} outside 63..=126")));
        }
    }
    if bytes.is_empty() {
        return Err(err(base, "empty input"));
    }
    let (n, mut at) = if bytes[0] != 126 {
        (usize::from(bytes[0] - 63), 1)
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(err(base + bytes.len(), "truncated 8-byte size field"));
        }
        (read_bits(&bytes[2..8]), 8)
    } else {
        if bytes.len() < 4 {
            return Err(err(base + bytes.len(), "truncated 4-byte size field"));
        }
        (read_bits(&bytes[1..4]), 4)
    };
    if at > 1 && n <= 62 {
        return Err(err(base, format!("non-minimal size field for n = {n}")));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if bytes.len() < at + need {
        return Err(err(base + bytes.len(), format!("expected {need} adjacency bytes")));
    }
    if bytes.len() > at + need {
        return Err(err(base + at + need, "trailing bytes after adjacency data"));
    }
    let mut g = Graph::empty(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[at + k / 6] - 63;
            if byte & (0x20 >> (k % 6)) != 0 {
                g.insert(i, j);
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = bytes[at + need - 1] - 63;
        let pad_mask = (1u8 << (6 - bits % 6)) - 1;
        if last & pad_mask != 0 {
            return Err(err(base + at + need - 1, "nonzero padding bits"));
        }
    }
    at += need;
    debug_assert_eq!(at, bytes.len());
    Ok(g)
}

fn read_bits(chunk: &[u8]) -> usize {
    chunk.iter().fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63))
}

/// Canonical graph6 line without header or newline.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for s in [12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for s in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            acc <<= 1;
            if g.has_edge(i, j) {
                acc |= 1;
            }
            k += 1;
            if k.is_multiple_of(6) {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if !k.is_multiple_of(6) {
        acc <<= 6 - k % 6;
        out.push(acc + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent decoder written directly from the format description:
    /// expand every byte into six bits, then read the upper triangle
    /// column by column.
    fn reference_decode(s: &str) -> (usize, Vec<(usize, usize)>) {
        let b = s.as_bytes();
        let n = (b[0] - 63) as usize;
        let mut bits = Vec::new();
        for &c in &b[1..] {
            let v = c - 63;
            for s in (0..6).rev() {
                bits.push((v >> s) & 1 == 1);
            }
        }
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if bits[k] {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        edges.sort_unstable();
        (n, edges)
    }

    #[test]
    fn single_vertex() {
        let g = parse_graph6("@").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(write_graph6(&Graph::empty(1)), "@");
    }

    #[test]
    fn six_vertex_example_round_trips() {
        let g = parse_graph6("E?~o").unwrap();
        let (n, edges) = reference_decode("E?~o");
        assert_eq!(g.n(), n);
        assert_eq!(g.edges(), edges);
        assert_eq!(write_graph6(&g), "E?~o");
    }

    #[test]
    fn triangle_encoding() {
        // n = 3 -> 'B'; bits 111 padded to 111000 = 56 -> 'w'.
        assert_eq!(write_graph6(&Graph::complete(3)), "Bw");
        assert_eq!(parse_graph6("Bw").unwrap(), Graph::complete(3));
    }

    #[test]
    fn header_and_newline_tolerated() {
        let g = parse_graph6(">>graph6<<Bw\n").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn errors_name_the_offset() {
        match parse_graph6("D?\u{7f}") {
            Err(GraphError::Graph6 { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_graph6("D?"), Err(GraphError::Graph6 { offset: 2, .. })));
        assert!(matches!(parse_graph6("Bw?"), Err(GraphError::Graph6 { offset: 2, .. })));
        assert!(matches!(parse_graph6(""), Err(GraphError::Graph6 { .. })));
        // 'x' = 57: the low padding bits of a 3-vertex graph are set.
        assert!(parse_graph6("Bx").is_err());
    }

    #[test]
    fn large_size_field() {
        let mut g = Graph::empty(70);
        g.add_edge(0, 69).unwrap();
        g.add_edge(5, 6).unwrap();
        let s = write_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }
}
