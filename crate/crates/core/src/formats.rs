//! Graph serialization: graph6 (bit-exact per the format of McKay's nauty
//! tools) and a plain edge-list text format with an `n m` header.

use crate::error::{Error, Result};
use crate::graph::Graph;

const G6_MAX: usize = 258047;

/// Encodes a graph as a graph6 string (no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    assert!(n <= G6_MAX, "graph6 supports at most {G6_MAX} vertices here");
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(126);
        out.push(63 + ((n >> 12) & 0x3f) as u8);
        out.push(63 + ((n >> 6) & 0x3f) as u8);
        out.push(63 + (n & 0x3f) as u8);
    }
    let mut group = 0u8;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            group <<= 1;
            if g.has_edge(i, j) {
                group |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(63 + group);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        group <<= 6 - filled;
        out.push(63 + group);
    }
    String::from_utf8(out).unwrap()
}

/// Parses a single graph6 line.
pub fn from_graph6(line: &str) -> Result<Graph> {
    let bytes = line.trim_end().as_bytes();
    // optional ">>graph6<<" header
    let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 line".into()));
    }
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(Error::Parse("graph6 graphs beyond 258047 vertices unsupported".into()));
        }
        if bytes.len() < 4 {
            return Err(Error::Parse("truncated graph6 size".into()));
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            if !(63..=126).contains(&b) {
                return Err(Error::Parse(format!("invalid graph6 byte {b}")));
            }
            n = (n << 6) | (b - 63) as usize;
        }
        (n, 4)
    } else {
        let b = bytes[0];
        if !(63..=126).contains(&b) {
            return Err(Error::Parse(format!("invalid graph6 size byte {b}")));
        }
        ((b - 63) as usize, 1)
    };

    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    if bytes.len() - pos != bytes_needed {
        return Err(Error::Parse(format!(
            "graph6 body length {} does not match n={} (expected {} bytes)",
            bytes.len() - pos,
            n,
            bytes_needed
        )));
    }

    let mut edges = Vec::new();
    let mut group = 0u8;
    let mut remaining = 0u8;
    for j in 1..n {
        for i in 0..j {
            if remaining == 0 {
                let b = bytes[pos];
                pos += 1;
                if !(63..=126).contains(&b) {
                    return Err(Error::Parse(format!("invalid graph6 byte {b}")));
                }
                group = b - 63;
                remaining = 6;
            }
            if group & (1 << (remaining - 1)) != 0 {
                edges.push((i, j));
            }
            remaining -= 1;
        }
    }
    if remaining > 0 && group & ((1 << remaining) - 1) != 0 {
        return Err(Error::Parse("nonzero graph6 padding bits".into()));
    }
    Graph::from_edges(n, &edges)
}

/// Serializes as `n m` header plus one `u v` line per edge.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses the edge-list text format. Blank lines and `#` comments are
/// ignored.
pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing edge-list header".into()))?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .ok_or_else(|| Error::Parse("missing vertex count".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad vertex count: {e}")))?;
    let m: usize = parts
        .next()
        .ok_or_else(|| Error::Parse("missing edge count".into()))?
        .parse()
        .map_err(|e| Error::Parse(format!("bad edge count: {e}")))?;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let mut it = line.split_whitespace();
        let u: usize = it
            .next()
            .ok_or_else(|| Error::Parse(format!("bad edge line: {line:?}")))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad endpoint in {line:?}: {e}")))?;
        let v: usize = it
            .next()
            .ok_or_else(|| Error::Parse(format!("bad edge line: {line:?}")))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad endpoint in {line:?}: {e}")))?;
        if it.next().is_some() {
            return Err(Error::Parse(format!("trailing tokens in edge line {line:?}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse(format!(
            "edge count mismatch: header says {m}, found {}",
            edges.len()
        )));
    }
    Graph::from_edges(n, &edges)
}

/// Input format of a graph file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileFormat {
    Graph6,
    EdgeList,
}

/// Guesses the format from a file name extension (`.g6` vs anything else).
pub fn detect_format(path: &str) -> FileFormat {
    if path.ends_with(".g6") || path.ends_with(".graph6") {
        FileFormat::Graph6
    } else {
        FileFormat::EdgeList
    }
}

/// Parses text in the given format (first non-empty line for graph6).
pub fn parse(text: &str, format: FileFormat) -> Result<Graph> {
    match format {
        FileFormat::Graph6 => {
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .ok_or_else(|| Error::Parse("empty graph6 input".into()))?;
            from_graph6(line)
        }
        FileFormat::EdgeList => from_edge_list(text),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classic;

    #[test]
    fn graph6_known_strings() {
        // Reference strings from the nauty format documentation conventions.
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(to_graph6(&k2), "A_");
        let k4 = classic::complete(4);
        assert_eq!(to_graph6(&k4), "C~");
        let empty5 = Graph::empty(5);
        assert_eq!(to_graph6(&empty5), "D??");
        assert_eq!(from_graph6("A_").unwrap(), k2);
        assert_eq!(from_graph6("C~").unwrap(), k4);
    }

    #[test]
    fn graph6_roundtrip_small() {
        for g in [
            classic::complete(7),
            classic::cycle(9),
            classic::icosahedron(),
            Graph::empty(0),
            Graph::empty(1),
        ] {
            assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
        }
    }

    #[test]
    fn graph6_large_n_roundtrip() {
        // Beyond the single-byte size range.
        let g = classic::cycle(70);
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("C").is_err()); // truncated body
        assert!(from_graph6("C~~~").is_err()); // overlong body
    }

    #[test]
    fn edge_list_roundtrip() {
        let g = classic::wheel(6);
        let text = to_edge_list(&g);
        assert_eq!(from_edge_list(&text).unwrap(), g);
        assert!(text.starts_with("7 12\n"));
    }

    #[test]
    fn edge_list_rejects_mismatch() {
        assert!(from_edge_list("2 2\n0 1\n").is_err());
        assert!(from_edge_list("2 1\n0 1\n1 0\n").is_err());
    }

    #[test]
    fn format_detection() {
        assert_eq!(detect_format("foo.g6"), FileFormat::Graph6);
        assert_eq!(detect_format("foo.txt"), FileFormat::EdgeList);
    }
}
