//! graph6 / sparse6 / edge-list reading and writing.
//!
//! graph6 and sparse6 follow the nauty format description: each graph is one
//! line of printable bytes (63..=126) packing 6 bits per byte, big-endian.
//! The edge-list format is a header line `n m` followed by `m` lines
//! `u v [mult]`; blank lines and `#` comments are ignored.

use std::fmt;
use std::str::FromStr;

use crate::error::{GraphError, ParseError, ParseErrorKind};

use super::{Edge, MultiGraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    Graph6,
    Sparse6,
    EdgeList,
}

impl Format {
    /// Guess from a file extension (`.g6`, `.s6`, `.el`).
    pub fn from_extension(ext: &str) -> Option<Format> {
        match ext {
            "g6" => Some(Format::Graph6),
            "s6" => Some(Format::Sparse6),
            "el" => Some(Format::EdgeList),
            _ => None,
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graph6" => Ok(Format::Graph6),
            "sparse6" => Ok(Format::Sparse6),
            "edge-list" => Ok(Format::EdgeList),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Graph6 => "graph6",
            Format::Sparse6 => "sparse6",
            Format::EdgeList => "edge-list",
        })
    }
}

/// A parsed graph together with its edge instances in the order the input
/// listed them (rotation files refer to edges by this order).
#[derive(Clone, Debug)]
pub struct Parsed {
    pub graph: MultiGraph,
    pub edge_order: Vec<Edge>,
}

/// Parses exactly one graph.
pub fn parse_graph(text: &[u8], format: Format) -> Result<MultiGraph, ParseError> {
    let mut all = parse_all(text, format)?;
    match all.len() {
        1 => Ok(all.pop().unwrap().graph),
        _ => Err(ParseError::at(0, ParseErrorKind::Header)),
    }
}

/// Parses every graph in a file: one per line for graph6/sparse6, or
/// consecutive header-plus-edges blocks for edge lists.
pub fn parse_all(text: &[u8], format: Format) -> Result<Vec<Parsed>, ParseError> {
    match format {
        Format::Graph6 | Format::Sparse6 => {
            let mut out = Vec::new();
            let mut offset = 0;
            for line in text.split(|&b| b == b'\n') {
                let start = offset;
                offset += line.len() + 1;
                let line = line.strip_suffix(b"\r").unwrap_or(line);
                if line.iter().all(u8::is_ascii_whitespace) {
                    continue;
                }
                let parsed = match format {
                    Format::Graph6 => parse_graph6_line(line),
                    _ => parse_sparse6_line(line),
                };
                out.push(parsed.map_err(|e| ParseError::at(start + e.offset, e.kind))?);
            }
            Ok(out)
        }
        Format::EdgeList => parse_edge_lists(text),
    }
}

fn parse_size(body: &[u8]) -> Result<(usize, usize), ParseError> {
    let byte = |i: usize| -> Result<u64, ParseError> {
        let b = *body.get(i).ok_or(ParseError::at(i, ParseErrorKind::Header))?;
        if !(63..=126).contains(&b) {
            return Err(ParseError::at(i, ParseErrorKind::BadByte(b)));
        }
        Ok(u64::from(b - 63))
    };
    if byte(0)? < 63 {
        return Ok((byte(0)? as usize, 1));
    }
    if byte(1)? < 63 {
        let n = (byte(1)? << 12) | (byte(2)? << 6) | byte(3)?;
        return Ok((n as usize, 4));
    }
    let mut n = 0u64;
    for i in 2..8 {
        n = (n << 6) | byte(i)?;
    }
    Ok((n as usize, 8))
}

fn six_bit(b: u8, at: usize) -> Result<u8, ParseError> {
    if (63..=126).contains(&b) {
        Ok(b - 63)
    } else {
        Err(ParseError::at(at, ParseErrorKind::BadByte(b)))
    }
}

fn parse_graph6_line(line: &[u8]) -> Result<Parsed, ParseError> {
    let mut skip = 0;
    let mut line = line;
    if let Some(rest) = line.strip_prefix(b">>graph6<<") {
        skip = 10;
        line = rest;
    }
    let shift = |e: ParseError| ParseError::at(e.offset + skip, e.kind);
    let (n, hdr) = parse_size(line).map_err(shift)?;
    let body = &line[hdr..];
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    let mut edge_order = Vec::new();
    let mut bit = 0usize;
    let (mut i, mut j) = (0usize, 1usize);
    for (k, &b) in body.iter().enumerate() {
        let at = skip + hdr + k;
        let x = six_bit(b, at)?;
        for s in (0..6).rev() {
            if x >> s & 1 == 1 {
                if bit >= pairs {
                    return Err(ParseError::at(at, ParseErrorKind::OutOfRange { vertex: j, n }));
                }
                edge_order.push(Edge(i, j));
            }
            bit += 1;
            i += 1;
            if i == j {
                j += 1;
                i = 0;
            }
        }
    }
    if body.len() < need {
        return Err(ParseError::at(skip + line.len(), ParseErrorKind::Length));
    }
    if body.len() > need {
        // extra bytes of zero bits are still a length violation
        return Err(ParseError::at(skip + hdr + need, ParseErrorKind::Length));
    }
    let graph = MultiGraph::from_edges(n, edge_order.iter().map(|e| (e.0, e.1)))
        .expect("graph6 edges are in range and loopless");
    Ok(Parsed { graph, edge_order })
}

fn bits_for(n: usize) -> usize {
    let mut k = 0;
    while k < usize::BITS as usize && (n.saturating_sub(1)) >> k != 0 {
        k += 1;
    }
    k
}

fn parse_sparse6_line(line: &[u8]) -> Result<Parsed, ParseError> {
    let mut skip = 0;
    let mut line = line;
    if let Some(rest) = line.strip_prefix(b">>sparse6<<") {
        skip = 11;
        line = rest;
    }
    let Some(rest) = line.strip_prefix(b":") else {
        return Err(ParseError::at(skip, ParseErrorKind::Header));
    };
    skip += 1;
    let (n, hdr) = parse_size(rest).map_err(|e| ParseError::at(e.offset + skip, e.kind))?;
    let body = &rest[hdr..];
    let k = bits_for(n);

    let mut bits = Vec::with_capacity(body.len() * 6);
    for (idx, &b) in body.iter().enumerate() {
        let x = six_bit(b, skip + hdr + idx)?;
        for s in (0..6).rev() {
            bits.push((x >> s & 1, skip + hdr + idx));
        }
    }
    let mut edge_order = Vec::new();
    let mut v = 0usize;
    let mut pos = 0usize;
    while pos + 1 + k <= bits.len() {
        let b = bits[pos].0;
        let at = bits[pos].1;
        let mut x = 0usize;
        for t in 0..k {
            x = (x << 1) | bits[pos + 1 + t].0 as usize;
        }
        pos += 1 + k;
        if b == 1 {
            v += 1;
        }
        if v >= n {
            break;
        }
        if x > v {
            v = x;
            if v >= n {
                break;
            }
        } else if x == v {
            return Err(ParseError::at(at, ParseErrorKind::Loop(v)));
        } else {
            edge_order.push(Edge(x, v));
        }
    }
    let graph = MultiGraph::from_edges(n, edge_order.iter().map(|e| (e.0, e.1)))
        .expect("sparse6 edges are in range and loopless");
    Ok(Parsed { graph, edge_order })
}

fn parse_edge_lists(text: &[u8]) -> Result<Vec<Parsed>, ParseError> {
    // (byte offset of token, token) per line, comments removed
    let mut lines: Vec<(usize, Vec<(usize, &str)>)> = Vec::new();
    let mut offset = 0;
    let s = std::str::from_utf8(text).map_err(|e| {
        ParseError::at(e.valid_up_to(), ParseErrorKind::BadByte(text[e.valid_up_to()]))
    })?;
    for raw in s.split('\n') {
        let start = offset;
        offset += raw.len() + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut col = 0;
        for tok in content.split(|c: char| c.is_ascii_whitespace()) {
            if !tok.is_empty() {
                toks.push((start + col, tok));
            }
            col += tok.len() + 1;
        }
        if !toks.is_empty() {
            lines.push((start, toks));
        }
    }
    let int = |(at, tok): (usize, &str)| -> Result<usize, ParseError> {
        tok.parse().map_err(|_| ParseError::at(at, ParseErrorKind::Integer))
    };

    let mut out = Vec::new();
    let mut idx = 0;
    while idx < lines.len() {
        let (hdr_at, hdr) = &lines[idx];
        if hdr.len() != 2 {
            return Err(ParseError::at(*hdr_at, ParseErrorKind::Header));
        }
        let n = int(hdr[0])?;
        let m = int(hdr[1])?;
        idx += 1;
        let mut edge_order = Vec::new();
        let mut weighted = Vec::new();
        for e in 0..m {
            let Some((line_at, toks)) = lines.get(idx) else {
                return Err(ParseError::at(text.len(), ParseErrorKind::EdgeCount { expected: m, found: e }));
            };
            if toks.len() < 2 || toks.len() > 3 {
                return Err(ParseError::at(*line_at, ParseErrorKind::EdgeCount { expected: m, found: e }));
            }
            let u = int(toks[0])?;
            let v = int(toks[1])?;
            let mult = match toks.get(2) {
                Some(&t) => int(t)?,
                None => 1,
            };
            for (w, at) in [(u, toks[0].0), (v, toks[1].0)] {
                if w >= n {
                    return Err(ParseError::at(at, ParseErrorKind::OutOfRange { vertex: w, n }));
                }
            }
            if u == v {
                return Err(ParseError::at(toks[0].0, ParseErrorKind::Loop(u)));
            }
            if mult == 0 {
                return Err(ParseError::at(toks[2].0, ParseErrorKind::Multiplicity));
            }
            for _ in 0..mult {
                edge_order.push(Edge::new(u, v));
            }
            weighted.push((u, v, mult as u32));
            idx += 1;
        }
        let graph = MultiGraph::from_weighted_edges(n, weighted).expect("validated above");
        out.push(Parsed { graph, edge_order });
    }
    Ok(out)
}

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for s in [12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for s in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    }
}

/// graph6 line (no trailing newline). Fails on multigraphs.
pub fn to_graph6(g: &MultiGraph) -> Result<String, GraphError> {
    if !g.is_simple() {
        return Err(GraphError::NotSimple);
    }
    let n = g.n();
    let mut out = Vec::new();
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
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
    Ok(String::from_utf8(out).expect("printable ascii"))
}

/// sparse6 line with the `:` prefix; parallel edges are repeated.
pub fn to_sparse6(g: &MultiGraph) -> String {
    let n = g.n();
    let k = bits_for(n);
    let mut out = vec![b':'];
    push_size(&mut out, n);

    let mut bits: Vec<u8> = Vec::new();
    let push_num = |bits: &mut Vec<u8>, x: usize| {
        for s in (0..k).rev() {
            bits.push((x >> s & 1) as u8);
        }
    };
    // edges ordered by larger endpoint, then smaller
    let mut list: Vec<Edge> = g.edge_instances();
    list.sort_by_key(|e| (e.1, e.0));
    let mut lastj: Vertex = 0;
    for e in &list {
        let (i, j) = (e.0, e.1);
        if j == lastj {
            bits.push(0);
        } else {
            bits.push(1);
            if j > lastj + 1 {
                push_num(&mut bits, j);
                bits.push(0);
            }
            lastj = j;
        }
        push_num(&mut bits, i);
    }
    let rem = (6 - bits.len() % 6) % 6;
    if rem > 0 {
        if n >= 2 && rem > k && lastj == n - 2 && n == 1 << k {
            bits.push(0);
            bits.extend(std::iter::repeat_n(1, rem - 1));
        } else {
            bits.extend(std::iter::repeat_n(1, rem));
        }
    }
    for chunk in bits.chunks(6) {
        let x = chunk.iter().fold(0u8, |a, &b| (a << 1) | b);
        out.push(x + 63);
    }
    String::from_utf8(out).expect("printable ascii")
}

/// Edge-list text: header `n m`, then one `u v` or `u v mult` line per pair.
pub fn to_edge_list(g: &MultiGraph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edges().len());
    for &(e, m) in g.edges() {
        if m == 1 {
            s.push_str(&format!("{} {}\n", e.0, e.1));
        } else {
            s.push_str(&format!("{} {} {}\n", e.0, e.1, m));
        }
    }
    s
}

pub fn serialize(g: &MultiGraph, format: Format) -> Result<String, GraphError> {
    match format {
        Format::Graph6 => to_graph6(g),
        Format::Sparse6 => Ok(to_sparse6(g)),
        Format::EdgeList => Ok(to_edge_list(g)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use proptest::prelude::*;

    #[test]
    fn graph6_k4() {
        let g = parse_graph(b"C~", Format::Graph6).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(to_graph6(&families::complete(4)).unwrap(), "C~");
    }

    #[test]
    fn graph6_petersen_round_trip() {
        let text = "IheA@GUAo";
        let g = parse_graph(text.as_bytes(), Format::Graph6).unwrap();
        assert_eq!(g.n(), 10);
        assert_eq!(g.edge_count(), 15);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
        assert_eq!(to_graph6(&g).unwrap(), text);
    }

    #[test]
    fn graph6_header_prefix_is_accepted() {
        let g = parse_graph(b">>graph6<<C~", Format::Graph6).unwrap();
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn graph6_rejects_vertex_beyond_header() {
        // header says 5 vertices (10 pair bits, 2 bytes); a third byte would
        // address pairs with vertex 5 and up, the last bit reaching vertex 7
        let err = parse_graph(b"D??@", Format::Graph6).unwrap_err();
        assert_eq!(err.offset, 3);
        assert!(matches!(err.kind, ParseErrorKind::OutOfRange { n: 5, .. }));
        // also a set padding bit in the last byte
        let err = parse_graph(b"D?@", Format::Graph6).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::OutOfRange { .. }));
    }

    #[test]
    fn graph6_rejects_short_body_and_bad_bytes() {
        assert_eq!(parse_graph(b"C", Format::Graph6).unwrap_err().kind, ParseErrorKind::Length);
        assert_eq!(
            parse_graph(b"C ", Format::Graph6).unwrap_err(),
            ParseError::at(1, ParseErrorKind::BadByte(b' '))
        );
    }

    #[test]
    fn edge_list_multiplicity() {
        let g = parse_graph(b"2 1\n0 1 2\n", Format::EdgeList).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), &[(Edge(0, 1), 2)]);
    }

    #[test]
    fn edge_list_errors_name_offsets() {
        let err = parse_graph(b"3 1\n0 3\n", Format::EdgeList).unwrap_err();
        assert_eq!(err, ParseError::at(6, ParseErrorKind::OutOfRange { vertex: 3, n: 3 }));
        let err = parse_graph(b"3 1\n2 2\n", Format::EdgeList).unwrap_err();
        assert_eq!(err, ParseError::at(4, ParseErrorKind::Loop(2)));
        let err = parse_graph(b"3\n", Format::EdgeList).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Header);
    }

    #[test]
    fn sparse6_known_encoding() {
        // example from the format description: n=7, edges 0-1 0-2 1-2 5-6
        let g = parse_graph(b":Fa@x^", Format::Sparse6).unwrap();
        assert_eq!(g.n(), 7);
        let pairs: Vec<Edge> = g.edges().iter().map(|&(e, _)| e).collect();
        assert_eq!(pairs, vec![Edge(0, 1), Edge(0, 2), Edge(1, 2), Edge(5, 6)]);
        assert_eq!(to_sparse6(&g), ":Fa@x^");
    }

    #[test]
    fn sparse6_loop_rejected() {
        // b=0 x=0 at v=0 encodes the loop {0,0}
        let err = parse_graph(b":A?", Format::Sparse6).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Loop(0)));
    }

    #[test]
    fn sparse6_multigraph() {
        let g = MultiGraph::from_weighted_edges(4, [(0, 1, 2), (2, 3, 1), (1, 3, 3)]).unwrap();
        let s = to_sparse6(&g);
        let back = parse_graph(s.as_bytes(), Format::Sparse6).unwrap();
        assert!(back.same_structure(&g));
    }

    #[test]
    fn graph6_refuses_multigraph() {
        let g = MultiGraph::from_weighted_edges(2, [(0, 1, 2)]).unwrap();
        assert_eq!(to_graph6(&g), Err(GraphError::NotSimple));
    }

    #[test]
    fn multi_line_files() {
        let all = parse_all(b"C~\n\nBw\n", Format::Graph6).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[1].graph.edge_count(), 3);
        let err = parse_all(b"C~\nC", Format::Graph6).unwrap_err();
        assert_eq!(err.offset, 4);
    }

    fn arb_multigraph(max_n: usize, simple: bool) -> impl Strategy<Value = MultiGraph> {
        (1..=max_n).prop_flat_map(move |n| {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            let hi = if simple { 1u32 } else { 3 };
            proptest::collection::vec(0..=hi, pairs.len()).prop_map(move |ms| {
                let es = pairs.iter().zip(ms).filter(|(_, m)| *m > 0).map(|(&(u, v), m)| (u, v, m));
                MultiGraph::from_weighted_edges(n, es).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn sparse6_and_edge_list_round_trip(g in arb_multigraph(70, false)) {
            for f in [Format::Sparse6, Format::EdgeList] {
                let text = serialize(&g, f).unwrap();
                let back = parse_graph(text.as_bytes(), f).unwrap();
                prop_assert!(back.same_structure(&g), "{f}: {text}");
                prop_assert_eq!(serialize(&back, f).unwrap(), text);
            }
        }

        #[test]
        fn graph6_round_trip(g in arb_multigraph(70, true)) {
            let text = to_graph6(&g).unwrap();
            let back = parse_graph(text.as_bytes(), Format::Graph6).unwrap();
            prop_assert!(back.same_structure(&g));
            prop_assert_eq!(to_graph6(&back).unwrap(), text);
        }
    }
}
