//! Textual graph formats: graph6 and a plain edge list.
//!
//! graph6 follows the published format: a header encoding the order (one
//! byte up to 62 vertices, `~` plus three bytes up to 258047), then the
//! upper triangle of the adjacency matrix in column-major order packed
//! six bits per printable byte. The edge-list format is a first line with
//! the order followed by one `u v` pair per line. Parse errors carry
//! 1-based byte or line positions.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Supported textual graph encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

const G6_MAX_ORDER: usize = 258_047;

fn parse_err(location: String, message: impl Into<String>) -> Error {
    Error::Parse {
        location,
        message: message.into(),
    }
}

fn g6_value(byte: u8, pos: usize) -> Result<usize> {
    if !(63..=126).contains(&byte) {
        return Err(parse_err(
            format!("byte {pos}"),
            format!("invalid graph6 byte 0x{byte:02x}"),
        ));
    }
    Ok(usize::from(byte) - 63)
}

/// Decodes a single graph6 string. An optional `>>graph6<<` prefix and
/// trailing whitespace are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(parse_err("byte 1".into(), "empty graph6 input"));
    }
    let (n, mut pos) = if bytes[0] == b'~' {
        if bytes.len() >= 2 && bytes[1] == b'~' {
            return Err(parse_err(
                "byte 2".into(),
                format!("order beyond the supported maximum {G6_MAX_ORDER}"),
            ));
        }
        if bytes.len() < 4 {
            return Err(parse_err(
                format!("byte {}", bytes.len()),
                "truncated extended order header",
            ));
        }
        let n =
            (g6_value(bytes[1], 2)? << 12) | (g6_value(bytes[2], 3)? << 6) | g6_value(bytes[3], 4)?;
        (n, 4)
    } else {
        (g6_value(bytes[0], 1)?, 1)
    };
    let bits_needed = n * n.saturating_sub(1) / 2;
    let data_bytes = bits_needed.div_ceil(6);
    if bytes.len() < pos + data_bytes {
        return Err(parse_err(
            format!("byte {}", bytes.len()),
            format!(
                "truncated adjacency data: need {} bytes for order {n}, found {}",
                data_bytes,
                bytes.len() - pos
            ),
        ));
    }
    if bytes.len() > pos + data_bytes {
        return Err(parse_err(
            format!("byte {}", pos + data_bytes + 1),
            "unexpected trailing data",
        ));
    }
    let mut g = Graph::new(n);
    let mut bit_index = 0usize;
    let mut value = 0usize;
    let mut have = 0usize;
    for v in 1..n {
        for u in 0..v {
            if have == 0 {
                value = g6_value(bytes[pos], pos + 1)?;
                pos += 1;
                have = 6;
            }
            have -= 1;
            if (value >> have) & 1 == 1 {
                g.add_edge(u, v).expect("indices below order");
            }
            bit_index += 1;
        }
    }
    debug_assert_eq!(bit_index, bits_needed);
    Ok(g)
}

/// Encodes a graph as a graph6 string. Orders above 258047 are rejected.
pub fn render_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > G6_MAX_ORDER {
        return Err(Error::SizeLimit {
            op: "render_graph6",
            given: n,
            limit: G6_MAX_ORDER,
        });
    }
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut value = 0u8;
    let mut have = 0u8;
    for v in 1..n {
        for u in 0..v {
            value = (value << 1) | u8::from(g.has_edge(u, v));
            have += 1;
            if have == 6 {
                out.push(value + 63);
                value = 0;
                have = 0;
            }
        }
    }
    if have > 0 {
        out.push((value << (6 - have)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Parses the edge-list format: first line the order, then `u v` lines.
/// Blank lines are skipped; positions in errors are 1-based line numbers.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| parse_err("line 1".into(), "empty edge-list input"))?;
    let n: usize = header.parse().map_err(|_| {
        parse_err(
            format!("line {lineno}"),
            format!("expected vertex count, found {header:?}"),
        )
    })?;
    let mut g = Graph::new(n);
    for (lineno, line) in lines {
        let loc = || format!("line {lineno}");
        let mut tokens = line.split_whitespace();
        let mut endpoint = |name: &str| -> Result<usize> {
            tokens
                .next()
                .ok_or_else(|| parse_err(loc(), format!("missing {name} endpoint")))?
                .parse()
                .map_err(|_| parse_err(loc(), format!("{name} endpoint is not a vertex id")))
        };
        let u = endpoint("first")?;
        let v = endpoint("second")?;
        if tokens.next().is_some() {
            return Err(parse_err(loc(), "expected exactly two endpoints"));
        }
        g.add_edge(u, v)
            .map_err(|e| parse_err(loc(), e.to_string()))?;
    }
    Ok(g)
}

/// Renders the edge-list format with edges in lexicographic order.
pub fn render_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Guesses the format: a first non-blank line that is purely a number is
/// an edge list, anything else is graph6.
pub fn detect_format(text: &str) -> GraphFormat {
    match text.lines().map(str::trim).find(|l| !l.is_empty()) {
        Some(line) if !line.is_empty() && line.bytes().all(|b| b.is_ascii_digit()) => {
            GraphFormat::EdgeList
        }
        _ => GraphFormat::Graph6,
    }
}

/// Parses in the given format, or detects it when `format` is `None`.
pub fn parse_graph(text: &str, format: Option<GraphFormat>) -> Result<Graph> {
    match format.unwrap_or_else(|| detect_format(text)) {
        GraphFormat::Graph6 => parse_graph6(text),
        GraphFormat::EdgeList => parse_edge_list(text),
    }
}

/// Renders in the given format (graph6 may reject extreme orders).
pub fn render_graph(g: &Graph, format: GraphFormat) -> Result<String> {
    match format {
        GraphFormat::Graph6 => render_graph6(g),
        GraphFormat::EdgeList => Ok(render_edge_list(g)),
    }
}
