//! Plain-text edge lists.
//!
//! ```text
//! # comment
//! #! key=value      (metadata, also a comment to the graph reader)
//! n m
//! u v w             (m lines, 0-based ids, decimal weight)
//! ```

use std::io::{self, BufRead, Write};

use super::Graph;
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut graph: Option<(Graph, usize)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match graph.as_mut() {
            None => {
                let [n, m] = fields[..] else {
                    return Err(parse_err(line_no, "expected header \"n m\""));
                };
                let n: usize = n
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad node count {n:?}")))?;
                let m: usize = m
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad edge count {m:?}")))?;
                graph = Some((Graph::new(n), m));
            }
            Some((g, m)) => {
                if g.m() == *m {
                    return Err(parse_err(line_no, format!("more than the declared {m} edges")));
                }
                let [u, v, w] = fields[..] else {
                    return Err(parse_err(line_no, "expected edge \"u v w\""));
                };
                let u: usize = u
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad node id {u:?}")))?;
                let v: usize = v
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad node id {v:?}")))?;
                let w: f64 = w.parse().map_err(|_| parse_err(line_no, format!("bad weight {w:?}")))?;
                g.add_edge(u, v, w).map_err(|e| parse_err(line_no, e.to_string()))?;
            }
        }
    }
    match graph {
        None => Err(parse_err(0, "missing header \"n m\"")),
        Some((g, m)) if g.m() != m => Err(parse_err(
            text.lines().count(),
            format!("declared {m} edges but found {}", g.m()),
        )),
        Some((g, _)) => Ok(g),
    }
}

pub fn read_edge_list<R: BufRead>(mut reader: R) -> Result<Graph> {
    let mut text = String::new();
    reader
        .read_to_string(&mut text)
        .map_err(|e| parse_err(0, e.to_string()))?;
    parse_edge_list(&text)
}

/// `#! key=value` lines, in file order.
pub fn parse_metadata(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.trim().strip_prefix("#!"))
        .filter_map(|kv| {
            let (k, v) = kv.split_once('=')?;
            Some((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

/// Edges are written in id order; weights use the shortest round-trip
/// decimal form.
pub fn write_edge_list<W: Write>(g: &Graph, metadata: &[(String, String)], mut out: W) -> io::Result<()> {
    for (k, v) in metadata {
        writeln!(out, "#! {k}={v}")?;
    }
    writeln!(out, "{} {}", g.n(), g.m())?;
    for e in g.edges() {
        writeln!(out, "{} {} {:?}", e.u, e.v, e.w)?;
    }
    Ok(())
}

pub fn to_edge_list(g: &Graph, metadata: &[(String, String)]) -> String {
    let mut buf = Vec::new();
    write_edge_list(g, metadata, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_small_file() {
        let g = parse_edge_list("# example\n3 2\n0 1 1.0\n1 2 2.0\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert_eq!(g.weight(1, 2), Some(2.0));
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_edge_list("2 1\n0 0 1.0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, ref message } if message.contains("self-loop")));
        let err = parse_edge_list("2 1\n0 1 -1.0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, ref message } if message.contains("weight")));
        let err = parse_edge_list("3 2\n0 1 1\n# c\n1 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, ref message } if message.contains("duplicate")));
        let err = parse_edge_list("3 2\n0 1 1\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(parse_edge_list("3 2\n0 1 1\n").is_err());
        assert!(parse_edge_list("3 1\n0 1 1\n1 2 1\n").is_err());
        assert!(parse_edge_list("2 1\n0 5 1\n").is_err());
    }

    #[test]
    fn write_then_read_preserves_graph_and_metadata() {
        let g = Graph::from_edges(4, [(0, 1, 1.0), (2, 3, 0.1), (1, 3, 1e-3)]).unwrap();
        let meta = vec![
            ("base".to_string(), "heawood".to_string()),
            ("copies".to_string(), "2".to_string()),
        ];
        let text = to_edge_list(&g, &meta);
        assert!(text.contains("0 1 1.0\n"));
        assert_eq!(parse_edge_list(&text).unwrap(), g);
        assert_eq!(parse_metadata(&text), meta);
    }
}
