//! Graph file formats: DIMACS (`p edge n m` / `e u v`, 1-based), plain edge
//! lists (`u v`, 0-based, optional `n <count>` line) and JSON
//! (`{"n": .., "edges": [[u, v], ..]}`).

use std::fmt;
use std::str::FromStr;

use itp_core::Graph;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dimacs,
    EdgeList,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "dimacs" => Ok(Format::Dimacs),
            "edgelist" | "el" => Ok(Format::EdgeList),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected dimacs, edgelist or json)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Dimacs => "dimacs",
            Format::EdgeList => "edgelist",
            Format::Json => "json",
        })
    }
}

impl Format {
    /// Guess from a file extension; edge list otherwise.
    pub fn from_path(path: &std::path::Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("dimacs" | "col" | "clq") => Format::Dimacs,
            Some("json") => Format::Json,
            _ => Format::EdgeList,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; 0 when no line applies.
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

#[derive(Debug, Clone)]
pub struct Parsed {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

pub fn parse_graph(text: &str, format: Format) -> Result<Parsed, ParseError> {
    match format {
        Format::Dimacs => parse_dimacs(text),
        Format::EdgeList => parse_edgelist(text),
        Format::Json => parse_json(text),
    }
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    match tok {
        None => err(line, format!("missing {what}")),
        Some(t) => t.parse().or_else(|_| err(line, format!("{what} {t:?} is not a non-negative integer"))),
    }
}

/// Adds edges, turning self-loops into errors and duplicates into warnings.
struct Builder {
    n: usize,
    edges: Vec<(usize, usize, usize)>,
}

impl Builder {
    fn finish(self) -> Result<Parsed, ParseError> {
        let mut g = Graph::new(self.n);
        let mut warnings = Vec::new();
        for (u, v, line) in self.edges {
            if u == v {
                return err(line, format!("self-loop on node {u}"));
            }
            if u >= self.n || v >= self.n {
                return err(line, format!("edge ({u}, {v}) out of range for {} nodes", self.n));
            }
            if !g.add_edge(u, v).expect("checked endpoints") {
                warnings.push(format!("line {line}: duplicate edge ({u}, {v}) ignored"));
            }
        }
        Ok(Parsed { graph: g, warnings })
    }
}

fn parse_dimacs(text: &str) -> Result<Parsed, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return err(line, "second problem line");
                }
                match toks.next() {
                    Some("edge" | "col") => {}
                    other => return err(line, format!("expected `p edge <n> <m>`, found kind {other:?}")),
                }
                let n = number(toks.next(), line, "node count")?;
                let m = number(toks.next(), line, "edge count")?;
                header = Some((n, m, line));
            }
            Some("e") => {
                let Some((n, _, _)) = header else {
                    return err(line, "edge before the `p edge` line");
                };
                let u = number(toks.next(), line, "endpoint")?;
                let v = number(toks.next(), line, "endpoint")?;
                if u == 0 || v == 0 || u > n || v > n {
                    return err(line, format!("endpoint out of range 1..={n} in `e {u} {v}`"));
                }
                edges.push((u - 1, v - 1, line));
            }
            Some(t) => return err(line, format!("unknown line type {t:?}")),
        }
    }
    let Some((n, m, hline)) = header else {
        return err(0, "missing `p edge <n> <m>` line");
    };
    let declared = edges.len();
    let mut parsed = Builder { n, edges }.finish()?;
    if declared != m {
        parsed
            .warnings
            .push(format!("line {hline}: header declares {m} edges, file lists {declared}"));
    }
    Ok(parsed)
}

fn parse_edgelist(text: &str) -> Result<Parsed, ParseError> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen_edge = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let first = toks.next().unwrap();
        if first == "n" {
            if seen_edge || declared.is_some() {
                return err(line, "`n <count>` must be the first line");
            }
            declared = Some(number(toks.next(), line, "node count")?);
        } else {
            let u = number(Some(first), line, "endpoint")?;
            let v = number(toks.next(), line, "endpoint")?;
            if toks.next().is_some() {
                return err(line, "expected exactly two ids");
            }
            if let Some(n) = declared {
                if u >= n || v >= n {
                    return err(line, format!("edge ({u}, {v}) out of range for {n} declared nodes"));
                }
            }
            edges.push((u, v, line));
            seen_edge = true;
            continue;
        }
        if toks.next().is_some() {
            return err(line, "trailing tokens");
        }
    }
    let inferred = edges.iter().map(|&(u, v, _)| u.max(v) + 1).max().unwrap_or(0);
    Builder {
        n: declared.unwrap_or(inferred),
        edges,
    }
    .finish()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

fn parse_json(text: &str) -> Result<Parsed, ParseError> {
    let doc: JsonGraph = serde_json::from_str(text).or_else(|e| err(e.line(), e.to_string()))?;
    Builder {
        n: doc.n,
        edges: doc.edges.into_iter().map(|(u, v)| (u, v, 0)).collect(),
    }
    .finish()
}

pub fn write_graph(g: &Graph, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Dimacs => {
            out.push_str(&format!("p edge {} {}\n", g.n(), g.edge_count()));
            for (u, v) in g.edges() {
                out.push_str(&format!("e {} {}\n", u + 1, v + 1));
            }
        }
        Format::EdgeList => {
            out.push_str(&format!("n {}\n", g.n()));
            for (u, v) in g.edges() {
                out.push_str(&format!("{u} {v}\n"));
            }
        }
        Format::Json => {
            let doc = JsonGraph {
                n: g.n(),
                edges: g.edges().collect(),
            };
            out = serde_json::to_string(&doc).expect("graph serializes");
            out.push('\n');
        }
    }
    out
}
