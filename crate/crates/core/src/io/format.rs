//! The line-oriented `.kg` document format.
//!
//! ```text
//! kgraph 1 k=2
//! vertex v0_0
//! edge e1_0_0 v0_0 v1_0 1
//! square e1_0_0 e2_1_0 e2_0_0 e1_0_1
//! ```
//!
//! `edge <id> <range> <source> <color>` with 1-based colors;
//! `square <f> <g> <gp> <fp>` means `f·g = gp·fp`. Everything after `#` is a
//! comment. Directives after the header may appear in any order; serialization
//! is canonical (sorted, squares oriented with the lower color first).

use std::fmt::Write as _;

use thiserror::Error;

use crate::kgraph::{build_kgraph, EdgeSpec, FactorizationTable, GraphError, KGraph, Skeleton, SquareSpec};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid k-graph: {0}")]
    Validation(#[from] GraphError),
}

impl FormatError {
    pub fn line(&self) -> Option<usize> {
        match self {
            FormatError::Parse { line, .. } => Some(*line),
            FormatError::Validation(_) => None,
        }
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: &line[s..i], column: line[..s].chars().count() + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], column: line[..s].chars().count() + 1 });
    }
    out
}

pub fn parse_kgraph(text: &str) -> Result<KGraph, FormatError> {
    let mut k = None;
    let mut skel = Skeleton::default();
    let mut table = FactorizationTable::default();
    let mut declared_edges = std::collections::HashSet::new();
    let mut pending_squares = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(head) = toks.first() else { continue };
        let err = |column: usize, message: String| FormatError::Parse { line: line_no, column, message };
        let arity = |n: usize| -> Result<(), FormatError> {
            if toks.len() != n {
                let column = toks.get(n).map_or(head.column, |t| t.column);
                Err(err(column, format!("`{}` takes {} fields, found {}", head.text, n - 1, toks.len() - 1)))
            } else {
                Ok(())
            }
        };
        match (head.text, k) {
            ("kgraph", None) => {
                arity(3)?;
                let version: u32 = toks[1]
                    .text
                    .parse()
                    .map_err(|_| err(toks[1].column, format!("bad version `{}`", toks[1].text)))?;
                if version != FORMAT_VERSION {
                    return Err(err(toks[1].column, format!("unsupported format version {version}")));
                }
                let rank = toks[2]
                    .text
                    .strip_prefix("k=")
                    .and_then(|s| s.parse::<usize>().ok())
                    .filter(|&r| r >= 1)
                    .ok_or_else(|| err(toks[2].column, format!("expected k=<positive integer>, found `{}`", toks[2].text)))?;
                k = Some(rank);
                skel.k = rank;
            }
            ("kgraph", Some(_)) => return Err(err(head.column, "duplicate header".into())),
            (_, None) => {
                return Err(err(head.column, "missing `kgraph <version> k=<k>` header".into()))
            }
            ("vertex", Some(_)) => {
                arity(2)?;
                skel.vertices.push(toks[1].text.to_owned());
            }
            ("edge", Some(rank)) => {
                arity(5)?;
                let color: usize = toks[4]
                    .text
                    .parse()
                    .map_err(|_| err(toks[4].column, format!("bad color `{}`", toks[4].text)))?;
                if color == 0 || color > rank {
                    return Err(err(toks[4].column, format!("color {color} outside 1..={rank}")));
                }
                declared_edges.insert(toks[1].text.to_owned());
                skel.edges.push(EdgeSpec {
                    id: toks[1].text.to_owned(),
                    range: toks[2].text.to_owned(),
                    source: toks[3].text.to_owned(),
                    color,
                });
            }
            ("square", Some(_)) => {
                arity(5)?;
                for t in &toks[1..] {
                    pending_squares.push((line_no, t.column, t.text.to_owned()));
                }
                table.squares.push(SquareSpec::new(toks[1].text, toks[2].text, toks[3].text, toks[4].text));
            }
            (other, Some(_)) => return Err(err(head.column, format!("unknown directive `{other}`"))),
        }
    }
    if k.is_none() {
        return Err(FormatError::Parse { line: 1, column: 1, message: "empty document: missing header".into() });
    }
    let known_vertices: std::collections::HashSet<&str> = skel.vertices.iter().map(String::as_str).collect();
    for e in &skel.edges {
        for endpoint in [&e.range, &e.source] {
            if !known_vertices.contains(endpoint.as_str()) {
                let (line, column) = locate(text, "edge", &e.id, endpoint);
                return Err(FormatError::Parse { line, column, message: format!("edge `{}` references unknown vertex `{endpoint}`", e.id) });
            }
        }
    }
    for (line, column, name) in pending_squares {
        if !declared_edges.contains(&name) {
            return Err(FormatError::Parse { line, column, message: format!("square references unknown edge `{name}`") });
        }
    }
    Ok(build_kgraph(skel, table)?)
}

/// Line and column of `needle` on the `directive id ...` line.
fn locate(text: &str, directive: &str, id: &str, needle: &str) -> (usize, usize) {
    for (idx, raw) in text.lines().enumerate() {
        let toks = tokens(raw.split('#').next().unwrap_or(""));
        if toks.len() > 1 && toks[0].text == directive && toks[1].text == id {
            if let Some(t) = toks[2..].iter().find(|t| t.text == needle) {
                return (idx + 1, t.column);
            }
            return (idx + 1, toks[0].column);
        }
    }
    (1, 1)
}

pub fn serialize_kgraph(g: &KGraph) -> String {
    let mut out = String::new();
    let skel = g.skeleton();
    writeln!(out, "kgraph {FORMAT_VERSION} k={}", g.k()).unwrap();
    for v in &skel.vertices {
        writeln!(out, "vertex {v}").unwrap();
    }
    for e in &skel.edges {
        writeln!(out, "edge {} {} {} {}", e.id, e.range, e.source, e.color).unwrap();
    }
    for sq in g.squares().squares {
        writeln!(out, "square {} {} {} {}", sq.f, sq.g, sq.gp, sq.fp).unwrap();
    }
    out
}
