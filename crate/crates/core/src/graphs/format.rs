//! Text and JSON encodings of graphs.
//!
//! Text form:
//!
//! ```text
//! n 3 reflexive base 2
//! e 0 1
//! e 0 2
//! e 1 2
//! ```
//!
//! Vertices are 0-indexed; `#` starts a comment line. Loops may be listed for
//! reflexive graphs and are ignored; they are never emitted.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{FiniteGraph, PointedReflexiveGraph};
use crate::error::{Error, Result};

/// A graph together with an optional base vertex, as read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDocument {
    pub graph: FiniteGraph,
    pub base: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub reflexive: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<usize>,
}

impl GraphDocument {
    pub fn plain(graph: FiniteGraph) -> Self {
        Self { graph, base: None }
    }

    pub fn pointed(graph: &PointedReflexiveGraph) -> Self {
        Self { graph: graph.graph().clone(), base: Some(graph.base()) }
    }

    /// Accepts either encoding; input whose first non-blank character is `{`
    /// is read as JSON.
    pub fn parse(input: &str) -> Result<Self> {
        if input.trim_start().starts_with('{') {
            Self::from_json(input)
        } else {
            Self::from_text(input)
        }
    }

    pub fn from_text(input: &str) -> Result<Self> {
        let mut lines = input
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (header_line, header) =
            lines.next().ok_or(Error::Parse { line: 1, message: "missing header line".into() })?;
        let parse_err = |line: usize, message: String| Error::Parse { line, message };

        let mut tokens = header.split_whitespace();
        if tokens.next() != Some("n") {
            return Err(parse_err(header_line, "header must start with `n`".into()));
        }
        let n: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(header_line, "expected vertex count".into()))?;
        let mut reflexive = None;
        let mut base = None;
        while let Some(token) = tokens.next() {
            match token {
                "reflexive" => reflexive = Some(true),
                "irreflexive" => reflexive = Some(false),
                "base" => {
                    let b = tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| parse_err(header_line, "expected base vertex".into()))?;
                    base = Some(b);
                }
                other => return Err(parse_err(header_line, format!("unexpected token `{other}`"))),
            }
        }
        let reflexive = reflexive.unwrap_or(base.is_some());

        let mut edges = Vec::new();
        for (line, text) in lines {
            let parts: Vec<&str> = text.split_whitespace().collect();
            match parts.as_slice() {
                ["e", u, v] => {
                    let u = u.parse().map_err(|_| parse_err(line, format!("bad vertex `{u}`")))?;
                    let v = v.parse().map_err(|_| parse_err(line, format!("bad vertex `{v}`")))?;
                    edges.push((u, v));
                }
                _ => return Err(parse_err(line, format!("expected `e <u> <v>`, got `{text}`"))),
            }
        }
        Self::assemble(n, &edges, reflexive, base)
    }

    pub fn from_json(input: &str) -> Result<Self> {
        let json: GraphJson = serde_json::from_str(input)?;
        Self::try_from(json)
    }

    fn assemble(n: usize, edges: &[(usize, usize)], reflexive: bool, base: Option<usize>) -> Result<Self> {
        let graph = FiniteGraph::from_edges(n, edges, reflexive)?;
        if let Some(b) = base {
            PointedReflexiveGraph::new(graph.clone(), b)?;
        }
        Ok(Self { graph, base })
    }

    pub fn to_text(&self) -> String {
        let mut out =
            format!("n {} {}", self.graph.len(), if self.graph.is_reflexive() { "reflexive" } else { "irreflexive" });
        if let Some(b) = self.base {
            let _ = write!(out, " base {b}");
        }
        out.push('\n');
        for (u, v) in self.graph.edges() {
            let _ = writeln!(out, "e {u} {v}");
        }
        out
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.graph.len(),
            edges: self.graph.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            reflexive: self.graph.is_reflexive(),
            base: self.base,
        }
    }

    pub fn into_pointed(self) -> Result<PointedReflexiveGraph> {
        let base = self.base.ok_or_else(|| Error::Precondition("graph has no base vertex".into()))?;
        PointedReflexiveGraph::new(self.graph, base)
    }
}

impl TryFrom<GraphJson> for GraphDocument {
    type Error = Error;

    fn try_from(json: GraphJson) -> Result<Self> {
        let edges: Vec<(usize, usize)> = json.edges.iter().map(|&[u, v]| (u, v)).collect();
        Self::assemble(json.n, &edges, json.reflexive, json.base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::f_reduce;

    #[test]
    fn parse_text_header_variants() {
        let doc = GraphDocument::parse("# K2\nn 2 irreflexive\ne 0 1\n").unwrap();
        assert_eq!(doc.graph, FiniteGraph::complete(2));
        assert_eq!(doc.base, None);

        let doc = GraphDocument::parse("n 2\ne 1 0").unwrap();
        assert!(!doc.graph.is_reflexive());

        let doc = GraphDocument::parse("n 2 base 1\ne 0 1\ne 0 0").unwrap();
        assert!(doc.graph.is_reflexive());
        assert_eq!(doc.base, Some(1));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = GraphDocument::parse("n 2\n\ne 0 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(matches!(GraphDocument::parse(""), Err(Error::Parse { line: 1, .. })));
        assert!(GraphDocument::parse("n 2 sideways").is_err());
        assert!(GraphDocument::parse("n 2\ne 0 5").is_err());
        // Base that does not dominate.
        assert!(GraphDocument::parse("n 3 reflexive base 0\ne 0 1").is_err());
    }

    #[test]
    fn text_and_json_encodings_agree() {
        let p = f_reduce(&FiniteGraph::path(3)).unwrap();
        let doc = GraphDocument::pointed(&p);
        let text = doc.to_text();
        assert!(text.starts_with("n 4 reflexive base 3\n"));
        assert_eq!(GraphDocument::parse(&text).unwrap(), doc);

        let json = serde_json::to_string(&doc.to_json()).unwrap();
        assert_eq!(GraphDocument::parse(&json).unwrap(), doc);
        assert_eq!(GraphDocument::parse(&json).unwrap().into_pointed().unwrap(), p);
    }

    #[test]
    fn json_without_base_omits_field() {
        let doc = GraphDocument::plain(FiniteGraph::complete(2));
        let json = serde_json::to_value(doc.to_json()).unwrap();
        assert_eq!(json, serde_json::json!({"n": 2, "edges": [[0, 1]], "reflexive": false}));
    }
}
