//! Graph file formats.
//!
//! JSON: `{"vertices":[{"id":"u","weight":0}],"edges":[{"id":"e","ends":["u","v"],"length":"3/2"}]}`
//! with `weight` and `length` optional. Edge list: one `u v [edge-id]` per
//! line, `#` starts a comment; unnamed edges become `e1`, `e2`, ... by line order.

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};
use crate::scalar::{format_rational, parse_rational, Rational};

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("JSON error at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("line {line}: {message}")]
    Text { line: usize, message: String },
    #[error("edge {edge:?}: {message}")]
    Length { edge: String, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl ParseError {
    /// Whether the failure is a disconnected graph rather than malformed input.
    pub fn is_disconnected(&self) -> bool {
        matches!(self, ParseError::Graph(GraphError::Disconnected))
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDoc {
    id: String,
    #[serde(default)]
    weight: u32,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    id: String,
    ends: [String; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    length: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: Vec<VertexDoc>,
    edges: Vec<EdgeDoc>,
}

/// A parsed graph with its optional edge lengths (by edge index).
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub lengths: Vec<Option<Rational>>,
}

impl ParsedGraph {
    /// All lengths, if every edge has one.
    pub fn complete_lengths(&self) -> Option<Vec<Rational>> {
        self.lengths.iter().cloned().collect()
    }
}

pub fn parse_json(text: &str) -> Result<ParsedGraph, ParseError> {
    let doc: GraphDoc = serde_json::from_str(text)
        .map_err(|e| ParseError::Json { line: e.line(), column: e.column(), message: e.to_string() })?;
    let mut lengths = Vec::with_capacity(doc.edges.len());
    for e in &doc.edges {
        lengths.push(match &e.length {
            None => None,
            Some(s) => {
                let value =
                    parse_rational(s).map_err(|err| ParseError::Length { edge: e.id.clone(), message: err.to_string() })?;
                if value <= Rational::from_integer(0) {
                    return Err(ParseError::Length { edge: e.id.clone(), message: "length must be positive".into() });
                }
                Some(value)
            }
        });
    }
    let graph = Graph::new(
        doc.vertices.into_iter().map(|v| (v.id, v.weight)),
        doc.edges.into_iter().map(|e| {
            let [a, b] = e.ends;
            (e.id, a, b)
        }),
    )?;
    Ok(ParsedGraph { graph, lengths })
}

pub fn parse_edge_list(text: &str) -> Result<ParsedGraph, ParseError> {
    let mut vertices: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String, String)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let (a, b, id) = match tokens.as_slice() {
            [a, b] => (*a, *b, format!("e{}", edges.len() + 1)),
            [a, b, id] => (*a, *b, id.to_string()),
            _ => {
                return Err(ParseError::Text { line: n + 1, message: format!("expected \"u v [edge-id]\", got {line:?}") })
            }
        };
        for v in [a, b] {
            if !vertices.iter().any(|x| x == v) {
                vertices.push(v.to_string());
            }
        }
        if edges.iter().any(|(e, _, _)| *e == id) {
            return Err(ParseError::Text { line: n + 1, message: format!("duplicate edge id {id:?}") });
        }
        edges.push((id, a.to_string(), b.to_string()));
    }
    let count = edges.len();
    let graph = Graph::new(vertices.into_iter().map(|v| (v, 0)), edges)?;
    Ok(ParsedGraph { graph, lengths: vec![None; count] })
}

/// Parse by content: JSON when the first non-blank character is `{`.
pub fn parse_graph(text: &str) -> Result<ParsedGraph, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_edge_list(text)
    }
}

/// Serialize to the JSON format; `lengths` (by edge index) are optional.
pub fn to_json(g: &Graph, lengths: Option<&[Rational]>) -> serde_json::Value {
    let doc = GraphDoc {
        vertices: g.vertices().iter().map(|v| VertexDoc { id: v.id.clone(), weight: v.weight }).collect(),
        edges: g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| EdgeDoc {
                id: e.id.clone(),
                ends: [g.vertex_id(e.ends[0]).to_string(), g.vertex_id(e.ends[1]).to_string()],
                length: lengths.map(|l| format_rational(&l[i])),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("graph document serializes")
}
