//! Hypergraph documents: `{"n": 4, "d": 2, "edges": [[1, 2, 3], ...]}`.

use std::collections::HashMap;

use acyclo_core::Hypergraph;
use serde::{Deserialize, Serialize};

/// A malformed or invalid input document. The message names the offending
/// field, and the line and column when the JSON itself is broken.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    n: usize,
    d: usize,
    edges: Vec<Vec<usize>>,
}

fn field(path: &str, msg: impl std::fmt::Display) -> ParseError {
    ParseError(format!("field `{path}`: {msg}"))
}

/// Parses and validates a document. Vertices inside an edge may come in any
/// order; edges are canonicalized to ascending order.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, ParseError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: Document = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." || path.is_empty() {
            ParseError(format!("malformed document: {inner}"))
        } else {
            field(&path, inner)
        }
    })?;

    let (n, d) = (doc.n, doc.d);
    if d == 0 {
        return Err(field("d", "must be at least 1"));
    }
    if d + 1 > n {
        return Err(field(
            "d",
            format!(
                "edges of size d + 1 = {} do not fit on n = {n} vertices",
                d + 1
            ),
        ));
    }
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (i, edge) in doc.edges.into_iter().enumerate() {
        if edge.len() != d + 1 {
            return Err(field(
                &format!("edges[{i}]"),
                format!("has {} vertices, expected d + 1 = {}", edge.len(), d + 1),
            ));
        }
        for (j, &v) in edge.iter().enumerate() {
            if v == 0 || v > n {
                return Err(field(
                    &format!("edges[{i}][{j}]"),
                    format!("vertex {v} outside 1..={n}"),
                ));
            }
        }
        let mut sorted = edge.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(field(
                &format!("edges[{i}]"),
                format!("vertex {} repeated", w[0]),
            ));
        }
        if let Some(j) = seen.insert(sorted.clone(), i) {
            return Err(field(
                &format!("edges[{i}]"),
                format!("duplicates edges[{j}]"),
            ));
        }
        edges.push(sorted);
    }
    Hypergraph::new(n, d, edges).map_err(|e| ParseError(e.to_string()))
}

/// The canonical document for `h`; [`parse_hypergraph`] inverts it.
pub fn serialize_hypergraph(h: &Hypergraph) -> String {
    let doc = Document {
        n: h.n(),
        d: h.d(),
        edges: h.edges().to_vec(),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}
