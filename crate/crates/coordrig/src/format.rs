//! The JSON graph format.
//!
//! ```json
//! {"n": 4, "k": 1, "edges": [[0, 1, 1], [0, 2, 0]], "coords": [[0, 0], [1, 0], [1, 1], [0, 1]], "r": [0.0]}
//! ```
//!
//! Each edge is `[u, v, colour]` with `u < v < n` and `colour <= k`.
//! `coords` (one point per vertex) and `r` (one offset per class) are
//! optional.

use coordrig_core::framework::{Configuration, LinalgError};
use coordrig_core::{ColouredGraph, GraphError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("edge [{u}, {v}] must list the smaller endpoint first")]
    Unordered { u: usize, v: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("coords: {0}")]
    Coords(#[from] LinalgError),
    #[error("coords has {found} points, expected n = {n}")]
    CoordCount { n: usize, found: usize },
    #[error("r has {found} entries, expected k = {k}")]
    OffsetCount { k: usize, found: usize },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    n: usize,
    k: usize,
    edges: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coords: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<Vec<f64>>,
}

/// A parsed file: the graph and the optional placement data.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphDocument {
    pub graph: ColouredGraph,
    pub coords: Option<Configuration<f64>>,
    pub r: Option<Vec<f64>>,
}

impl GraphDocument {
    pub fn new(graph: ColouredGraph) -> Self {
        GraphDocument { graph, coords: None, r: None }
    }
}

pub fn parse_document(text: &str) -> Result<GraphDocument, FormatError> {
    let raw: Raw = serde_json::from_str(text)?;
    for &[u, v, _] in &raw.edges {
        if u >= v {
            return Err(FormatError::Unordered { u, v });
        }
    }
    let graph = ColouredGraph::new(raw.n, raw.k, raw.edges.iter().map(|&[u, v, c]| (u, v, c)))?;
    let coords = match raw.coords {
        None => None,
        Some(points) => {
            if points.len() != raw.n {
                return Err(FormatError::CoordCount { n: raw.n, found: points.len() });
            }
            let d = points.first().map_or(0, Vec::len);
            let config = Configuration::from_points(d, &points)?;
            if !config.is_finite() {
                return Err(LinalgError::NonFinite.into());
            }
            Some(config)
        }
    };
    if let Some(r) = &raw.r {
        if r.len() != raw.k {
            return Err(FormatError::OffsetCount { k: raw.k, found: r.len() });
        }
    }
    Ok(GraphDocument { graph, coords, r: raw.r })
}

pub fn parse_coloured_graph(text: &str) -> Result<ColouredGraph, FormatError> {
    parse_document(text).map(|doc| doc.graph)
}

pub fn serialize_document(doc: &GraphDocument) -> String {
    let g = &doc.graph;
    let raw = Raw {
        n: g.n(),
        k: g.k(),
        edges: g.triples().map(|(u, v, c)| [u, v, c]).collect(),
        coords: doc
            .coords
            .as_ref()
            .map(|p| (0..p.n()).map(|i| p.point(i).to_vec()).collect()),
        r: doc.r.clone(),
    };
    serde_json::to_string(&raw).expect("plain data serializes")
}

/// Canonical JSON of `g`, edges in canonical order.
pub fn serialize(g: &ColouredGraph) -> String {
    serialize_document(&GraphDocument::new(g.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use coordrig_core::fixtures;

    #[test]
    fn triangle_is_canonicalized() {
        let g = parse_coloured_graph(r#"{"n":3,"k":0,"edges":[[0,1,0],[1,2,0],[0,2,0]]}"#).unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(serialize(&g), r#"{"n":3,"k":0,"edges":[[0,1,0],[0,2,0],[1,2,0]]}"#);
    }

    #[test]
    fn coloured_k4() {
        let g = parse_coloured_graph(r#"{"n":4,"k":1,"edges":[[0,1,1],[0,2,0],[0,3,0],[1,2,0],[1,3,1],[2,3,1]]}"#)
            .unwrap();
        assert_eq!(g, fixtures::rigid_quad());
        assert_eq!(parse_coloured_graph(&serialize(&g)).unwrap(), g);
    }

    #[test]
    fn rejects_invalid_input() {
        let empty_class = parse_coloured_graph(r#"{"n":3,"k":2,"edges":[[0,1,1],[1,2,1],[0,2,0]]}"#);
        assert!(matches!(empty_class, Err(FormatError::Graph(GraphError::EmptyClass(2)))));
        for bad in [
            r#"{"n":3,"k":0,"edges":[[1,0,0]]}"#,
            r#"{"n":3,"k":0,"edges":[[1,1,0]]}"#,
            r#"{"n":3,"k":0,"edges":[[0,1,0],[0,1,0]]}"#,
            r#"{"n":3,"k":0,"edges":[[0,3,0]]}"#,
            r#"{"n":3,"k":0,"edges":[[0,1,1]]}"#,
            r#"{"n":3,"k":0,"edges":[[0,1]]}"#,
            r#"{"n":0,"k":0,"edges":[]}"#,
            r#"{"n":2,"k":0,"edges":[[0,1,0]],"coords":[[0,0]]}"#,
            r#"{"n":2,"k":0,"edges":[[0,1,0]],"coords":[[0,0],[1]]}"#,
            r#"{"n":2,"k":1,"edges":[[0,1,1]],"r":[]}"#,
            r#"{"n":2,"k":0,"edges":[]"#,
        ] {
            assert!(parse_document(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn placement_round_trip() {
        let text = r#"{"n":2,"k":1,"edges":[[0,1,1]],"coords":[[0.0,0.5],[1.0,-2.0]],"r":[0.25]}"#;
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.coords.as_ref().unwrap().d(), 2);
        assert_eq!(serialize_document(&doc), text);
        assert_eq!(parse_document(&serialize_document(&doc)).unwrap(), doc);
    }
}
