//! Graph document format: JSON serialization for graphs plus the labeled
//! vertex sets, vertex order, and generator parameters that ride along.
//!
//! A document is an object with `"n"` (vertex count) and `"edges"` (array of
//! unordered pairs). An optional `"multiplicity"` array of `[u, v, m]` triples
//! makes the document a multigraph; pairs listed under `"edges"` then carry
//! multiplicity 1 and no pair may appear twice across the two arrays.
//! Optional `"sets"` maps names to vertex arrays, optional `"order"` is a
//! permutation of `0..n`, and optional `"params"` is free-form. Unknown
//! fields are ignored. Output is canonical: fixed field order, sorted set
//! names, sorted edge lists.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Multigraph, SimpleGraph, VertexOrder, VertexSet};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed graph document: {0}")]
    Malformed(String),
    #[error("edge [{u}, {v}] has an index out of range for n = {n}")]
    EdgeOutOfRange { u: usize, v: usize, n: usize },
    #[error("edge [{0}, {0}] is a loop")]
    LoopEdge(usize),
    #[error("duplicate edge [{u}, {v}]")]
    DuplicateEdge { u: usize, v: usize },
    #[error("duplicate multiplicity entry for pair [{u}, {v}]")]
    DuplicateMultiplicity { u: usize, v: usize },
    #[error("multiplicity entry [{u}, {v}, {m}] must have m >= 1")]
    BadMultiplicity { u: usize, v: usize, m: usize },
    #[error("set {name:?} contains vertex {vertex}, out of range for n = {n}")]
    SetOutOfRange {
        name: String,
        vertex: usize,
        n: usize,
    },
    #[error("order is not a permutation of 0..{n}: {reason}")]
    BadOrder { n: usize, reason: String },
}

/// The graph carried by a document: simple unless the document had a
/// `"multiplicity"` field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphPayload {
    Simple(SimpleGraph),
    Multi(Multigraph),
}

impl GraphPayload {
    #[must_use]
    pub fn vertex_count(&self) -> usize {
        match self {
            GraphPayload::Simple(g) => g.vertex_count(),
            GraphPayload::Multi(h) => h.vertex_count(),
        }
    }
}

/// A parsed (or to-be-written) graph document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDocument {
    pub payload: GraphPayload,
    pub sets: BTreeMap<String, VertexSet>,
    pub order: Option<VertexOrder>,
    pub params: Option<serde_json::Value>,
}

impl GraphDocument {
    #[must_use]
    pub fn simple(g: SimpleGraph) -> Self {
        GraphDocument {
            payload: GraphPayload::Simple(g),
            sets: BTreeMap::new(),
            order: None,
            params: None,
        }
    }

    #[must_use]
    pub fn multi(h: Multigraph) -> Self {
        GraphDocument {
            payload: GraphPayload::Multi(h),
            sets: BTreeMap::new(),
            order: None,
            params: None,
        }
    }

    #[must_use]
    pub fn with_set(mut self, name: &str, set: VertexSet) -> Self {
        self.sets.insert(name.to_string(), set);
        self
    }

    #[must_use]
    pub fn with_order(mut self, order: VertexOrder) -> Self {
        self.order = Some(order);
        self
    }

    #[must_use]
    pub fn with_params(mut self, params: serde_json::Value) -> Self {
        self.params = Some(params);
        self
    }

    #[must_use]
    pub fn vertex_count(&self) -> usize {
        self.payload.vertex_count()
    }

    #[must_use]
    pub fn as_simple(&self) -> Option<&SimpleGraph> {
        match &self.payload {
            GraphPayload::Simple(g) => Some(g),
            GraphPayload::Multi(_) => None,
        }
    }

    #[must_use]
    pub fn as_multi(&self) -> Option<&Multigraph> {
        match &self.payload {
            GraphPayload::Multi(h) => Some(h),
            GraphPayload::Simple(_) => None,
        }
    }

    #[must_use]
    pub fn set(&self, name: &str) -> Option<&VertexSet> {
        self.sets.get(name)
    }

    /// Canonical JSON text (pretty-printed, stable field and key order).
    #[must_use]
    pub fn to_json_string(&self) -> String {
        let mut raw = RawDocument {
            n: self.vertex_count(),
            edges: Vec::new(),
            multiplicity: None,
            sets: None,
            order: None,
            params: self.params.clone(),
        };
        match &self.payload {
            GraphPayload::Simple(g) => {
                raw.edges = g.edges().map(|(u, v)| vec![u, v]).collect();
            }
            GraphPayload::Multi(h) => {
                let mut mult = Vec::new();
                for (u, v, m) in h.pairs() {
                    if m == 1 {
                        raw.edges.push(vec![u, v]);
                    } else {
                        mult.push(vec![u, v, m]);
                    }
                }
                // The key's presence is what marks the document as a
                // multigraph, so keep it even when empty.
                raw.multiplicity = Some(mult);
            }
        }
        if !self.sets.is_empty() {
            raw.sets = Some(
                self.sets
                    .iter()
                    .map(|(k, s)| (k.clone(), s.to_vec()))
                    .collect(),
            );
        }
        raw.order = self.order.as_ref().map(|o| o.seq().to_vec());
        let mut text = serde_json::to_string_pretty(&raw).expect("document serializes");
        text.push('\n');
        text
    }

    /// Parses and validates a document.
    pub fn parse(text: &str) -> Result<GraphDocument, JsonError> {
        let raw: RawDocument =
            serde_json::from_str(text).map_err(|e| JsonError::Malformed(e.to_string()))?;
        let n = raw.n;

        let check = |u: usize, v: usize| -> Result<(usize, usize), JsonError> {
            if u >= n || v >= n {
                return Err(JsonError::EdgeOutOfRange { u, v, n });
            }
            if u == v {
                return Err(JsonError::LoopEdge(u));
            }
            Ok(if u <= v { (u, v) } else { (v, u) })
        };

        let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for e in &raw.edges {
            if e.len() != 2 {
                return Err(JsonError::Malformed(format!(
                    "edge entry {e:?} must have exactly 2 elements"
                )));
            }
            let key = check(e[0], e[1])?;
            if seen.insert(key, 1).is_some() {
                return Err(JsonError::DuplicateEdge { u: key.0, v: key.1 });
            }
        }
        let payload = match &raw.multiplicity {
            None => {
                let mut g = SimpleGraph::new(n);
                for &(u, v) in seen.keys() {
                    g.add_edge(u, v).expect("validated edge");
                }
                GraphPayload::Simple(g)
            }
            Some(entries) => {
                for t in entries {
                    if t.len() != 3 {
                        return Err(JsonError::Malformed(format!(
                            "multiplicity entry {t:?} must have exactly 3 elements"
                        )));
                    }
                    let key = check(t[0], t[1])?;
                    if t[2] == 0 {
                        return Err(JsonError::BadMultiplicity {
                            u: key.0,
                            v: key.1,
                            m: 0,
                        });
                    }
                    if seen.insert(key, t[2]).is_some() {
                        return Err(JsonError::DuplicateMultiplicity { u: key.0, v: key.1 });
                    }
                }
                let mut h = Multigraph::new(n);
                for (&(u, v), &m) in &seen {
                    h.add_edge_with_multiplicity(u, v, m).expect("validated pair");
                }
                GraphPayload::Multi(h)
            }
        };

        let mut sets = BTreeMap::new();
        if let Some(raw_sets) = raw.sets {
            for (name, members) in raw_sets {
                let set: VertexSet = members.iter().copied().collect();
                if let Some(&bad) = members.iter().find(|&&v| v >= n) {
                    return Err(JsonError::SetOutOfRange {
                        name,
                        vertex: bad,
                        n,
                    });
                }
                sets.insert(name, set);
            }
        }

        let order = match raw.order {
            None => None,
            Some(seq) => {
                if seq.len() != n {
                    return Err(JsonError::BadOrder {
                        n,
                        reason: format!("length {} differs from n", seq.len()),
                    });
                }
                Some(VertexOrder::from_seq(seq).map_err(|e| JsonError::BadOrder {
                    n,
                    reason: e.to_string(),
                })?)
            }
        };

        Ok(GraphDocument {
            payload,
            sets,
            order,
            params: raw.params,
        })
    }
}

/// Serializes a simple graph with no extras.
#[must_use]
pub fn to_json(g: &SimpleGraph) -> String {
    GraphDocument::simple(g.clone()).to_json_string()
}

/// Serializes a multigraph with no extras.
#[must_use]
pub fn multigraph_to_json(h: &Multigraph) -> String {
    GraphDocument::multi(h.clone()).to_json_string()
}

/// Parses a document and returns just the graph payload.
pub fn from_json(text: &str) -> Result<GraphPayload, JsonError> {
    Ok(GraphDocument::parse(text)?.payload)
}

#[derive(Serialize, Deserialize)]
struct RawDocument {
    n: usize,
    edges: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    multiplicity: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sets: Option<BTreeMap<String, Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<serde_json::Value>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> SimpleGraph {
        SimpleGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn simple_round_trip() {
        let g = k3();
        let text = to_json(&g);
        match from_json(&text).unwrap() {
            GraphPayload::Simple(h) => assert_eq!(h, g),
            GraphPayload::Multi(_) => panic!("expected a simple graph"),
        }
    }

    #[test]
    fn multigraph_round_trip_with_uniform_multiplicity() {
        let mut h = Multigraph::new(5);
        for u in 0..5 {
            for v in (u + 1)..5 {
                h.add_edge_with_multiplicity(u, v, 2).unwrap();
            }
        }
        let text = multigraph_to_json(&h);
        match from_json(&text).unwrap() {
            GraphPayload::Multi(back) => assert_eq!(back, h),
            GraphPayload::Simple(_) => panic!("expected a multigraph"),
        }
    }

    #[test]
    fn multigraph_with_unit_pairs_round_trips() {
        let mut h = Multigraph::new(4);
        h.add_edge_with_multiplicity(0, 1, 1).unwrap();
        h.add_edge_with_multiplicity(1, 2, 3).unwrap();
        let text = multigraph_to_json(&h);
        // Unit pairs live under "edges"; the multiplicity key stays present.
        assert!(text.contains("multiplicity"));
        match from_json(&text).unwrap() {
            GraphPayload::Multi(back) => assert_eq!(back, h),
            GraphPayload::Simple(_) => panic!("expected a multigraph"),
        }
    }

    #[test]
    fn empty_multiplicity_key_still_means_multigraph() {
        let doc = GraphDocument::parse(r#"{"n": 2, "edges": [[0, 1]], "multiplicity": []}"#)
            .unwrap();
        assert!(doc.as_multi().is_some());
        assert_eq!(doc.as_multi().unwrap().multiplicity(0, 1), 1);
    }

    #[test]
    fn document_round_trip_preserves_sets_order_params() {
        let doc = GraphDocument::simple(k3())
            .with_set("S", [0, 2].into_iter().collect())
            .with_set("hub", [1].into_iter().collect())
            .with_order(VertexOrder::from_seq(vec![2, 0, 1]).unwrap())
            .with_params(serde_json::json!({"D": 8}));
        let text = doc.to_json_string();
        let back = GraphDocument::parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json_string(), text);
    }

    #[test]
    fn out_of_range_edge_is_named() {
        let err = GraphDocument::parse(r#"{"n": 3, "edges": [[0, 5]]}"#).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("[0, 5]") && msg.contains("out of range"), "{msg}");
    }

    #[test]
    fn loop_edge_rejected() {
        let err = GraphDocument::parse(r#"{"n": 3, "edges": [[1, 1]]}"#).unwrap_err();
        assert!(err.to_string().contains("loop"));
    }

    #[test]
    fn duplicate_simple_edge_rejected_in_both_orientations() {
        let err = GraphDocument::parse(r#"{"n": 3, "edges": [[0, 1], [1, 0]]}"#).unwrap_err();
        assert!(err.to_string().contains("duplicate edge [0, 1]"));
    }

    #[test]
    fn duplicate_multiplicity_entry_rejected() {
        let err = GraphDocument::parse(
            r#"{"n": 3, "edges": [], "multiplicity": [[0, 1, 2], [1, 0, 1]]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("pair [0, 1]"));
    }

    #[test]
    fn pair_listed_under_edges_and_multiplicity_rejected() {
        let err = GraphDocument::parse(
            r#"{"n": 3, "edges": [[0, 1]], "multiplicity": [[0, 1, 2]]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, JsonError::DuplicateMultiplicity { u: 0, v: 1 }));
    }

    #[test]
    fn zero_multiplicity_rejected() {
        let err = GraphDocument::parse(r#"{"n": 3, "edges": [], "multiplicity": [[0, 1, 0]]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("m >= 1"));
    }

    #[test]
    fn set_member_out_of_range_is_named() {
        let err = GraphDocument::parse(r#"{"n": 3, "edges": [], "sets": {"S": [0, 9]}}"#)
            .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("\"S\"") && msg.contains('9'), "{msg}");
    }

    #[test]
    fn order_must_be_full_permutation() {
        let err = GraphDocument::parse(r#"{"n": 3, "edges": [], "order": [0, 1]}"#).unwrap_err();
        assert!(err.to_string().contains("permutation"));
        let err = GraphDocument::parse(r#"{"n": 3, "edges": [], "order": [0, 1, 1]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("repeated"));
    }

    #[test]
    fn unknown_fields_are_ignored() {
        let doc = GraphDocument::parse(
            r#"{"n": 2, "edges": [[0, 1]], "comment": "hi", "extra": [1, 2]}"#,
        )
        .unwrap();
        assert_eq!(doc.vertex_count(), 2);
    }

    #[test]
    fn wrong_arity_edge_is_malformed() {
        let err = GraphDocument::parse(r#"{"n": 3, "edges": [[0, 1, 2]]}"#).unwrap_err();
        assert!(matches!(err, JsonError::Malformed(_)));
    }

    #[test]
    fn missing_required_field_is_malformed() {
        let err = GraphDocument::parse(r#"{"edges": []}"#).unwrap_err();
        assert!(matches!(err, JsonError::Malformed(_)));
    }
}
