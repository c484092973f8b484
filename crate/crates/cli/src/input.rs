//! Loading graph documents and resolving vertex-set arguments.

use anyhow::{anyhow, bail, Context, Result};
use sqc_core::{GraphDocument, Multigraph, SimpleGraph, VertexSet};
use std::path::Path;

pub fn load_document(path: &Path) -> Result<GraphDocument> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    GraphDocument::parse(&text).with_context(|| format!("cannot parse {}", path.display()))
}

pub fn require_simple<'a>(doc: &'a GraphDocument, path: &Path) -> Result<&'a SimpleGraph> {
    doc.as_simple().ok_or_else(|| {
        anyhow!(
            "{} holds a multigraph; this command needs a simple graph",
            path.display()
        )
    })
}

pub fn require_multi<'a>(doc: &'a GraphDocument, path: &Path) -> Result<&'a Multigraph> {
    doc.as_multi().ok_or_else(|| {
        anyhow!(
            "{} holds a simple graph; this command needs a multigraph",
            path.display()
        )
    })
}

/// Resolves a `--set` argument: either the name of a set stored in the
/// document, or a literal list of vertices written as `{0,1,2}` or `0,1,2`.
pub fn resolve_set(doc: &GraphDocument, spec: &str) -> Result<VertexSet> {
    let trimmed = spec.trim();
    if let Some(set) = doc.set(trimmed) {
        return Ok(set.clone());
    }
    let inner = trimmed
        .strip_prefix('{')
        .and_then(|rest| rest.strip_suffix('}'))
        .unwrap_or(trimmed);
    let mut set = VertexSet::new();
    for part in inner.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let v: usize = part.parse().map_err(|_| {
            anyhow!(
                "--set {spec:?} is neither a set name in the file nor a vertex list like {{0,1,2}}"
            )
        })?;
        set.insert(v);
    }
    if set.is_empty() && !(trimmed == "{}" || inner.is_empty()) {
        bail!("--set {spec:?} names no vertices and no stored set");
    }
    Ok(set)
}

pub fn write_document(doc: &GraphDocument, path: &Path) -> Result<()> {
    std::fs::write(path, doc.to_json_string())
        .with_context(|| format!("cannot write {}", path.display()))
}
