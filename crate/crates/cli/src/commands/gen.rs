//! `sqc gen`: build a construction, report its asserted identities, and
//! optionally write the graph document to disk.

use crate::input::write_document;
use crate::report::RunReport;
use anyhow::Result;
use serde_json::{json, Value};
use sqc_core::analysis::degeneracy_order;
use sqc_core::constructs::{
    example1, example2, example3, fat_clique, random_k_degenerate, LabeledConstruction,
};
use sqc_core::{GraphDocument, SimpleGraph, VertexSet};
use std::path::PathBuf;
use std::time::Instant;

use crate::GenKind;

fn construction_document(lc: &LabeledConstruction) -> GraphDocument {
    let mut doc = GraphDocument::simple(lc.graph.clone());
    for (name, set) in &lc.sets {
        doc = doc.with_set(name, set.clone());
    }
    doc.with_params(json!(lc.params))
}

fn maybe_write(doc: &GraphDocument, out: Option<&PathBuf>) -> Result<bool> {
    match out {
        Some(path) => {
            write_document(doc, path)?;
            Ok(true)
        }
        None => Ok(false),
    }
}

fn out_param(out: Option<&PathBuf>) -> Value {
    match out {
        Some(p) => json!(p.display().to_string()),
        None => Value::Null,
    }
}

/// Degree of every square-neighbor count restricted to `set`, or `None`
/// when the restriction is not regular.
fn square_restricted_regular_degree(g: &SimpleGraph, set: &VertexSet) -> Option<usize> {
    let sq = sqc_core::analysis::square(g);
    let mut degrees = set
        .iter()
        .map(|v| sq.neighbors(v).filter(|&u| set.contains(u)).count());
    let first = degrees.next()?;
    degrees.all(|d| d == first).then_some(first)
}

fn square_restricted_min_degree(g: &SimpleGraph, set: &VertexSet) -> Option<usize> {
    let sq = sqc_core::analysis::square(g);
    set.iter()
        .map(|v| sq.neighbors(v).filter(|&u| set.contains(u)).count())
        .min()
}

pub fn run(kind: &GenKind, started: Instant) -> Result<RunReport> {
    match kind {
        GenKind::Example1 { d, out } => {
            let lc = example1(*d)?;
            let doc = construction_document(&lc);
            let written = maybe_write(&doc, out.as_ref())?;
            let g = &lc.graph;
            let s_size = lc.set("S").len();
            let degeneracy = degeneracy_order(g).degeneracy;
            let s_ok = 2 * s_size == 5 * d;
            let delta_ok = g.max_degree() == *d;
            let degen_ok = degeneracy == 2;
            let results = json!({
                "n": g.vertex_count(),
                "edges": g.edge_count(),
                "s_size": s_size,
                "s_size_expected": 5 * d / 2,
                "s_size_ok": s_ok,
                "max_degree": g.max_degree(),
                "max_degree_expected": d,
                "max_degree_ok": delta_ok,
                "degeneracy": degeneracy,
                "degeneracy_expected": 2,
                "degeneracy_ok": degen_ok,
                "written": written,
            });
            Ok(RunReport::new(
                "gen example1",
                json!({ "D": d, "out": out_param(out.as_ref()) }),
                results,
                s_ok && delta_ok && degen_ok,
                None,
                started,
            ))
        }
        GenKind::Example2 { d, s, out } => {
            let lc = example2(*d, *s)?;
            let doc = construction_document(&lc);
            let written = maybe_write(&doc, out.as_ref())?;
            let g = &lc.graph;
            let set = lc.set("S");
            let degeneracy = degeneracy_order(g).degeneracy;
            let regular = square_restricted_regular_degree(g, set);
            let expected_degree = 3 * d - 4;
            let s_ok = set.len() == 2 * s * d;
            let delta_ok = g.max_degree() == *d;
            let degen_ok = degeneracy == 2;
            let regular_ok = regular == Some(expected_degree);
            let results = json!({
                "n": g.vertex_count(),
                "edges": g.edge_count(),
                "s_size": set.len(),
                "s_size_expected": 2 * s * d,
                "s_size_ok": s_ok,
                "max_degree": g.max_degree(),
                "max_degree_expected": d,
                "max_degree_ok": delta_ok,
                "degeneracy": degeneracy,
                "degeneracy_expected": 2,
                "degeneracy_ok": degen_ok,
                "square_s_regular_degree": regular,
                "square_s_regular_degree_expected": expected_degree,
                "square_s_regular_ok": regular_ok,
                "written": written,
            });
            Ok(RunReport::new(
                "gen example2",
                json!({ "D": d, "s": s, "out": out_param(out.as_ref()) }),
                results,
                s_ok && delta_ok && degen_ok && regular_ok,
                None,
                started,
            ))
        }
        GenKind::Example3 { k, d, s_size, out } => {
            let lc = example3(*k, *d, *s_size)?;
            let doc = construction_document(&lc);
            let written = maybe_write(&doc, out.as_ref())?;
            let g = &lc.graph;
            let set = lc.set("S");
            let degeneracy = degeneracy_order(g).degeneracy;
            let min_degree = square_restricted_min_degree(g, set);
            let expected_min = k * (d - 1) + (d - k) * (k - 1);
            let degen_ok = degeneracy <= *k;
            let delta_ok = g.max_degree() == *d;
            let min_ok = min_degree == Some(expected_min);
            let results = json!({
                "n": g.vertex_count(),
                "edges": g.edge_count(),
                "s_size": set.len(),
                "max_degree": g.max_degree(),
                "max_degree_expected": d,
                "max_degree_ok": delta_ok,
                "degeneracy": degeneracy,
                "degeneracy_at_most_k": degen_ok,
                "square_s_min_degree": min_degree,
                "square_s_min_degree_expected": expected_min,
                "square_s_min_degree_ok": min_ok,
                "written": written,
            });
            Ok(RunReport::new(
                "gen example3",
                json!({
                    "k": k,
                    "D": d,
                    "s_size": s_size.map_or(Value::Null, |v| json!(v)),
                    "out": out_param(out.as_ref()),
                }),
                results,
                degen_ok && delta_ok && min_ok,
                None,
                started,
            ))
        }
        GenKind::FatClique { h, mult, thin, out } => {
            let cycle: Vec<usize> = (0..*h).collect();
            let thinned = thin.then_some(cycle.as_slice());
            let hg = fat_clique(*h, *mult, thinned)?;
            let doc = GraphDocument::multi(hg.clone());
            let written = maybe_write(&doc, out.as_ref())?;
            let expected_edges = if *thin {
                mult * h * (h - 1) / 2 - 2 * h
            } else {
                mult * h * (h - 1) / 2
            };
            let expected_degree = if *thin {
                mult * (h - 1) - 4
            } else {
                mult * (h - 1)
            };
            let edges_ok = hg.edge_count() == expected_edges;
            let degree_ok = hg.max_degree() == expected_degree;
            let results = json!({
                "n": hg.vertex_count(),
                "edge_count": hg.edge_count(),
                "edge_count_expected": expected_edges,
                "edge_count_ok": edges_ok,
                "max_degree": hg.max_degree(),
                "max_degree_expected": expected_degree,
                "max_degree_ok": degree_ok,
                "written": written,
            });
            Ok(RunReport::new(
                "gen fat-clique",
                json!({ "h": h, "mult": mult, "thin": thin, "out": out_param(out.as_ref()) }),
                results,
                edges_ok && degree_ok,
                None,
                started,
            ))
        }
        GenKind::Random { n, k, d, seed, out } => {
            let g = random_k_degenerate(*n, *k, *d, *seed)?;
            let doc = GraphDocument::simple(g.clone());
            let written = maybe_write(&doc, out.as_ref())?;
            let degeneracy = degeneracy_order(&g).degeneracy;
            let degen_ok = degeneracy <= *k;
            let delta_ok = g.max_degree() <= *d;
            let results = json!({
                "n": g.vertex_count(),
                "edges": g.edge_count(),
                "degeneracy": degeneracy,
                "degeneracy_at_most_k": degen_ok,
                "max_degree": g.max_degree(),
                "max_degree_at_most_d": delta_ok,
                "written": written,
            });
            Ok(RunReport::new(
                "gen random",
                json!({ "n": n, "k": k, "D": d, "out": out_param(out.as_ref()) }),
                results,
                degen_ok && delta_ok,
                Some(*seed),
                started,
            ))
        }
    }
}

/// Shared with the search command: the anchor construction written for a
/// given degree bound, if one exists (even `D' >= 4`).
pub fn anchor_construction(d: usize) -> Option<(usize, LabeledConstruction)> {
    if d < 4 {
        return None;
    }
    let d_anchor = if d.is_multiple_of(2) { d } else { d - 1 };
    example1(d_anchor).ok().map(|lc| (d_anchor, lc))
}
