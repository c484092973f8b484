//! `sqc analyze`: exact measurements of a graph file.

use crate::input::{load_document, require_simple, resolve_set};
use crate::report::RunReport;
use anyhow::Result;
use serde_json::{json, Value};
use sqc_core::analysis::{degeneracy_order, mad, max_clique, square, square_degeneracy_report};
use std::time::{Duration, Instant};

use crate::AnalyzeMetric;

pub fn run(metric: &AnalyzeMetric, started: Instant) -> Result<RunReport> {
    match metric {
        AnalyzeMetric::SquareClique {
            graph,
            set,
            budget_s,
        } => {
            let doc = load_document(graph)?;
            let g = require_simple(&doc, graph)?;
            let sq = square(g);
            let outcome = max_clique(&sq, Duration::from_secs(*budget_s));
            let mut results = json!({
                "n": g.vertex_count(),
                "omega": outcome.witness.size,
                "witness": outcome.witness.members.to_vec(),
                "exact": outcome.exact,
                "lower_bound_only": !outcome.exact,
            });
            let mut pass = outcome.exact;
            if let Some(spec) = set {
                let s = resolve_set(&doc, spec)?;
                let is_clique = sqc_core::extraction::is_clique_in_square(g, &s);
                let maximum = is_clique && outcome.exact && s.len() == outcome.witness.size;
                results["set_size"] = json!(s.len());
                results["set_is_clique_in_square"] = json!(is_clique);
                results["set_is_maximum"] = json!(maximum);
                pass = pass && is_clique;
            }
            Ok(RunReport::new(
                "analyze square-clique",
                json!({
                    "graph": graph.display().to_string(),
                    "set": set.as_deref().map_or(Value::Null, |s| json!(s)),
                    "budget_s": budget_s,
                }),
                results,
                pass,
                None,
                started,
            ))
        }
        AnalyzeMetric::Mad { graph } => {
            let doc = load_document(graph)?;
            let g = require_simple(&doc, graph)?;
            let (value, witness) = mad(g)?;
            let results = json!({
                "n": g.vertex_count(),
                "mad": value.to_string(),
                "mad_numerator": *value.numer(),
                "mad_denominator": *value.denom(),
                "densest_subgraph": witness.to_vec(),
                "below_four": value < sqc_core::analysis::Rational::from_integer(4),
            });
            Ok(RunReport::new(
                "analyze mad",
                json!({ "graph": graph.display().to_string() }),
                results,
                true,
                None,
                started,
            ))
        }
        AnalyzeMetric::Degeneracy { graph } => {
            let doc = load_document(graph)?;
            let g = require_simple(&doc, graph)?;
            let cert = degeneracy_order(g);
            let results = json!({
                "n": g.vertex_count(),
                "degeneracy": cert.degeneracy,
                "order": cert.order.seq(),
            });
            Ok(RunReport::new(
                "analyze degeneracy",
                json!({ "graph": graph.display().to_string() }),
                results,
                true,
                None,
                started,
            ))
        }
        AnalyzeMetric::SquareDegeneracy { graph, d, k } => {
            let doc = load_document(graph)?;
            let g = require_simple(&doc, graph)?;
            let report = square_degeneracy_report(g, *d, *k)?;
            let results = json!({
                "n": g.vertex_count(),
                "square_degeneracy": report.square_degeneracy,
                "general_bound": report.general_bound,
                "general_ok": report.general_ok,
                "two_degenerate_bound": report.two_degenerate_bound,
                "two_degenerate_ok": report.two_degenerate_ok,
                "mad": report.mad_value.to_string(),
                "mad_bound": report.mad_bound,
                "mad_ok": report.mad_ok,
                "bound_attained": Some(report.square_degeneracy) == report.two_degenerate_bound
                    .or(Some(report.general_bound)),
            });
            Ok(RunReport::new(
                "analyze square-degeneracy",
                json!({ "graph": graph.display().to_string(), "D": d, "k": k }),
                results,
                !report.any_violation,
                None,
                started,
            ))
        }
    }
}
