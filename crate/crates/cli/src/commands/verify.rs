//! `sqc verify`: structural claims about a graph file, with counterreasons.

use crate::input::{load_document, require_multi, require_simple, resolve_set};
use crate::report::RunReport;
use anyhow::Result;
use serde_json::json;
use sqc_core::extraction::{
    key_inequality_audit, order_preferring_non_s, simulate_tokens, thm1_check, verify_nice,
    TokenVariant,
};
use std::time::Instant;

use crate::VerifyCheck;

pub fn run(check: &VerifyCheck, started: Instant) -> Result<RunReport> {
    match check {
        VerifyCheck::Nice { graph, set } => {
            let doc = load_document(graph)?;
            let g = require_simple(&doc, graph)?;
            let s = resolve_set(&doc, set)?;
            let verdict = verify_nice(g, &s)?;
            let results = json!({
                "nice": verdict.nice,
                "order": verdict.order.as_ref().map(|o| o.seq().to_vec()),
                "failure": verdict.failure,
            });
            Ok(RunReport::new(
                "verify nice",
                json!({ "graph": graph.display().to_string(), "set": set }),
                results,
                verdict.nice,
                None,
                started,
            ))
        }
        VerifyCheck::Thm1 { graph, d } => {
            let doc = load_document(graph)?;
            let h = require_multi(&doc, graph)?;
            let report = thm1_check(h, *d);
            let results = json!({
                "max_degree": report.max_degree,
                "edge_count": report.edge_count,
                "max_disjoint": report.max_disjoint,
                "hypothesis_holds": report.hypothesis_holds,
                "edge_bound": 5 * d,
                "twice_edge_count": 2 * report.edge_count,
                "conclusion_holds": report.conclusion_holds,
            });
            Ok(RunReport::new(
                "verify thm1",
                json!({ "graph": graph.display().to_string(), "D": d }),
                results,
                report.hypothesis_holds && report.conclusion_holds,
                None,
                started,
            ))
        }
        VerifyCheck::KeyInequality {
            graph,
            set,
            d,
            variant,
        } => {
            let doc = load_document(graph)?;
            let g = require_simple(&doc, graph)?;
            let s = resolve_set(&doc, set)?;
            let token_variant = parse_variant(variant)?;
            let k = token_variant.order_bound();
            let order = order_preferring_non_s(g, &s, k);
            let ledger = simulate_tokens(g, &s, &order, token_variant)?;
            let audit = key_inequality_audit(g, &s, &order, &ledger, *d);
            let clean = audit.violations.is_empty();
            let later_big_ok = audit.later_big_failures.is_empty();
            let results = json!({
                "variant": token_variant.name(),
                "checked": audit.checked,
                "premise_held": audit.premise_held,
                "violations": audit.violations,
                "later_big_failures": audit.later_big_failures,
                "clean": clean,
            });
            Ok(RunReport::new(
                "verify key-inequality",
                json!({
                    "graph": graph.display().to_string(),
                    "set": set,
                    "D": d,
                    "variant": variant,
                }),
                results,
                clean && later_big_ok,
                None,
                started,
            ))
        }
    }
}

pub fn parse_variant(variant: &str) -> Result<TokenVariant> {
    match variant {
        "2deg" => Ok(TokenVariant::TwoDegenerate),
        "mad4" => Ok(TokenVariant::MadFour),
        other => anyhow::bail!("unknown variant {other:?}; expected 2deg or mad4"),
    }
}
