//! `sqc extract`: run a witness-extraction pipeline and write the reduced
//! instance `(G', S', order)` as a graph document.

use crate::input::{load_document, require_simple, resolve_set, write_document};
use crate::report::RunReport;
use anyhow::Result;
use serde_json::{json, Value};
use sqc_core::extraction::{extract_nice_2deg, extract_nice_mad4, ExtractionResult};
use sqc_core::GraphDocument;
use std::path::PathBuf;
use std::time::Instant;

use crate::ExtractVariant;

fn result_document(res: &ExtractionResult) -> GraphDocument {
    GraphDocument::simple(res.graph_prime.clone())
        .with_set("S_prime", res.s_prime.clone())
        .with_order(res.order_prime.clone())
}

fn stats_json(res: &ExtractionResult) -> Value {
    let s = &res.stats;
    json!({
        "s_len": s.s_len,
        "s_prime_len": s.s_prime_len,
        "big_len": s.big_len,
        "basic_len": s.basic_len,
        "nonbasic_len": s.nonbasic_len,
        "w_len": s.w_len,
        "r3_len": s.r3_len,
        "audit_violations": s.audit_violations,
        "s_prime_independent": s.s_prime_independent,
        "s_prime_consecutive": s.s_prime_consecutive,
    })
}

struct Claims {
    audit_clean: bool,
    removal_bound_ok: Option<bool>,
    value: Value,
}

fn claims(res: &ExtractionResult, two_degenerate: bool) -> Claims {
    let s = &res.stats;
    let audit_clean = s.audit_violations == 0;
    let removal_bound_ok = res.premise_held.then(|| {
        if two_degenerate {
            res.removed_count <= 72
        } else {
            res.removed_count <= s.nonbasic_len + 3 * s.big_len && res.removed_count <= 460
        }
    });
    let r3_bound_ok = s.s_len == 0 || s.r3_len < 2 * s.s_len;
    let value = json!({
        "clique_in_square": true,
        "order_is_2_degeneracy": true,
        "s_prime_independent": s.s_prime_independent,
        "s_prime_consecutive": s.s_prime_consecutive,
        "audit_clean": audit_clean,
        "r3_bound_ok": r3_bound_ok,
        "removal_bound_ok": removal_bound_ok,
    });
    Claims {
        audit_clean,
        removal_bound_ok,
        value,
    }
}

/// The shared (graph, set, D, out) argument block of both pipelines.
struct PipelineArgs<'a> {
    graph: &'a PathBuf,
    set: &'a str,
    d: usize,
    out: Option<&'a PathBuf>,
}

fn report(
    command: &str,
    variant_name: &str,
    res: &ExtractionResult,
    pass: bool,
    args: &PipelineArgs,
    written: bool,
    started: Instant,
) -> RunReport {
    let results = json!({
        "variant": variant_name,
        "removed_count": res.removed_count,
        "premise_held": res.premise_held,
        "nice": res.nice,
        "s_prime": res.s_prime.to_vec(),
        "stats": stats_json(res),
        "claims": claims(res, variant_name == "2deg").value,
        "written": written,
    });
    RunReport::new(
        command,
        json!({
            "graph": args.graph.display().to_string(),
            "set": args.set,
            "D": args.d,
            "out": args.out.map_or(Value::Null, |p| json!(p.display().to_string())),
        }),
        results,
        pass,
        None,
        started,
    )
}

pub fn run(variant: &ExtractVariant, started: Instant) -> Result<RunReport> {
    match variant {
        ExtractVariant::TwoDeg { graph, set, d, out } => {
            let doc = load_document(graph)?;
            let g = require_simple(&doc, graph)?;
            let s = resolve_set(&doc, set)?;
            let res = extract_nice_2deg(g, &s, *d)?;
            let written = match out {
                Some(path) => {
                    write_document(&result_document(&res), path)?;
                    true
                }
                None => false,
            };
            let c = claims(&res, true);
            let pass = res.nice && c.audit_clean && c.removal_bound_ok.unwrap_or(true);
            let args = PipelineArgs {
                graph,
                set,
                d: *d,
                out: out.as_ref(),
            };
            Ok(report(
                "extract 2deg",
                "2deg",
                &res,
                pass,
                &args,
                written,
                started,
            ))
        }
        ExtractVariant::Mad4 { graph, set, d, out } => {
            let doc = load_document(graph)?;
            let g = require_simple(&doc, graph)?;
            let s = resolve_set(&doc, set)?;
            let res = extract_nice_mad4(g, &s, *d)?;
            let written = match out {
                Some(path) => {
                    write_document(&result_document(&res), path)?;
                    true
                }
                None => false,
            };
            let c = claims(&res, false);
            let r3_ok = res.stats.s_len == 0 || res.stats.r3_len < 2 * res.stats.s_len;
            let pass = c.audit_clean && r3_ok && c.removal_bound_ok.unwrap_or(true);
            let args = PipelineArgs {
                graph,
                set,
                d: *d,
                out: out.as_ref(),
            };
            Ok(report(
                "extract mad4",
                "mad4",
                &res,
                pass,
                &args,
                written,
                started,
            ))
        }
    }
}
