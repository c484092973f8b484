//! The JSON report every subcommand emits.

use serde::Serialize;
use serde_json::Value;
use std::time::Instant;

/// Outcome of one CLI invocation.
///
/// `pass` is the conjunction of every check the command asserts in
/// `results`; commands that merely measure set it to `true`. All fields
/// except `elapsed_ms` are deterministic functions of `(command, params,
/// seed)`.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub tool_version: String,
    pub command: String,
    pub params: Value,
    pub results: Value,
    pub pass: bool,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RunReport {
    #[must_use]
    pub fn new(
        command: &str,
        params: Value,
        results: Value,
        pass: bool,
        seed: Option<u64>,
        started: Instant,
    ) -> Self {
        RunReport {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            params,
            results,
            pass,
            elapsed_ms: started.elapsed().as_millis() as u64,
            seed,
        }
    }

    /// Prints the report (or just the verdict under `quiet`) to stdout.
    pub fn print(&self, quiet: bool) {
        if quiet {
            emit(if self.pass { "pass" } else { "fail" });
        } else {
            emit(&serde_json::to_string_pretty(self).expect("report serializes"));
        }
    }
}

/// Writes a line to stdout, ignoring a closed pipe (e.g. `sqc ... | head`).
pub fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.write_all(b"\n");
}
