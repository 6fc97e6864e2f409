//! Report assembly: one JSON object per check on stdout (JSON-lines), a
//! human-readable table on stderr.
//!
//! JSON output is byte-stable for fixed inputs and seed: struct fields
//! serialize in declaration order, maps are `BTreeMap`s, and wall-clock
//! timings stay out of the stream unless `--timings` asks for them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::checks::{CheckContext, CheckOutcome};

/// The effective settings a check ran under, echoed into its report so a
/// line is reproducible on its own.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub tolerance: f64,
    pub seed: u64,
    pub audit: bool,
    pub params: BTreeMap<String, String>,
}

/// One check's result as emitted on the machine stream.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub check: String,
    pub verdict: &'static str,
    pub checked: u64,
    pub witnesses: Vec<String>,
    pub detail: Vec<String>,
    pub config: ConfigEcho,
    /// Wall-clock duration; populated only under `--timings` so default
    /// runs stay byte-identical.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(
        check: &str,
        outcome: CheckOutcome,
        params: &BTreeMap<String, String>,
        ctx: &CheckContext,
        elapsed_ms: Option<u64>,
    ) -> Report {
        Report {
            check: check.to_string(),
            verdict: outcome.verdict.as_str(),
            checked: outcome.checked,
            witnesses: outcome.witnesses,
            detail: outcome.detail,
            config: ConfigEcho {
                tolerance: ctx.tolerance,
                seed: ctx.seed,
                audit: ctx.audit,
                params: params.clone(),
            },
            elapsed_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }

    /// Multi-line human rendering: verdict, name, scan size, then detail
    /// and witness lines indented beneath.
    pub fn human(&self) -> String {
        let mut lines = vec![format!(
            "{:<4} {:<16} checked {:>8}",
            self.verdict.to_uppercase(),
            self.check,
            self.checked
        )];
        for d in &self.detail {
            lines.push(format!("     · {d}"));
        }
        for w in &self.witnesses {
            lines.push(format!("     ! {w}"));
        }
        lines.join("\n")
    }
}

/// Summary footer for a suite run.
pub fn suite_summary(reports: &[Report]) -> String {
    let pass = reports.iter().filter(|r| r.passed()).count();
    let fail = reports.len() - pass;
    format!(
        "{} checks: {} pass, {} fail",
        reports.len(),
        pass,
        fail
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::{run_check, Verdict};
    use std::path::PathBuf;

    fn ctx() -> CheckContext {
        CheckContext {
            tolerance: 1e-9,
            seed: 42,
            audit: false,
            base_dir: PathBuf::from("."),
        }
    }

    #[test]
    fn json_lines_have_stable_shape_and_no_timing_by_default() {
        let params: BTreeMap<String, String> =
            [("max-n".to_string(), "2".to_string())].into_iter().collect();
        let outcome = run_check("pair-matrix", &params, &ctx()).unwrap();
        assert_eq!(outcome.verdict, Verdict::Pass);
        let report = Report::new("pair-matrix", outcome, &params, &ctx(), None);
        let line = report.json_line();
        let value: serde_json::Value = serde_json::from_str(&line).unwrap();
        assert_eq!(value["check"], "pair-matrix");
        assert_eq!(value["verdict"], "pass");
        assert_eq!(value["config"]["seed"], 42);
        assert!(value.get("elapsed_ms").is_none());
        // Identical runs serialize identically.
        let outcome2 = run_check("pair-matrix", &params, &ctx()).unwrap();
        let report2 = Report::new("pair-matrix", outcome2, &params, &ctx(), None);
        assert_eq!(line, report2.json_line());
    }

    #[test]
    fn timings_appear_only_when_requested() {
        let params = BTreeMap::new();
        let outcome = run_check(
            "torus-bridge",
            &[("r".to_string(), "0.5".to_string()), ("range".to_string(), "1".to_string())]
                .into_iter()
                .collect(),
            &ctx(),
        )
        .unwrap();
        let report = Report::new("torus-bridge", outcome, &params, &ctx(), Some(7));
        let value: serde_json::Value = serde_json::from_str(&report.json_line()).unwrap();
        assert_eq!(value["elapsed_ms"], 7);
    }
}
