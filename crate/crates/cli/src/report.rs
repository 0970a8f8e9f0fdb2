//! Run documents: the JSON envelope written for every run, plus CSV
//! trace export. Rerunning with the same config and seed reproduces the
//! document byte for byte except for the `timestamp` field.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use prehom_core::{BasisSearchReport, SearchReport};
use serde::{Deserialize, Serialize};

/// Envelope around a run's reports: when it ran, the full resolved
/// parameter map, and the reports themselves.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunDocument<T> {
    pub timestamp: u64,
    pub params: BTreeMap<String, String>,
    pub reports: Vec<T>,
}

pub fn unix_now() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

impl<T: Serialize> RunDocument<T> {
    pub fn new(params: BTreeMap<String, String>, reports: Vec<T>) -> Self {
        RunDocument {
            timestamp: unix_now(),
            params,
            reports,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("run documents serialize")
    }
}

/// Drops the timestamp line so two documents can be compared for
/// reproducibility.
pub fn strip_timestamp(json: &str) -> String {
    json.lines()
        .filter(|l| !l.trim_start().starts_with("\"timestamp\""))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn write_text(path: &Path, text: &str) -> std::io::Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(text.as_bytes())
}

/// One row per trace entry: `case,target,at,error`.
pub fn trace_csv(reports: &[SearchReport]) -> String {
    let mut out = String::from("case,target,at,error\n");
    for r in reports {
        for e in &r.trace {
            out.push_str(&format!("{},{},{},{}\n", r.case, r.target, e.at, e.error));
        }
    }
    out
}

/// Basis-search traces have no per-target split: `at,error` rows.
pub fn basis_trace_csv(report: &BasisSearchReport) -> String {
    let mut out = String::from("at,error\n");
    for e in &report.trace {
        out.push_str(&format!("{},{}\n", e.at, e.error));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn document_round_trips_and_timestamp_strips() {
        let mut params = BTreeMap::new();
        params.insert("case".to_string(), "CUBIC4".to_string());
        let doc = RunDocument::new(params, vec![SearchReport {
            case: "CUBIC4".into(),
            target: -4.0,
            best_point: vec![1, 0, 1, 0],
            best_value: -4.0,
            error: 0.0,
            evaluations: 10,
            radius_or_budget: 2,
            seed: 0,
            trace: vec![],
        }]);
        let json = doc.to_json();
        let back: RunDocument<SearchReport> = serde_json::from_str(&json).unwrap();
        assert_eq!(back.reports, doc.reports);
        assert_eq!(back.params, doc.params);
        let stripped = strip_timestamp(&json);
        assert!(!stripped.contains("timestamp"));
        assert!(stripped.contains("\"best_point\""));
    }

    #[test]
    fn csv_has_one_row_per_trace_entry() {
        let r = SearchReport {
            case: "BASELINE".into(),
            target: 0.5,
            best_point: vec![1, 1, 1],
            best_value: 0.4,
            error: 0.1,
            evaluations: 5,
            radius_or_budget: 4,
            seed: 0,
            trace: vec![
                prehom_core::TraceEntry { at: 2, error: 0.3 },
                prehom_core::TraceEntry { at: 4, error: 0.1 },
            ],
        };
        let csv = trace_csv(&[r]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "case,target,at,error");
        assert_eq!(lines[2], "BASELINE,0.5,4,0.1");
    }
}
