//! Verification records and their JSON / markdown renderings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::SignConvention;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Expected non-result (e.g. coercivity for real `c <= 0`); never a failure.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub check_id: String,
    pub params: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub convention: Option<SignConvention>,
    pub status: Status,
    pub metrics: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<String>,
}

impl VerificationReport {
    pub fn new(check_id: impl Into<String>, status: Status) -> Self {
        VerificationReport {
            check_id: check_id.into(),
            params: BTreeMap::new(),
            convention: None,
            status,
            metrics: BTreeMap::new(),
            counterexample: None,
        }
    }

    pub fn from_bool(check_id: impl Into<String>, pass: bool) -> Self {
        Self::new(check_id, if pass { Status::Pass } else { Status::Fail })
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn metric(mut self, key: &str, value: f64) -> Self {
        self.metrics.insert(key.to_string(), value);
        self
    }

    pub fn with_convention(mut self, conv: SignConvention) -> Self {
        self.convention = Some(conv);
        self
    }

    pub fn with_counterexample(mut self, text: Option<String>) -> Self {
        self.counterexample = text;
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

pub fn render(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Json => render_json(reports),
        Format::Markdown => render_markdown(reports),
    }
}

/// Parse a format name and render; unknown names are rejected.
pub fn render_named(reports: &[VerificationReport], format: &str) -> Result<String> {
    Ok(render(reports, format.parse()?))
}

pub fn render_json(reports: &[VerificationReport]) -> String {
    if reports.is_empty() {
        return "[]".to_string();
    }
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

fn fmt_status(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Degenerate => "degenerate",
    }
}

fn fmt_params(p: &BTreeMap<String, Value>) -> String {
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ")
}

fn fmt_metrics(m: &BTreeMap<String, f64>) -> String {
    m.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ")
}

/// Summary table plus, when present, the convention pass/fail matrix.
pub fn render_markdown(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    let total = reports.len();
    let failed = reports.iter().filter(|r| r.status == Status::Fail).count();
    out.push_str(&format!("# Verification summary\n\n{total} checks, {failed} failed.\n\n"));
    out.push_str("| check | status | convention | params | metrics |\n");
    out.push_str("|---|---|---|---|---|\n");
    for r in reports {
        let conv = r.convention.map(|c| c.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} |\n",
            r.check_id,
            fmt_status(r.status),
            conv,
            fmt_params(&r.params),
            fmt_metrics(&r.metrics)
        ));
    }

    let rows: Vec<&VerificationReport> =
        reports.iter().filter(|r| r.check_id == crate::localization::CONVENTION_ROW_ID).collect();
    if !rows.is_empty() {
        let mut columns: Vec<String> = Vec::new();
        for r in &rows {
            for k in r.metrics.keys() {
                if !columns.contains(k) {
                    columns.push(k.clone());
                }
            }
        }
        out.push_str("\n## Convention matrix\n\n| convention | ");
        out.push_str(&columns.join(" | "));
        out.push_str(" | all |\n|---|");
        out.push_str(&"---|".repeat(columns.len() + 1));
        out.push('\n');
        for r in rows {
            let conv = r.convention.map(|c| c.to_string()).unwrap_or_default();
            let cells: Vec<&str> = columns
                .iter()
                .map(|k| match r.metrics.get(k) {
                    Some(v) if *v == 1.0 => "pass",
                    Some(_) => "fail",
                    None => "",
                })
                .collect();
            let all = if r.status == Status::Pass { "pass" } else { "fail" };
            out.push_str(&format!("| {conv} | {} | {all} |\n", cells.join(" | ")));
        }
    }

    let failures: Vec<&VerificationReport> =
        reports.iter().filter(|r| r.status == Status::Fail && r.counterexample.is_some()).collect();
    if !failures.is_empty() {
        out.push_str("\n## Counterexamples\n\n");
        for r in failures {
            out.push_str(&format!("- `{}`: `{}`\n", r.check_id, r.counterexample.as_deref().unwrap_or("")));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_json_is_brackets() {
        assert_eq!(render_json(&[]), "[]");
    }

    #[test]
    fn pass_record_has_no_counterexample_field() {
        let r = VerificationReport::new("x", Status::Pass).param("p", 1).metric("k", 0.5);
        let js = render_json(&[r]);
        let v: Value = serde_json::from_str(&js).unwrap();
        assert_eq!(v[0]["status"], "pass");
        assert_eq!(v[0]["checkId"], "x");
        assert!(v[0].get("counterexample").is_none());
    }

    #[test]
    fn unknown_format_rejected() {
        assert_eq!(render_named(&[], "yaml"), Err(Error::UnknownFormat("yaml".into())));
        assert!(render_named(&[], "markdown").is_ok());
    }
}
