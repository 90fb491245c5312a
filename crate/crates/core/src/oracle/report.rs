use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

/// One sub-check inside a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub check: String,
    #[serde(with = "crate::bigint_serde")]
    pub expected: BigInt,
    #[serde(with = "crate::bigint_serde")]
    pub observed: BigInt,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub passed: bool,
}

impl Witness {
    pub fn new(check: impl Into<String>, expected: impl Into<BigInt>, observed: impl Into<BigInt>) -> Self {
        let (expected, observed) = (expected.into(), observed.into());
        Witness { check: check.into(), passed: expected == observed, expected, observed, detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// Outcome of one verification job. `passed` holds exactly when the two
/// values agree and every witness passed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    #[serde(with = "crate::bigint_serde")]
    pub formula_value: BigInt,
    #[serde(with = "crate::bigint_serde")]
    pub oracle_value: BigInt,
    pub witnesses: Vec<Witness>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new(
        subject: impl Into<String>,
        formula_value: impl Into<BigInt>,
        oracle_value: impl Into<BigInt>,
        witnesses: Vec<Witness>,
    ) -> Self {
        let (formula_value, oracle_value) = (formula_value.into(), oracle_value.into());
        let passed = formula_value == oracle_value && witnesses.iter().all(|w| w.passed);
        VerificationReport { subject: subject.into(), formula_value, oracle_value, witnesses, passed }
    }

    /// A job that could not run; always failed.
    pub fn errored(subject: impl Into<String>, error: impl ToString) -> Self {
        let w = Witness {
            check: "completed".into(),
            expected: 1.into(),
            observed: 0.into(),
            detail: Some(error.to_string()),
            passed: false,
        };
        VerificationReport {
            subject: subject.into(),
            formula_value: 0.into(),
            oracle_value: 0.into(),
            witnesses: vec![w],
            passed: false,
        }
    }

    pub fn witness(&self, check: &str) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.check == check)
    }
}

/// Plain-text table, one row per report, followed by the failed witnesses.
pub fn summary_table(reports: &[VerificationReport]) -> String {
    let header = ["status", "subject", "formula", "oracle", "checks"];
    let rows: Vec<[String; 5]> = reports
        .iter()
        .map(|r| {
            let ok = r.witnesses.iter().filter(|w| w.passed).count();
            [
                if r.passed { "PASS" } else { "FAIL" }.to_owned(),
                r.subject.clone(),
                r.formula_value.to_string(),
                r.oracle_value.to_string(),
                format!("{ok}/{}", r.witnesses.len()),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[&str]| {
        let padded: Vec<String> =
            cells.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(&header);
    for row in &rows {
        line(&row.each_ref().map(String::as_str));
    }
    for r in reports.iter().filter(|r| !r.passed) {
        for w in r.witnesses.iter().filter(|w| !w.passed) {
            let _ = write!(out, "  {}: {} expected {}, observed {}", r.subject, w.check, w.expected, w.observed);
            if let Some(d) = &w.detail {
                let _ = write!(out, " ({d})");
            }
            out.push('\n');
        }
        if r.formula_value != r.oracle_value && r.witnesses.iter().all(|w| w.passed) {
            let _ = writeln!(out, "  {}: formula and oracle disagree", r.subject);
        }
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    let _ = writeln!(out, "{} passed, {failed} failed", reports.len() - failed);
    out
}
