//! Check reports and their table / JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::error::{FlabError, Result};
use crate::subgroup::Subgroup;

/// The two sides of a failed comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub lhs_order: usize,
    pub rhs_order: usize,
    /// Sorted element indices of each side.
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
    pub note: String,
}

impl Witness {
    pub fn of(lhs: &Subgroup, rhs: &Subgroup, note: impl Into<String>) -> Witness {
        Witness {
            lhs_order: lhs.order(),
            rhs_order: rhs.order(),
            lhs: lhs.fingerprint(),
            rhs: rhs.fingerprint(),
            note: note.into(),
        }
    }

    pub fn note(note: impl Into<String>) -> Witness {
        Witness {
            lhs_order: 0,
            rhs_order: 0,
            lhs: Vec::new(),
            rhs: Vec::new(),
            note: note.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub group: String,
    pub order: u64,
    pub lhs_order: usize,
    pub rhs_order: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Row {
    /// Row comparing two subgroups for equality.
    pub fn compare(group: &str, order: u64, lhs: &Subgroup, rhs: &Subgroup, note: &str) -> Row {
        let pass = lhs == rhs;
        Row {
            group: group.to_string(),
            order,
            lhs_order: lhs.order(),
            rhs_order: rhs.order(),
            pass,
            witness: (!pass).then(|| Witness::of(lhs, rhs, note)),
        }
    }

    pub fn error(group: &str, order: u64, err: &FlabError) -> Row {
        Row {
            group: group.to_string(),
            order,
            lhs_order: 0,
            rhs_order: 0,
            pass: false,
            witness: Some(Witness::note(format!("error: {err}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub rows: Vec<Row>,
    pub summary: Summary,
    pub elapsed_ms: u64,
    /// Informational probes never affect the exit status.
    #[serde(skip)]
    pub asserted: bool,
}

impl CheckReport {
    pub fn new(
        check: &str,
        params: BTreeMap<String, String>,
        mut rows: Vec<Row>,
        asserted: bool,
        elapsed_ms: u64,
    ) -> CheckReport {
        rows.sort_by(|a, b| (a.order, &a.group).cmp(&(b.order, &b.group)));
        let fail = rows.iter().filter(|r| !r.pass).count();
        CheckReport {
            check: check.to_string(),
            params,
            summary: Summary {
                pass: rows.len() - fail,
                fail,
            },
            rows,
            elapsed_ms,
            asserted,
        }
    }

    /// Whether this report counts as a failure for the exit status.
    pub fn failed(&self) -> bool {
        self.asserted && self.summary.fail > 0
    }

    pub fn failing_rows(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| !r.pass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
}

impl std::str::FromStr for Format {
    type Err = FlabError;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            _ => Err(FlabError::Usage(format!(
                "unknown format `{s}` (expected table or json)"
            ))),
        }
    }
}

fn render_table(r: &CheckReport) -> String {
    let mut out = String::new();
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(out, "check {} {}", r.check, params.join(" "));
    let width = r.rows.iter().map(|x| x.group.len()).max().unwrap_or(5).max(5);
    let _ = writeln!(
        out,
        "{:<width$}  {:>6}  {:>6}  {:>6}  result",
        "group", "order", "lhs", "rhs"
    );
    for row in &r.rows {
        let verdict = if row.pass { "pass" } else { "FAIL" };
        let _ = write!(
            out,
            "{:<width$}  {:>6}  {:>6}  {:>6}  {verdict}",
            row.group, row.order, row.lhs_order, row.rhs_order
        );
        if let Some(w) = &row.witness {
            let _ = write!(out, "  [{}]", w.note);
        }
        out.push('\n');
    }
    let mode = if r.asserted { "" } else { " (informational)" };
    let _ = writeln!(out, "summary: {} pass, {} fail{mode}", r.summary.pass, r.summary.fail);
    if r.elapsed_ms > 0 {
        let _ = writeln!(out, "elapsed: {} ms", r.elapsed_ms);
    }
    out
}

/// Table: one block per report. JSON: one object per line.
pub fn render_report(reports: &[CheckReport], format: Format) -> String {
    match format {
        Format::Table => reports.iter().map(render_table).collect::<Vec<_>>().join("\n"),
        Format::Json => {
            let mut out = String::new();
            for r in reports {
                out.push_str(&serde_json::to_string(r).expect("report serializes"));
                out.push('\n');
            }
            out
        }
    }
}
