use std::fmt::Write;

use psi_pascal::{AdmissibleSequence, IdentityReport, IdentitySpec, Result, SuiteOutcome};
use serde_json::json;

/// `n`, `n_ψ`, `n_ψ!` for `0..=n`, and the binomial row `n`.
pub struct SequenceTable {
    sequence: String,
    rows: Vec<[String; 3]>,
    binomials: Vec<String>,
}

impl SequenceTable {
    pub fn build(seq: &AdmissibleSequence, n: usize) -> Result<Self> {
        let rows = (0..=n)
            .map(|k| Ok([k.to_string(), seq.psi_int(k)?.to_string(), seq.factorial(k)?.to_string()]))
            .collect::<Result<Vec<_>>>()?;
        let binomials = (0..=n)
            .map(|k| Ok(seq.binomial(n, k as i64)?.to_string()))
            .collect::<Result<Vec<_>>>()?;
        Ok(SequenceTable { sequence: seq.selector(), rows, binomials })
    }

    pub fn to_text(&self) -> String {
        let header = ["n", "n_psi", "n_psi!"];
        let widths: Vec<usize> = (0..3)
            .map(|c| self.rows.iter().map(|r| r[c].chars().count()).chain([header[c].len()]).max().unwrap())
            .collect();
        let mut out = format!("sequence: {}\n", self.sequence);
        let line = |cells: [&str; 3]| {
            let padded: Vec<String> =
                cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            padded.join("  ")
        };
        writeln!(out, "{}", line(header)).unwrap();
        for r in &self.rows {
            writeln!(out, "{}", line([&r[0], &r[1], &r[2]])).unwrap();
        }
        let n = self.rows.len() - 1;
        writeln!(out, "binomials n={n}: {}", self.binomials.join(" ")).unwrap();
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,n_psi,n_psi!\n");
        for r in &self.rows {
            writeln!(out, "{}", r.join(",")).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<_> = self
            .rows
            .iter()
            .map(|r| json!({ "n": r[0], "psi": r[1], "factorial": r[2] }))
            .collect();
        let doc = json!({ "sequence": self.sequence, "rows": rows, "binomials": self.binomials });
        format!("{doc}\n")
    }
}

fn params_line(report: &IdentityReport) -> String {
    report.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

fn index_tuple(index: &[i64]) -> String {
    let parts: Vec<String> = index.iter().map(i64::to_string).collect();
    format!("({})", parts.join(", "))
}

fn status_word(report: &IdentityReport) -> &'static str {
    if report.passed() {
        "PASS"
    } else {
        "FAIL"
    }
}

fn expectation_note(report: &IdentityReport) -> String {
    match report.expected {
        Some(e) => {
            let e = serde_json::to_value(e).unwrap();
            let health = if report.is_healthy() { "healthy" } else { "UNHEALTHY" };
            format!(" [{}, {health}]", e.as_str().unwrap_or_default())
        }
        None => String::new(),
    }
}

pub fn report_text(report: &IdentityReport) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}{}", report.id, status_word(report), expectation_note(report)).unwrap();
    writeln!(out, "  params: {}", params_line(report)).unwrap();
    writeln!(out, "  checked: {}", report.checked).unwrap();
    if let Some(cx) = &report.counterexample {
        writeln!(out, "  counterexample at {}", index_tuple(&cx.index)).unwrap();
        writeln!(out, "    lhs = {}", cx.lhs).unwrap();
        writeln!(out, "    rhs = {}", cx.rhs).unwrap();
    }
    if let Some(v) = &report.values {
        writeln!(out, "  value at {}: {} = {}", index_tuple(&v.index), v.lhs, v.rhs).unwrap();
    }
    out
}

pub fn suite_text(outcome: &SuiteOutcome) -> String {
    let mut out = String::new();
    for r in &outcome.reports {
        write!(out, "{:<4}  {:<13}  {}{}", status_word(r), r.id, params_line(r), expectation_note(r))
            .unwrap();
        if let Some(cx) = &r.counterexample {
            write!(out, "  at {}: {} vs {}", index_tuple(&cx.index), cx.lhs, cx.rhs).unwrap();
        }
        out.push('\n');
    }
    let s = &outcome.summary;
    writeln!(
        out,
        "total {}  passed {}  failed {}  expected-fail {}  unhealthy {}  => {}",
        s.total,
        s.passed,
        s.failed,
        s.expected_fail,
        s.unhealthy,
        if s.healthy { "healthy" } else { "UNHEALTHY" }
    )
    .unwrap();
    out
}

pub fn identity_list(specs: &[IdentitySpec]) -> String {
    let width = specs.iter().map(|s| s.id.len()).max().unwrap_or(0);
    let mut out = String::new();
    for s in specs {
        let target = serde_json::to_value(s.target).unwrap();
        writeln!(
            out,
            "{:<width$}  {:<10}  [{}]  {}",
            s.id,
            target.as_str().unwrap_or_default(),
            s.params.join(","),
            s.summary
        )
        .unwrap();
    }
    out
}
