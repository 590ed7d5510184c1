use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Fixed 10-significant-digit rendering, so identical runs are
/// byte-identical.
pub fn sig10(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..10).contains(&exp) {
        let decimals = (9 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.9e}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReportRow {
    pub label: String,
    pub claimed: f64,
    pub computed: f64,
    pub abs_err: f64,
    pub status: Status,
    pub citation: String,
}

impl ReportRow {
    /// `|claimed − computed| ≤ tol`.
    pub fn close(label: impl Into<String>, claimed: f64, computed: f64, tol: f64, citation: &str) -> Self {
        let abs_err = (claimed - computed).abs();
        Self::with_err(label, claimed, computed, abs_err, tol, citation)
    }

    /// `computed ≤ claimed + tol`; the error is the overshoot.
    pub fn at_most(label: impl Into<String>, claimed: f64, computed: f64, tol: f64, citation: &str) -> Self {
        let abs_err = (computed - claimed).max(0.0);
        Self::with_err(label, claimed, computed, abs_err, tol, citation)
    }

    pub fn with_err(
        label: impl Into<String>,
        claimed: f64,
        computed: f64,
        abs_err: f64,
        tol: f64,
        citation: &str,
    ) -> Self {
        let status = if abs_err <= tol { Status::Pass } else { Status::Fail };
        Self { label: label.into(), claimed, computed, abs_err, status, citation: citation.into() }
    }

    /// A row whose computation raised an error.
    pub fn failed(label: impl Into<String>, claimed: f64, err: &dyn std::fmt::Display, citation: &str) -> Self {
        Self {
            label: label.into(),
            claimed,
            computed: f64::NAN,
            abs_err: f64::NAN,
            status: Status::Fail,
            citation: format!("{citation} [error: {err}]"),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn fields(&self) -> [String; 6] {
        [
            self.label.clone(),
            sig10(self.claimed),
            sig10(self.computed),
            sig10(self.abs_err),
            self.status.as_str().to_string(),
            self.citation.clone(),
        ]
    }
}

pub const REPORT_HEADER: [&str; 6] = ["label", "claimed", "computed", "abs_err", "status", "citation"];

/// Renders a table of string cells.
pub fn render(out: &mut dyn Write, format: Format, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(header)?;
            for r in rows {
                w.write_record(r)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let m: Map<String, Value> =
                        header.iter().zip(r).map(|(h, v)| (h.to_string(), Value::String(v.clone()))).collect();
                    Value::Object(m)
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &items)?;
            writeln!(out)?;
        }
        Format::Text => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
            for r in rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", line(header.to_vec()))?;
            for r in rows {
                writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
            }
        }
    }
    Ok(())
}

pub fn render_report(out: &mut dyn Write, format: Format, rows: &[ReportRow]) -> Result<()> {
    let cells: Vec<Vec<String>> = rows.iter().map(|r| r.fields().to_vec()).collect();
    render(out, format, &REPORT_HEADER, &cells)
}
