//! Rendering of reports as JSON, CSV (RFC 4180) or plain text.
//!
//! Rendered output never contains timings so that identical inputs give
//! byte-identical output.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{BoundReport, BoundSummary};
use crate::ch::CHVerdict;
use crate::exact::ExactResult;
use crate::polys::format_value;
use crate::spectra::Spectrum;
use crate::tables::{RowStatus, TableReport};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Format, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format `{other}` (json, csv, text)")),
        }
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Fixture(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Fixture(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// The exact result without its timing.
pub fn exact_json(r: &ExactResult) -> Value {
    json!({ "alpha_k": r.alpha_k, "witness": r.witness, "k": r.k })
}

// ---- spectrum ----

/// The fixture layout `{theta, mult, n}` plus `d`; integral eigenvalues are
/// written as integers.
pub fn spectrum_json(s: &Spectrum) -> Value {
    let mut v = serde_json::to_value(s).expect("serializable");
    v["d"] = json!(s.d());
    v
}

pub fn render_spectrum(s: &Spectrum, fmt: Format) -> Result<String> {
    match fmt {
        Format::Json => Ok(to_json(&spectrum_json(s))),
        Format::Csv => csv_string(
            &["i", "theta", "mult"],
            s.theta()
                .iter()
                .zip(s.mults())
                .enumerate()
                .map(|(i, (t, m))| vec![i.to_string(), format_value(*t), m.to_string()]),
        ),
        Format::Text => {
            let parts: Vec<String> = s
                .theta()
                .iter()
                .zip(s.mults())
                .map(|(t, m)| format!("{}^{m}", format_value(*t)))
                .collect();
            Ok(format!("n = {}, d = {}\n{{{}}}\n", s.n(), s.d(), parts.join(", ")))
        }
    }
}

// ---- bounds ----

pub fn bounds_csv(reports: &[BoundReport]) -> Result<String> {
    csv_string(
        &["method", "k", "value", "floor", "applicable", "reason", "best"],
        reports.iter().map(|r| {
            vec![
                r.method.to_string(),
                r.k.to_string(),
                opt(r.value),
                opt(r.floor_value),
                r.applicable.to_string(),
                r.reason.clone().unwrap_or_default(),
                r.best.to_string(),
            ]
        }),
    )
}

pub fn render_bounds(summary: &BoundSummary, exact: Option<&ExactResult>, fmt: Format) -> Result<String> {
    match fmt {
        Format::Json => {
            let mut v = serde_json::to_value(summary).expect("serializable");
            if let Some(e) = exact {
                v["exact"] = exact_json(e);
            }
            Ok(to_json(&v))
        }
        Format::Csv => {
            let mut s = bounds_csv(&summary.reports)?;
            // The oracle value rides along as a pseudo-row.
            if let Some(e) = exact {
                let _ = writeln!(s, "exact,{},{},{},true,,false", e.k, e.alpha_k, e.alpha_k);
            }
            Ok(s)
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "k = {}, n = {}, diameter = {}, d = {}", summary.k, summary.n, summary.diameter, summary.d);
            for r in &summary.reports {
                let mark = if r.best { "*" } else { " " };
                match (r.value, r.floor_value) {
                    (Some(v), Some(f)) => {
                        let _ = write!(s, "{mark} {:<24} {:>6}  ({})", r.method.as_str(), f, format_value(v));
                    }
                    _ => {
                        let _ = write!(s, "  {:<24}      -  {}", r.method.as_str(), r.reason.as_deref().unwrap_or(""));
                    }
                }
                if let Some(d) = &r.detail {
                    let _ = write!(s, "  [{d}]");
                }
                s.push('\n');
            }
            let _ = writeln!(s, "best = {}", opt(summary.best_floor));
            if let Some(e) = exact {
                let _ = writeln!(s, "exact = {}  witness {:?}", e.alpha_k, e.witness);
            }
            Ok(s)
        }
    }
}

// ---- classification ----

pub fn render_verdict(v: &CHVerdict, fmt: Format) -> Result<String> {
    match fmt {
        Format::Json => Ok(to_json(v)),
        Format::Csv => csv_string(
            &[
                "k",
                "inertia",
                "ratio",
                "ratio_raw",
                "bounds_equal",
                "linearly_related",
                "is_ch",
                "exact",
                "is_tight_ch",
            ],
            [vec![
                v.k.to_string(),
                v.inertia_value.to_string(),
                v.ratio_value.to_string(),
                format_value(v.ratio_raw),
                v.bounds_equal.to_string(),
                v.linearly_related.to_string(),
                v.is_ch.to_string(),
                opt(v.exact),
                opt(v.is_tight_ch),
            ]],
        ),
        Format::Text => {
            let status = match (v.is_ch, v.is_tight_ch) {
                (true, Some(true)) => "tight CH",
                (true, _) => "CH",
                (false, _) => "not CH",
            };
            let mut s = format!(
                "k = {}: {status}\n  inertia bound {}, ratio bound {} ({})\n  bounds equal: {}, linearly related: {}\n",
                v.k,
                v.inertia_value,
                v.ratio_value,
                format_value(v.ratio_raw),
                v.bounds_equal,
                v.linearly_related
            );
            match (v.exact, &v.exact_error) {
                (Some(a), _) => {
                    let _ = writeln!(s, "  exact alpha_{} = {a}", v.k);
                }
                (None, Some(e)) => {
                    let _ = writeln!(s, "  exact: {e}");
                }
                _ => {}
            }
            let fr = |xs: &[f64]| xs.iter().map(|x| format_value(*x)).collect::<Vec<_>>().join(", ");
            let _ = writeln!(s, "  sign values  ({})\n  minor values ({})", fr(&v.sign_values), fr(&v.minor_values));
            Ok(s)
        }
    }
}

// ---- tables ----

fn status_str(s: RowStatus) -> &'static str {
    match s {
        RowStatus::Match => "match",
        RowStatus::Mismatch => "MISMATCH",
        RowStatus::FixtureMissing => "fixture missing",
        RowStatus::Error => "ERROR",
    }
}

fn cell_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(cell_value).collect::<Vec<_>>().join(" "),
        Value::Number(n) => match n.as_f64() {
            Some(f) if n.is_f64() => format_value(f),
            _ => n.to_string(),
        },
        other => other.to_string(),
    }
}

pub fn render_table(t: &TableReport, fmt: Format) -> Result<String> {
    match fmt {
        Format::Json => Ok(to_json(t)),
        Format::Csv => {
            let mut rows = Vec::new();
            for r in &t.rows {
                if r.cells.is_empty() {
                    rows.push(vec![
                        t.id.clone(),
                        r.key.clone(),
                        String::new(),
                        String::new(),
                        String::new(),
                        status_str(r.status).into(),
                    ]);
                }
                for c in &r.cells {
                    rows.push(vec![
                        t.id.clone(),
                        r.key.clone(),
                        c.name.clone(),
                        cell_value(&c.expected),
                        c.computed.as_ref().map(cell_value).unwrap_or_default(),
                        match c.matches {
                            Some(true) => "match".into(),
                            Some(false) => "MISMATCH".into(),
                            None => "not computed".into(),
                        },
                    ]);
                }
            }
            csv_string(&["table", "row", "column", "expected", "computed", "status"], rows)
        }
        Format::Text => {
            let mut s = format!("{} ({})\n", t.title, t.id);
            for r in &t.rows {
                let _ = writeln!(s, "{:<22} {}", r.label, status_str(r.status));
                for c in &r.cells {
                    let got = c.computed.as_ref().map(cell_value).unwrap_or_else(|| "-".into());
                    let mark = match c.matches {
                        Some(true) => "ok",
                        Some(false) => "!!",
                        None => "--",
                    };
                    let _ = writeln!(s, "    {mark} {:<12} expected {:<28} computed {got}", c.name, cell_value(&c.expected));
                }
                if let Some(m) = &r.message {
                    let _ = writeln!(s, "    {m}");
                }
                if let Some(n) = &r.note {
                    let _ = writeln!(s, "    note: {n}");
                }
            }
            let _ = writeln!(s, "{}", if t.all_match { "all rows match" } else { "some rows do not match" });
            Ok(s)
        }
    }
}
