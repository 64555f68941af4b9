//! Line-oriented output: `key=value` records or CSV rows.

use std::fmt::Write as _;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

/// One verification result.
#[derive(Clone, Debug)]
pub struct Record {
    pub check: &'static str,
    pub params: Vec<(&'static str, String)>,
    pub residual: f64,
    /// Secondary diagnostics printed after the residual.
    pub extra: Vec<(&'static str, String)>,
    pub tol: f64,
    pub pass: bool,
    pub error: Option<String>,
}

impl Record {
    pub fn new(check: &'static str, residual: f64, tol: f64) -> Self {
        Record {
            check,
            params: Vec::new(),
            residual,
            extra: Vec::new(),
            tol,
            pass: residual <= tol,
            error: None,
        }
    }

    pub fn failed(check: &'static str, error: String) -> Self {
        Record {
            check,
            params: Vec::new(),
            residual: f64::NAN,
            extra: Vec::new(),
            tol: f64::NAN,
            pass: false,
            error: Some(error),
        }
    }

    pub fn param(mut self, key: &'static str, value: impl ToString) -> Self {
        self.params.push((key, value.to_string()));
        self
    }

    pub fn extra(mut self, key: &'static str, value: impl ToString) -> Self {
        self.extra.push((key, value.to_string()));
        self
    }
}

pub fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

fn join(pairs: &[(&'static str, String)], sep: &str) -> String {
    pairs
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(sep)
}

pub fn render_records(records: &[Record], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Text => {
            for r in records {
                let mut line = format!("check={}", r.check);
                for (k, v) in &r.params {
                    let _ = write!(line, " {k}={v}");
                }
                if let Some(e) = &r.error {
                    let _ = write!(line, " error={e:?}");
                } else {
                    let _ = write!(line, " residual={}", sci(r.residual));
                    for (k, v) in &r.extra {
                        let _ = write!(line, " {k}={v}");
                    }
                    let _ = write!(line, " tol={}", sci(r.tol));
                }
                let _ = writeln!(out, "{line} pass={}", r.pass);
            }
        }
        Format::Csv => {
            out.push_str("check,params,residual,tol,pass,extra\n");
            for r in records {
                let extra = match &r.error {
                    Some(e) => format!("error={}", e.replace(',', ";")),
                    None => join(&r.extra, ";"),
                };
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.check,
                    join(&r.params, ";"),
                    sci(r.residual),
                    sci(r.tol),
                    r.pass,
                    extra
                );
            }
        }
    }
    out
}

/// Header plus rows for tabular computation output.
pub fn render_table(header: &[&str], rows: &[Vec<String>], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Text => {
            for row in rows {
                let line: Vec<String> = header.iter().zip(row).map(|(h, v)| format!("{h}={v}")).collect();
                let _ = writeln!(out, "{}", line.join(" "));
            }
        }
        Format::Csv => {
            let _ = writeln!(out, "{}", header.join(","));
            for row in rows {
                let _ = writeln!(out, "{}", row.join(","));
            }
        }
    }
    out
}
