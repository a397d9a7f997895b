//! Reports rendered as JSON, CSV or aligned text.

use std::fmt::Write as _;

use coopetition::{NumericMode, Scalar};
use serde_json::{Map, Value};

use crate::error::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// A table of rows plus key/value metadata.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    pub meta: Vec<(String, Value)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Report {
            command: command.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Report::default()
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.meta.push((key.to_string(), value.into()));
        self
    }

    pub fn row(&mut self, cells: Vec<Value>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }
}

/// Exact values as `"num/den"` strings, float values as JSON numbers.
pub fn number<S: Scalar>(x: &S) -> Value {
    match S::MODE {
        NumericMode::Exact => Value::String(x.to_string()),
        NumericMode::Float => serde_json::Number::from_f64(x.to_f64())
            .map(Value::Number)
            .unwrap_or(Value::Null),
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn render(report: &Report, format: Format) -> CliResult<String> {
    match format {
        Format::Json => {
            let mut doc = Map::new();
            doc.insert("command".into(), Value::String(report.command.clone()));
            for (k, v) in &report.meta {
                doc.insert(k.clone(), v.clone());
            }
            let rows = report
                .rows
                .iter()
                .map(|r| {
                    Value::Object(
                        report
                            .columns
                            .iter()
                            .cloned()
                            .zip(r.iter().cloned())
                            .collect(),
                    )
                })
                .collect();
            doc.insert("rows".into(), Value::Array(rows));
            let mut text = serde_json::to_string_pretty(&Value::Object(doc)).expect("values serialize");
            text.push('\n');
            Ok(text)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&report.columns)?;
            for r in &report.rows {
                w.write_record(r.iter().map(plain))?;
            }
            let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv of utf-8 fields is utf-8"))
        }
        Format::Pretty => {
            let mut out = String::new();
            for (k, v) in &report.meta {
                let _ = writeln!(out, "{k}: {}", plain(v));
            }
            if report.columns.is_empty() {
                return Ok(out);
            }
            if !report.meta.is_empty() {
                out.push('\n');
            }
            let cells: Vec<Vec<String>> = report.rows.iter().map(|r| r.iter().map(plain).collect()).collect();
            let widths: Vec<usize> = report
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).chain([c.len()]).max().unwrap_or(0))
                .collect();
            let line = |fields: &[String]| {
                let padded: Vec<String> = fields
                    .iter()
                    .zip(&widths)
                    .map(|(f, w)| format!("{f:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            let _ = writeln!(out, "{}", line(&report.columns));
            for r in &cells {
                let _ = writeln!(out, "{}", line(r));
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use coopetition::scalar::ratio;

    fn sample() -> Report {
        let mut r = Report::new("demo", &["coalition", "value"]);
        r.meta("mode", "exact");
        r.row(vec![Value::from("a,b"), number(&ratio(-1, 2))]);
        r
    }

    #[test]
    fn formats() {
        let r = sample();
        assert_eq!(render(&r, Format::Csv).unwrap(), "coalition,value\n\"a,b\",-1/2\n");
        let json: Value = serde_json::from_str(&render(&r, Format::Json).unwrap()).unwrap();
        assert_eq!(json["rows"][0]["value"], "-1/2");
        assert_eq!(json["mode"], "exact");
        let pretty = render(&r, Format::Pretty).unwrap();
        assert!(pretty.contains("a,b        -1/2"), "{pretty}");
        assert_eq!(number(&0.25f64), Value::from(0.25));
    }
}
