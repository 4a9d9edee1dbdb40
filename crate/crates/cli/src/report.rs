//! Report assembly and the three renderings.

use serde::Serialize;
use serde_json::Value;

use crate::args::Format;

/// A flat table for CSV output.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub struct Report {
    pub command: String,
    pub params: Value,
    pub payload: Value,
    pub summary: Value,
    /// Replaces the generic plain rendering of the payload.
    pub plain: Option<Vec<String>>,
    pub table: Option<Table>,
    /// Whether plain output appends the generic summary rendering.
    pub plain_summary: bool,
    /// An expected-to-hold statement failed.
    pub failed: bool,
}

impl Report {
    pub fn new(command: impl Into<String>, params: Value, payload: Value) -> Self {
        Report {
            command: command.into(),
            params,
            payload,
            summary: Value::Null,
            plain: None,
            table: None,
            plain_summary: true,
            failed: false,
        }
    }

    pub fn summary(mut self, summary: Value) -> Self {
        self.summary = summary;
        self
    }

    pub fn plain(mut self, lines: Vec<String>) -> Self {
        self.plain = Some(lines);
        self
    }

    /// The custom plain lines already carry the summary.
    pub fn plain_without_summary(mut self) -> Self {
        self.plain_summary = false;
        self
    }

    pub fn table(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.table = Some(Table { header, rows });
        self
    }

    pub fn failed_if(mut self, failed: bool) -> Self {
        self.failed |= failed;
        self
    }

    pub fn render(&self, format: Format, elapsed_ms: Option<u64>) -> String {
        match format {
            Format::Json => self.json(elapsed_ms),
            Format::Plain => self.plain_text(elapsed_ms),
            Format::Csv => self.csv(),
        }
    }

    fn json(&self, elapsed_ms: Option<u64>) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            command: &'a str,
            params: &'a Value,
            payload: &'a Value,
            summary: &'a Value,
            elapsed_ms: Option<u64>,
        }
        let out = Out {
            command: &self.command,
            params: &self.params,
            payload: &self.payload,
            summary: &self.summary,
            elapsed_ms,
        };
        let mut s = serde_json::to_string_pretty(&out).expect("values always serialize");
        s.push('\n');
        s
    }

    fn plain_text(&self, elapsed_ms: Option<u64>) -> String {
        let mut lines = match &self.plain {
            Some(lines) => lines.clone(),
            None => {
                let mut out = Vec::new();
                render_value(&self.payload, 0, &mut out);
                out
            }
        };
        if self.plain_summary && !self.summary.is_null() {
            lines.push(String::new());
            render_value(&self.summary, 0, &mut lines);
        }
        if let Some(ms) = elapsed_ms {
            lines.push(format!("elapsed: {ms} ms"));
        }
        let mut s = lines.join("\n");
        s.push('\n');
        s
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.table {
            Some(t) => {
                w.write_record(&t.header).expect("in-memory write");
                for row in &t.rows {
                    w.write_record(row).expect("in-memory write");
                }
            }
            None => {
                w.write_record(["key", "value"]).expect("in-memory write");
                let mut pairs = Vec::new();
                flatten(&self.payload, String::new(), &mut pairs);
                for (k, v) in pairs {
                    w.write_record([k, v]).expect("in-memory write");
                }
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }
}

pub fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn as_matrix(v: &Value) -> Option<Vec<Vec<String>>> {
    let rows = v.as_array()?;
    let first = rows.first()?.as_array()?.len();
    if first == 0 {
        return None;
    }
    rows.iter()
        .map(|r| {
            let r = r.as_array()?;
            (r.len() == first).then_some(())?;
            r.iter().map(scalar).collect()
        })
        .collect()
}

fn numeric(s: &str) -> bool {
    let t = s.strip_prefix('-').unwrap_or(s);
    !t.is_empty() && t.chars().all(|c| c.is_ascii_digit() || c == '/')
}

/// Columns padded to a common width: numbers right-aligned, text left-aligned.
pub fn aligned(rows: &[Vec<String>], indent: usize) -> Vec<String> {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    rows.iter()
        .map(|r| {
            let cells: Vec<String> = r
                .iter()
                .enumerate()
                .map(|(c, s)| {
                    if numeric(s) {
                        format!("{s:>w$}", w = widths[c])
                    } else {
                        format!("{s:<w$}", w = widths[c])
                    }
                })
                .collect();
            format!("{}{}", " ".repeat(indent), cells.join("  ")).trim_end().to_string()
        })
        .collect()
}

fn render_value(v: &Value, indent: usize, out: &mut Vec<String>) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                render_entry(k, v, indent, out);
            }
        }
        Value::Array(items) => {
            if let Some(m) = as_matrix(v) {
                out.extend(aligned(&m, indent));
            } else if items.iter().all(|i| scalar(i).is_some()) {
                out.push(format!("{pad}{}", items.iter().filter_map(scalar).collect::<Vec<_>>().join(" ")));
            } else {
                for (i, item) in items.iter().enumerate() {
                    render_entry(&format!("[{i}]"), item, indent, out);
                }
            }
        }
        other => out.push(format!("{pad}{}", scalar(other).unwrap_or_default())),
    }
}

fn render_entry(key: &str, v: &Value, indent: usize, out: &mut Vec<String>) {
    let pad = " ".repeat(indent);
    match v {
        Value::Array(items) if items.is_empty() => out.push(format!("{pad}{key}: []")),
        Value::Array(items) if as_matrix(v).is_none() && items.iter().all(|i| scalar(i).is_some()) => {
            out.push(format!("{pad}{key}: {}", items.iter().filter_map(scalar).collect::<Vec<_>>().join(" ")));
        }
        Value::Array(_) | Value::Object(_) => {
            out.push(format!("{pad}{key}:"));
            render_value(v, indent + 2, out);
        }
        other => out.push(format!("{pad}{key}: {}", scalar(other).unwrap_or_default())),
    }
}

fn flatten(v: &Value, prefix: String, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(v, join(k), out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(v, join(&i.to_string()), out);
            }
        }
        other => out.push((prefix, scalar(other).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn matrices_align_right() {
        let mut out = Vec::new();
        render_value(&json!({"inverse": [[4, 12], [-30, 180]]}), 0, &mut out);
        assert_eq!(out, vec!["inverse:", "    4   12", "  -30  180"]);
    }

    #[test]
    fn rationals_stay_strings() {
        let r = Report::new("hankel", json!({}), json!({"det": "-1/360"}));
        assert!(r.render(Format::Json, None).contains("\"det\": \"-1/360\""));
        assert_eq!(r.render(Format::Plain, None), "det: -1/360\n");
    }

    #[test]
    fn csv_falls_back_to_key_value_pairs() {
        let r = Report::new("x", json!({}), json!({"a": [1, 2], "b": {"c": null}}));
        assert_eq!(r.render(Format::Csv, None), "key,value\na.0,1\na.1,2\nb.c,-\n");
    }
}
