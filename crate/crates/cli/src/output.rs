use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A command result in all three renderings.
pub struct Report {
    pub schema: &'static str,
    pub value: Value,
    pub text: String,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(schema: &'static str, value: impl Serialize) -> Report {
        Report {
            schema,
            value: serde_json::to_value(value).expect("reports serialize"),
            text: String::new(),
            headers: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn text(mut self, text: impl Into<String>) -> Report {
        self.text = text.into();
        self
    }

    pub fn table(mut self, headers: Vec<&'static str>, rows: Vec<Vec<String>>) -> Report {
        self.headers = headers;
        self.rows = rows;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let mut obj = Map::new();
                obj.insert("schema".into(), Value::String(self.schema.into()));
                match &self.value {
                    Value::Object(m) => obj.extend(m.clone()),
                    v => {
                        obj.insert("result".into(), v.clone());
                    }
                }
                let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("json renders");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.headers).expect("in-memory write");
                for r in &self.rows {
                    w.write_record(r).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
            }
        }
    }
}

/// Renders a table with aligned columns.
pub fn aligned(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![line(headers.to_vec())];
    for r in rows {
        out.push(line(r.iter().map(String::as_str).collect()));
    }
    out.join("\n")
}
