//! The report envelope and its three renderings.
//!
//! JSON is the machine contract: stable top-level keys `command`, `group`,
//! `results`, `warnings`, with object keys emitted in sorted order so
//! identical inputs yield byte-identical output. The table and CSV views
//! are generic walks over the same results value, so every field appears
//! in every format.

use serde::Serialize;
use serde_json::Value;
use std::fmt::Write as _;

#[derive(Serialize)]
pub struct GroupInfo {
    pub kind: String,
    pub order: usize,
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub group: Option<GroupInfo>,
    pub results: Value,
    pub warnings: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// u128 counts: a JSON number when they fit u64, a decimal string beyond.
pub fn count_value(x: u128) -> Value {
    match u64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(x.to_string()),
    }
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string(self).expect("report serializes"),
            Format::Table => self.render_table(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some(g) = &self.group {
            let _ = writeln!(out, "group: {} (order {})", g.kind, g.order);
        }
        if let Value::Object(map) = &self.results {
            for (k, v) in iter_preferred(map) {
                write_table_entry(&mut out, k, v, 0);
            }
        }
        if self.warnings.is_empty() {
            let _ = writeln!(out, "warnings: none");
        } else {
            let _ = writeln!(out, "warnings:");
            for w in &self.warnings {
                let _ = writeln!(out, "  - {w}");
            }
        }
        out
    }

    fn render_csv(&self) -> String {
        // Split results into scalar context and at most one array-of-objects
        // field; the context repeats on every row.
        let mut scalars: Vec<(String, String)> = Vec::new();
        let mut rows: Vec<&Value> = Vec::new();
        if let Value::Object(map) = &self.results {
            for (k, v) in iter_preferred(map) {
                if is_object_array(v) {
                    if let Value::Array(items) = v {
                        rows = items.iter().collect();
                    }
                } else {
                    flatten_into(&mut scalars, k, v);
                }
            }
        }
        let mut row_cols: Vec<String> = Vec::new();
        let flat_rows: Vec<Vec<(String, String)>> = rows
            .iter()
            .map(|r| {
                let mut cells = Vec::new();
                if let Value::Object(map) = r {
                    for (k, v) in iter_preferred(map) {
                        flatten_into(&mut cells, k, v);
                    }
                }
                for (k, _) in &cells {
                    if !row_cols.contains(k) {
                        row_cols.push(k.clone());
                    }
                }
                cells
            })
            .collect();

        let warnings = self.warnings.join("; ");
        let mut header: Vec<String> = vec!["command".into()];
        header.extend(scalars.iter().map(|(k, _)| k.clone()));
        header.extend(row_cols.iter().cloned());
        header.push("warnings".into());

        let mut out = String::new();
        let _ = writeln!(
            out,
            "{}",
            header
                .iter()
                .map(|h| csv_escape(h))
                .collect::<Vec<_>>()
                .join(",")
        );
        let context: Vec<String> = std::iter::once(self.command.clone())
            .chain(scalars.iter().map(|(_, v)| v.clone()))
            .collect();
        if flat_rows.is_empty() {
            let mut line: Vec<String> = context.clone();
            line.extend(row_cols.iter().map(|_| String::new()));
            line.push(warnings.clone());
            let _ = writeln!(
                out,
                "{}",
                line.iter()
                    .map(|c| csv_escape(c))
                    .collect::<Vec<_>>()
                    .join(",")
            );
        }
        for cells in &flat_rows {
            let mut line: Vec<String> = context.clone();
            for col in &row_cols {
                let cell = cells.iter().find(|(k, _)| k == col).map(|(_, v)| v.clone());
                line.push(cell.unwrap_or_default());
            }
            line.push(warnings.clone());
            let _ = writeln!(
                out,
                "{}",
                line.iter()
                    .map(|c| csv_escape(c))
                    .collect::<Vec<_>>()
                    .join(",")
            );
        }
        out
    }
}

/// Column/field ordering: domain-logical names first, the rest in sorted
/// (BTreeMap) order.
const PREFERRED: &[&str] = &[
    "n",
    "max_n",
    "method",
    "support",
    "labels",
    "k",
    "d",
    "lcd_applicable",
    "is_idempotent",
    "is_self_adjoint",
    "lcd_gram",
    "lcd_intersection",
    "t",
    "t1",
    "blocks",
    "count",
    "count_nonzero",
    "count_including_zero",
    "theorem_path",
    "closed_form",
];

fn iter_preferred(map: &serde_json::Map<String, Value>) -> Vec<(&String, &Value)> {
    let mut out: Vec<(&String, &Value)> = Vec::new();
    for &name in PREFERRED {
        if let Some((k, v)) = map.get_key_value(name) {
            out.push((k, v));
        }
    }
    for (k, v) in map {
        if !PREFERRED.contains(&k.as_str()) {
            out.push((k, v));
        }
    }
    out
}

fn is_object_array(v: &Value) -> bool {
    matches!(v, Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(scalar_text).collect();
            format!("[{}]", inner.join(" "))
        }
        other => other.to_string(),
    }
}

fn write_table_entry(out: &mut String, key: &str, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, inner) in iter_preferred(map) {
                write_table_entry(out, k, inner, indent + 2);
            }
        }
        Value::Array(_) if is_object_array(v) => {
            let Value::Array(items) = v else {
                unreachable!()
            };
            let _ = writeln!(out, "{pad}{key} ({}):", items.len());
            let mut cols: Vec<String> = Vec::new();
            let table: Vec<Vec<(String, String)>> = items
                .iter()
                .map(|item| {
                    let mut cells = Vec::new();
                    if let Value::Object(map) = item {
                        for (k, val) in iter_preferred(map) {
                            flatten_into(&mut cells, k, val);
                        }
                    }
                    for (k, _) in &cells {
                        if !cols.contains(k) {
                            cols.push(k.clone());
                        }
                    }
                    cells
                })
                .collect();
            let mut widths: Vec<usize> = cols.iter().map(String::len).collect();
            for cells in &table {
                for (ci, col) in cols.iter().enumerate() {
                    if let Some((_, val)) = cells.iter().find(|(k, _)| k == col) {
                        widths[ci] = widths[ci].max(val.len());
                    }
                }
            }
            let header: Vec<String> = cols
                .iter()
                .enumerate()
                .map(|(ci, c)| format!("{:<w$}", c, w = widths[ci]))
                .collect();
            let _ = writeln!(out, "{pad}  {}", header.join("  "));
            for cells in &table {
                let line: Vec<String> = cols
                    .iter()
                    .enumerate()
                    .map(|(ci, col)| {
                        let val = cells
                            .iter()
                            .find(|(k, _)| k == col)
                            .map(|(_, v)| v.clone())
                            .unwrap_or_default();
                        format!("{:<w$}", val, w = widths[ci])
                    })
                    .collect();
                let _ = writeln!(out, "{pad}  {}", line.join("  ").trim_end());
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{key}: {}", scalar_text(other));
        }
    }
}

/// Flattens nested objects into dotted keys; arrays and scalars become text.
fn flatten_into(cells: &mut Vec<(String, String)>, key: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, inner) in iter_preferred(map) {
                flatten_into(cells, &format!("{key}.{k}"), inner);
            }
        }
        other => cells.push((key.to_string(), scalar_text(other))),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
