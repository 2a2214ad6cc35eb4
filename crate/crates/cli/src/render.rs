//! Machine-readable output: a TOML document (`kv`) or a CSV table.

use anyhow::{anyhow, Context};
use serde::Serialize;
use toml::{Table, Value};

use crate::config::{ExperimentConfig, Format, SCHEMA_VERSION};

#[derive(Serialize)]
struct Document<'a> {
    schema_version: u32,
    command: &'a str,
    result: &'a Value,
    config: &'a ExperimentConfig,
}

pub fn render(config: &ExperimentConfig, result: &Value) -> anyhow::Result<String> {
    match config.format {
        Format::Kv => Ok(toml::to_string(&Document {
            schema_version: SCHEMA_VERSION,
            command: config.command.name(),
            result,
            config,
        })?),
        Format::Csv => render_csv(result),
    }
}

/// Tables with a `rows` array become one CSV line per row; anything else is
/// a single line. Nested keys are joined with dots.
fn render_csv(result: &Value) -> anyhow::Result<String> {
    let table = result.as_table().ok_or_else(|| anyhow!("result is not a table"))?;
    let rows: Vec<Table> = match table.get("rows").and_then(Value::as_array) {
        Some(rows) => rows.iter().map(|r| flatten_row(r, table)).collect(),
        None => vec![flatten(table)],
    };
    let mut header: Vec<String> = Vec::new();
    for row in &rows {
        for key in row.keys() {
            if !header.contains(key) {
                header.push(key.clone());
            }
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header)?;
    for row in &rows {
        w.write_record(header.iter().map(|k| row.get(k).map(cell).unwrap_or_default()))?;
    }
    String::from_utf8(w.into_inner().context("flushing csv")?).context("csv output is not utf-8")
}

/// A row plus the scalar fields of the enclosing table.
fn flatten_row(row: &Value, outer: &Table) -> Table {
    let mut t = match row.as_table() {
        Some(r) => flatten(r),
        None => Table::new(),
    };
    for (k, v) in outer {
        if k != "rows" && !v.is_table() && !v.is_array() {
            t.entry(k.clone()).or_insert_with(|| v.clone());
        }
    }
    t
}

fn flatten(table: &Table) -> Table {
    let mut out = Table::new();
    flatten_into("", table, &mut out);
    out
}

fn flatten_into(prefix: &str, table: &Table, out: &mut Table) {
    for (k, v) in table {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match v {
            Value::Table(t) => flatten_into(&key, t, out),
            _ => {
                out.insert(key, v.clone());
            }
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}
