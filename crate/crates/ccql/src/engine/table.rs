//! Query results as a flat table.
//!
//! One column per (source, query attribute) pair, source-major: for
//! sources 1..m and attributes a1..an the column order is
//! `1 a1, 1 a2, ..., 2 a1, ...`. Column labels keep the attribute exactly
//! as written in the statement (aliases included); the `canonical` pair
//! identifies the underlying class attribute after alias and delegation
//! resolution, which is what filters match on.

use serde::Serialize;
use serde_json::json;

use crate::model::Value;

#[derive(Debug, Clone, Serialize)]
pub struct Column {
    /// 1-based source position in the statement's S clause.
    pub source: usize,
    /// Attribute as written, e.g. `BlockDesc.height`.
    pub attr: String,
    /// `"<source> <attr>"`, e.g. `2 BlockDesc.height`.
    pub label: String,
    /// Resolved `(class, attribute)` storing the value.
    #[serde(skip)]
    pub canonical: (String, String),
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct ResultTable {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Value>>,
    pub warnings: Vec<String>,
}

impl ResultTable {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "columns": self.columns,
            "rows": self.rows.iter()
                .map(|row| row.iter().map(Value::to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "warnings": self.warnings,
        })
    }

    /// Plain-text listing, one `label: value` line per cell with values
    /// aligned, e.g. `1 Block.id: 0xfb2e...`. Rows are separated by a
    /// blank line; an empty table renders as nothing.
    pub fn render_text(&self) -> String {
        let width = self.columns.iter().map(|c| c.label.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                out.push('\n');
            }
            for (cell, column) in row.iter().zip(&self.columns) {
                let pad = width - column.label.chars().count();
                out.push_str(&column.label);
                out.push(':');
                out.push_str(&" ".repeat(pad + 1));
                out.push_str(&cell.render());
                out.push('\n');
            }
        }
        out
    }

    /// CSV with `source.attr` headers (e.g. `1.Block.id`). Amounts keep
    /// their exact decimal form, lists are rendered like text cells.
    pub fn render_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let headers: Vec<String> =
            self.columns.iter().map(|c| format!("{}.{}", c.source, c.attr)).collect();
        writer.write_record(&headers).expect("in-memory csv write");
        for row in &self.rows {
            let record: Vec<String> = row.iter().map(Value::render).collect();
            writer.write_record(&record).expect("in-memory csv write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory csv flush"))
            .expect("csv output is utf-8")
    }

    /// One sub-table per source, in source order. Rows are projected onto
    /// the source's columns and deduplicated (the full table is a cartesian
    /// product, so per-source values repeat). Warnings are kept as-is.
    pub fn split_by_source(&self) -> Vec<ResultTable> {
        let mut order: Vec<usize> = Vec::new();
        for column in &self.columns {
            if !order.contains(&column.source) {
                order.push(column.source);
            }
        }
        order
            .into_iter()
            .map(|source| {
                let picks: Vec<usize> = self
                    .columns
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.source == source)
                    .map(|(i, _)| i)
                    .collect();
                let columns = picks.iter().map(|&i| self.columns[i].clone()).collect();
                let mut rows: Vec<Vec<Value>> = Vec::new();
                for row in &self.rows {
                    let projected: Vec<Value> = picks.iter().map(|&i| row[i].clone()).collect();
                    if !rows.contains(&projected) {
                        rows.push(projected);
                    }
                }
                ResultTable { columns, rows, warnings: self.warnings.clone() }
            })
            .collect()
    }
}
