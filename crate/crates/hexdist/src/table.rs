//! Comparison tables as CSV or JSON.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use hexdist_core::search::Comparison;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TableFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(format!(
                "unknown table format `{other}` (expected csv or json)"
            )),
        }
    }
}

impl fmt::Display for TableFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableFormat::Csv => "csv",
            TableFormat::Json => "json",
        })
    }
}

/// One table row. `star` is `"*"` when the hexagon method is strictly larger.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub m: usize,
    pub clique_size: usize,
    pub hexagon_size: usize,
    pub best: usize,
    pub star: String,
    pub optimal: bool,
}

impl From<&Comparison> for TableRow {
    fn from(c: &Comparison) -> Self {
        TableRow {
            m: c.m(),
            clique_size: c.clique.size,
            hexagon_size: c.hexagon.size,
            best: c.best().size,
            star: if c.star() { "*".into() } else { String::new() },
            optimal: c.optimal(),
        }
    }
}

pub fn emit_table(rows: &[Comparison], format: TableFormat) -> Result<String> {
    let rows: Vec<TableRow> = rows.iter().map(TableRow::from).collect();
    emit_rows(&rows, format)
}

pub fn emit_rows(rows: &[TableRow], format: TableFormat) -> Result<String> {
    match format {
        TableFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            for row in rows {
                w.serialize(row)?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| csv::Error::from(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        TableFormat::Json => {
            let mut s = serde_json::to_string_pretty(rows)?;
            s.push('\n');
            Ok(s)
        }
    }
}

pub fn parse_rows(text: &str, format: TableFormat) -> Result<Vec<TableRow>> {
    match format {
        TableFormat::Csv => {
            let mut r = csv::Reader::from_reader(text.as_bytes());
            Ok(r.deserialize().collect::<std::result::Result<_, _>>()?)
        }
        TableFormat::Json => Ok(serde_json::from_str(text)?),
    }
}
