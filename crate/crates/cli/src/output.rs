//! Rendering to CSV or JSON and writing to the chosen sink.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::args::Format;
use crate::CliError;

/// A flat table for CSV output.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// Anything a command can emit.
pub trait Report: Serialize {
    fn table(&self) -> Table;
    fn passed(&self) -> bool;
}

/// 17 significant digits in scientific notation.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn opt_float(x: Option<f64>) -> String {
    x.map(float).unwrap_or_default()
}

pub fn render_csv(table: &Table) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}

pub fn render<R: Report>(report: &R, format: Format) -> Result<String, CliError> {
    match format {
        Format::Csv => render_csv(&report.table()),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| CliError::Internal(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
    }
}

pub fn write(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "stdout".into(),
                    source,
                })
        }
    }
}
