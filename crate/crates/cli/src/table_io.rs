//! CSV and JSON renderings of report tables.
//!
//! Every cell is written as a string: exact rationals as `num/den`,
//! integers in full, decimals with their fixed significant digits. JSON is
//! an array with one object per row, keyed by the CSV header names.

use std::io::{self, Write};

use serde_json::{Map, Value};
use strassen_core::report::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub fn header(table: &Table) -> Vec<String> {
    std::iter::once("label".to_string())
        .chain(table.columns())
        .collect()
}

pub fn write_csv<W: Write>(table: &Table, out: W) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(header(table))?;
    for row in table.rendered_rows() {
        w.write_record(row)?;
    }
    w.flush()
}

pub fn to_json(table: &Table) -> Value {
    let names = header(table);
    Value::Array(
        table
            .rendered_rows()
            .into_iter()
            .map(|row| {
                let object: Map<String, Value> = names
                    .iter()
                    .cloned()
                    .zip(row.into_iter().map(Value::String))
                    .collect();
                Value::Object(object)
            })
            .collect(),
    )
}

pub fn write_json<W: Write>(table: &Table, mut out: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, &to_json(table))?;
    out.write_all(b"\n")
}

pub fn write_table<W: Write>(table: &Table, format: Format, out: W) -> io::Result<()> {
    match format {
        Format::Csv => write_csv(table, out),
        Format::Json => write_json(table, out),
    }
}

/// Reads CSV written by [`write_csv`] back into header and string rows.
pub fn read_csv(text: &str) -> csv::Result<(Vec<String>, Vec<Vec<String>>)> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers()?.iter().map(str::to_string).collect();
    let rows = r
        .records()
        .map(|rec| rec.map(|r| r.iter().map(str::to_string).collect()))
        .collect::<csv::Result<_>>()?;
    Ok((header, rows))
}
