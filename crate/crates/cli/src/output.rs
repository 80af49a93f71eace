//! CSV and JSON-lines writers. Floats are printed in shortest round-trip
//! form (Rust's `Display` for f64), so a written value parses back to the
//! identical double and reruns are byte-identical.

use std::io::{self, Write};

use mdi_core::sweep::SweepTable;

pub fn format_f64(x: f64) -> String {
    format!("{x}")
}

/// Comma-separated values with a header row and Unix newlines.
pub fn write_csv<W: Write>(table: &SweepTable, out: &mut W) -> io::Result<()> {
    writeln!(out, "{}", table.columns.join(","))?;
    for record in &table.records {
        let row: Vec<String> = record.values.iter().map(|v| format_f64(*v)).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

/// One JSON object per line, field names matching the CSV header.
pub fn write_jsonl<W: Write>(table: &SweepTable, out: &mut W) -> io::Result<()> {
    for record in &table.records {
        let fields: Vec<String> = table
            .columns
            .iter()
            .zip(&record.values)
            .map(|(column, value)| format!("\"{column}\":{}", format_f64(*value)))
            .collect();
        writeln!(out, "{{{}}}", fields.join(","))?;
    }
    Ok(())
}
