use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Flat view of a result: one row per tuple or record.
#[derive(Debug, Default)]
pub struct Rows {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Rows {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: ToString>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows
            .push(row.into_iter().map(|c| c.to_string()).collect());
    }
}

/// Space-separated entries, for a tuple inside a single CSV field.
pub fn tuple(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

pub struct Envelope<'a> {
    pub command: &'a str,
    pub input: Value,
    pub result: Value,
    pub elapsed_ms: f64,
}

pub fn write_json(out: &mut impl Write, env: &Envelope) -> io::Result<()> {
    let doc = serde_json::json!({
        "command": env.command,
        "input": env.input,
        "result": env.result,
        "elapsed_ms": env.elapsed_ms,
        "version": env!("CARGO_PKG_VERSION"),
    });
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    writeln!(out)
}

pub fn write_csv(out: &mut impl Write, rows: &Rows) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&rows.headers)?;
    for r in &rows.rows {
        w.write_record(r)?;
    }
    w.flush()
}

pub fn write_table(out: &mut impl Write, rows: &Rows) -> io::Result<()> {
    let mut widths: Vec<usize> = rows.headers.iter().map(|h| h.len()).collect();
    for r in &rows.rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(&rows.headers))?;
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    writeln!(out, "{}", line(&rule))?;
    for r in &rows.rows {
        writeln!(out, "{}", line(r))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_aligns_columns() {
        let mut rows = Rows::new(["w", "label"]);
        rows.push(["10", "a"]);
        rows.push(["2", "bbb"]);
        let mut buf = Vec::new();
        write_table(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "w   label\n--  -----\n10  a\n2   bbb\n");
    }

    #[test]
    fn csv_has_header_and_rows() {
        let mut rows = Rows::new(["x1", "x2"]);
        rows.push([1, 5]);
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x1,x2\n1,5\n");
    }
}
