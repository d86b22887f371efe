//! A report is a JSON document plus a flat view for tables and TSV.
//!
//! The flat view has summary fields (one value each) and an optional row
//! section. Table mode prints the summary as `key: value` lines followed by
//! an aligned row table. TSV mode prints one header line, then one line per
//! row with the summary values repeated in front, so outputs from a sweep
//! can be concatenated.

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Table,
}

pub struct Report {
    pub json: Value,
    pub summary: Vec<(&'static str, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(json: Value) -> Self {
        Report { json, summary: Vec::new(), columns: Vec::new(), rows: Vec::new() }
    }

    pub fn field(mut self, key: &'static str, value: impl ToString) -> Self {
        self.summary.push((key, value.to_string()));
        self
    }

    pub fn table(mut self, columns: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.columns = columns;
        self.rows = rows;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Tsv => self.render_tsv(),
            Format::Table => self.render_table(),
        }
    }

    fn render_tsv(&self) -> String {
        let clean = |s: &str| s.replace(['\t', '\n'], " ");
        let mut out = String::new();
        let header: Vec<&str> = self.summary.iter().map(|(k, _)| *k).chain(self.columns.iter().copied()).collect();
        out.push_str(&header.join("\t"));
        out.push('\n');
        let prefix: Vec<String> = self.summary.iter().map(|(_, v)| clean(v)).collect();
        if self.rows.is_empty() {
            out.push_str(&prefix.join("\t"));
            out.push('\n');
        }
        for row in &self.rows {
            let line: Vec<String> = prefix.iter().cloned().chain(row.iter().map(|c| clean(c))).collect();
            out.push_str(&line.join("\t"));
            out.push('\n');
        }
        out
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        let key_width = self.summary.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.summary {
            out.push_str(&format!("{:<width$}  {v}\n", format!("{k}:"), width = key_width + 1));
        }
        if self.columns.is_empty() {
            return out;
        }
        if !self.summary.is_empty() {
            out.push('\n');
        }
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            format!("{}\n", padded.join("  ").trim_end())
        };
        out.push_str(&line(self.columns.clone()));
        out.push_str(&line(widths.iter().map(|&w| &"----------------------------------------------------------------"[..w.min(64)]).collect()));
        for row in &self.rows {
            out.push_str(&line(row.iter().map(String::as_str).collect()));
        }
        out
    }
}
