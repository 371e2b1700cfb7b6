//! Report tables rendered as aligned text, CSV or JSON.

use clap::ValueEnum;
use serde::Deserialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    #[default]
    Pretty,
}

#[derive(Clone, Debug)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, header: &[&str]) -> Self {
        Self { title: title.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Pretty => self.pretty(),
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn pretty(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            parts.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = format!("== {} ==\n", self.title);
        out += &line(&self.header);
        out += &line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>());
        for r in &self.rows {
            out += &line(r);
        }
        out
    }

    fn csv(&self) -> String {
        let mut wr = csv::Writer::from_writer(Vec::new());
        wr.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            wr.write_record(r).expect("in-memory write");
        }
        String::from_utf8(wr.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    fn json(&self) -> String {
        let rows: Vec<serde_json::Map<String, serde_json::Value>> = self
            .rows
            .iter()
            .map(|r| self.header.iter().cloned().zip(r.iter().map(|c| serde_json::Value::String(c.clone()))).collect())
            .collect();
        let v = serde_json::json!({ "title": self.title, "rows": rows });
        serde_json::to_string_pretty(&v).expect("plain JSON") + "\n"
    }
}

/// Fixed notation for moderate magnitudes, scientific otherwise.
pub fn num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    if x == 0.0 || (1e-3..1e6).contains(&x.abs()) {
        format!("{x:.6}")
    } else if x.is_finite() {
        format!("{x:.6e}")
    } else {
        x.to_string()
    }
}

pub fn pass(ok: bool) -> String {
    if ok { "PASS" } else { "FAIL" }.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_all_formats() {
        let mut t = Table::new("demo", &["l", "value"]);
        t.push(vec!["1/2".into(), num(0.5)]);
        assert_eq!(t.render(Format::Csv), "l,value\n1/2,0.500000\n");
        assert!(t.render(Format::Pretty).contains("1/2  0.500000"));
        assert!(t.render(Format::Json).contains("\"value\": \"0.500000\""));
        assert_eq!(num(1e-9), "1.000000e-9");
    }
}
