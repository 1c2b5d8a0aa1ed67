//! Tabular diagnostic records and their CSV form.
//!
//! Experiments emit time- or space-indexed series; the writer is
//! deterministic (fixed column order, shortest-roundtrip float formatting) so
//! identical runs produce byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

#[derive(Debug, Clone)]
pub struct DiagnosticSeries {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl DiagnosticSeries {
    pub fn new(name: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width must match column count"
        );
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_float(&mut out, *v);
            }
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> io::Result<()> {
        fs::write(path, self.to_csv_string())
    }

    /// Reads a CSV produced by [`Self::write_csv`].
    pub fn read_csv(path: &Path) -> io::Result<Self> {
        let text = fs::read_to_string(path)?;
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidData, "empty CSV file"))?;
        let columns: Vec<String> = header.split(',').map(|c| c.to_string()).collect();
        let mut rows = Vec::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let row: Result<Vec<f64>, _> = line.split(',').map(|v| v.parse::<f64>()).collect();
            let row = row.map_err(|e| {
                io::Error::new(io::ErrorKind::InvalidData, format!("bad CSV value: {e}"))
            })?;
            if row.len() != columns.len() {
                return Err(io::Error::new(io::ErrorKind::InvalidData, "ragged CSV row"));
            }
            rows.push(row);
        }
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Ok(Self {
            name,
            columns,
            rows,
        })
    }
}

fn write_float(out: &mut String, v: f64) {
    // Plain decimal in a moderate range for readability, exponent form
    // outside it. Both are shortest-roundtrip and reproducible.
    if v == 0.0 || (v.abs() >= 1e-4 && v.abs() < 1e15) {
        let _ = write!(out, "{v}");
    } else {
        let _ = write!(out, "{v:e}");
    }
}
