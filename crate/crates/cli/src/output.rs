//! Deterministic text output: every float is rendered in scientific
//! notation with 12 significant digits, so identical inputs produce
//! byte-identical CSV bodies.

use std::fs;
use std::io::Write;
use std::path::Path;

/// 12-significant-digit scientific rendering; negative zero is normalized.
pub fn fmt(value: f64) -> String {
    let v = if value == 0.0 { 0.0 } else { value };
    format!("{v:.11e}")
}

#[derive(Debug, Clone)]
pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push_row<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        let row: Vec<String> = row.into_iter().map(Into::into).collect();
        assert_eq!(row.len(), self.header.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn push_floats(&mut self, row: impl IntoIterator<Item = f64>) {
        self.push_row(row.into_iter().map(fmt));
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path) -> anyhow::Result<()> {
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        let mut file = fs::File::create(path)?;
        file.write_all(self.to_csv().as_bytes())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_is_twelve_significant_digits() {
        assert_eq!(fmt(0.25), "2.50000000000e-1");
        assert_eq!(fmt(1.0), "1.00000000000e0");
        assert_eq!(fmt(-0.111111111111111), "-1.11111111111e-1");
        assert_eq!(fmt(0.0), "0.00000000000e0");
        assert_eq!(fmt(-0.0), "0.00000000000e0");
        assert_eq!(fmt(1.5e-12), "1.50000000000e-12");
    }

    #[test]
    fn csv_body_layout() {
        let mut t = CsvTable::new(["a", "b"]);
        t.push_floats([1.0, 2.0]);
        assert_eq!(t.to_csv(), "a,b\n1.00000000000e0,2.00000000000e0\n");
    }
}
