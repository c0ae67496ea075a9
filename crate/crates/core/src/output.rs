//! Versioned CSV emission with fixed 17-significant-digit formatting.

use crate::error::Result;
use crate::linalg::CMat;
use num_complex::Complex64;
use std::fmt::Write as _;
use std::path::Path;

pub const CSV_HEADER: &str = "# arcscatter-csv v1";

/// A CSV table held in memory until written.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    columns: Vec<String>,
    body: String,
}

pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            body: String::new(),
        }
    }

    /// Appends a row of numbers; integers should be passed through [`Table::row_mixed`].
    pub fn row(&mut self, values: &[f64]) {
        let cells: Vec<String> = values.iter().map(|&v| fmt_f64(v)).collect();
        self.push(&cells);
    }

    pub fn row_mixed(&mut self, cells: &[String]) {
        self.push(cells);
    }

    fn push(&mut self, cells: &[String]) {
        assert_eq!(cells.len(), self.columns.len(), "row width");
        self.body.push_str(&cells.join(","));
        self.body.push('\n');
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{CSV_HEADER}");
        let _ = writeln!(out, "{}", self.columns.join(","));
        out.push_str(&self.body);
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render())?;
        Ok(())
    }
}

/// `(row, col, re, im)` listing of a matrix.
pub fn matrix_table(a: &CMat) -> Table {
    let mut t = Table::new(&["row", "col", "re", "im"]);
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            let v = a[(i, j)];
            t.row_mixed(&[i.to_string(), j.to_string(), fmt_f64(v.re), fmt_f64(v.im)]);
        }
    }
    t
}

/// `(x, re, im)` listing of complex samples against one real abscissa.
pub fn complex_table(label: &str, x: &[f64], values: &[Complex64]) -> Table {
    let mut t = Table::new(&[label, "re", "im"]);
    for (a, v) in x.iter().zip(values) {
        t.row(&[*a, v.re, v.im]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_format() {
        let mut t = Table::new(&["a", "b"]);
        t.row(&[0.1, -2.0]);
        assert_eq!(
            t.render(),
            "# arcscatter-csv v1\na,b\n1.0000000000000001e-1,-2.0000000000000000e0\n"
        );
    }

    #[test]
    fn matrix_listing() {
        let m = crate::linalg::identity(2);
        let s = matrix_table(&m).render();
        assert_eq!(s.lines().count(), 6);
        assert!(s.contains("1,1,1.0000000000000000e0,0.0000000000000000e0"));
    }
}
