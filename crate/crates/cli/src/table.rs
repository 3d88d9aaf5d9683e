//! Report tables: fixed-precision text for people, full-precision CSV for
//! machines.

use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    Num(f64),
    Missing,
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i32> for Cell {
    fn from(v: i32) -> Self {
        Cell::Int(v.into())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Missing, Into::into)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub header: String,
    /// Decimal places for numeric cells in the text rendering.
    pub decimals: usize,
}

pub fn col(header: &str, decimals: usize) -> Column {
    Column {
        header: header.to_string(),
        decimals,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportTable {
    /// File stem for the CSV form.
    pub id: String,
    pub title: String,
    pub columns: Vec<Column>,
    rows: Vec<Vec<Cell>>,
    pub footer: Vec<String>,
    /// Include in the human-readable output.
    pub display: bool,
    /// Write a CSV file.
    pub csv: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArityError {
    pub expected: usize,
    pub got: usize,
}

impl ReportTable {
    pub fn new(id: impl Into<String>, title: impl Into<String>, columns: Vec<Column>) -> Self {
        ReportTable {
            id: id.into(),
            title: title.into(),
            columns,
            rows: Vec::new(),
            footer: Vec::new(),
            display: true,
            csv: true,
        }
    }

    pub fn text_only(mut self) -> Self {
        self.csv = false;
        self
    }

    pub fn csv_only(mut self) -> Self {
        self.display = false;
        self
    }

    pub fn try_push(&mut self, row: Vec<Cell>) -> Result<(), ArityError> {
        if row.len() != self.columns.len() {
            return Err(ArityError {
                expected: self.columns.len(),
                got: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    /// Appends a row whose arity is fixed by the calling code.
    pub fn push(&mut self, row: Vec<Cell>) {
        self.try_push(row).expect("row arity matches header");
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.footer.push(line.into());
    }

    fn text_cell(cell: &Cell, decimals: usize) -> String {
        match cell {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Num(v) => format!("{v:.decimals$}"),
            Cell::Missing => "-".to_string(),
        }
    }

    pub fn render_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(&self.columns)
                    .map(|(c, col)| Self::text_cell(c, col.decimals))
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| {
                cells
                    .iter()
                    .map(|r| r[i].chars().count())
                    .chain([c.header.chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.title);
        let line = |out: &mut String, items: &[String]| {
            let joined: Vec<String> = items
                .iter()
                .zip(&widths)
                .map(|(s, &w)| format!("{s:>w$}"))
                .collect();
            let _ = writeln!(out, "  {}", joined.join("  ").trim_end());
        };
        let headers: Vec<String> = self.columns.iter().map(|c| c.header.clone()).collect();
        line(&mut out, &headers);
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        line(&mut out, &rule);
        for r in &cells {
            line(&mut out, r);
        }
        for f in &self.footer {
            let _ = writeln!(out, "  {f}");
        }
        out
    }

    /// CSV with numbers at full (round-trip) precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let headers: Vec<&str> = self.columns.iter().map(|c| c.header.as_str()).collect();
        let _ = writeln!(out, "{}", headers.join(","));
        for r in &self.rows {
            let cells: Vec<String> = r
                .iter()
                .map(|c| match c {
                    Cell::Text(s) if s.contains([',', '"', '\n']) => {
                        format!("\"{}\"", s.replace('"', "\"\""))
                    }
                    Cell::Text(s) => s.clone(),
                    Cell::Int(i) => i.to_string(),
                    Cell::Num(v) => v.to_string(),
                    Cell::Missing => String::new(),
                })
                .collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}
