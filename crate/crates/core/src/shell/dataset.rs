use std::fs::File;
use std::io::Read;
use std::path::Path;

use csv::{ReaderBuilder, Trim};

use super::ShellError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CsvOptions {
    pub delimiter: u8,
    pub has_header: bool,
}

impl Default for CsvOptions {
    fn default() -> Self {
        Self { delimiter: b',', has_header: true }
    }
}

/// One cell, keeping its original text. `value` is set when the text parses
/// as a finite real.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub text: String,
    pub value: Option<f64>,
}

impl Cell {
    fn parse(text: &str) -> Self {
        let value = text.parse::<f64>().ok().filter(|v| v.is_finite());
        Self { text: text.to_string(), value }
    }

    pub fn is_numeric(&self) -> bool {
        self.value.is_some()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub cells: Vec<Cell>,
}

/// Rectangular table of cells with named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    columns: Vec<Column>,
    /// 1-based input line of each data row, for diagnostics.
    lines: Vec<u64>,
}

impl Dataset {
    pub fn column_names(&self) -> impl Iterator<Item = &str> {
        self.columns.iter().map(|c| c.name.as_str())
    }

    pub fn n_rows(&self) -> usize {
        self.lines.len()
    }

    pub fn n_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, name: &str) -> Result<&Column, ShellError> {
        self.columns
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| ShellError::UnknownColumn(name.to_string()))
    }

    /// Column values as reals; fails on the first non-numeric cell.
    pub fn numeric(&self, name: &str) -> Result<Vec<f64>, ShellError> {
        let column = self.column(name)?;
        column
            .cells
            .iter()
            .zip(&self.lines)
            .map(|(cell, &line)| {
                cell.value.ok_or_else(|| ShellError::NonNumericColumn {
                    column: name.to_string(),
                    row: line,
                    text: cell.text.clone(),
                })
            })
            .collect()
    }

    /// Column cells as verbatim text.
    pub fn labels(&self, name: &str) -> Result<Vec<&str>, ShellError> {
        Ok(self.column(name)?.cells.iter().map(|c| c.text.as_str()).collect())
    }
}

pub fn parse_csv(path: impl AsRef<Path>, options: CsvOptions) -> Result<Dataset, ShellError> {
    let path = path.as_ref();
    let file =
        File::open(path).map_err(|source| ShellError::Io { path: path.display().to_string(), source })?;
    parse_csv_reader(file, options)
}

pub fn parse_csv_reader<R: Read>(reader: R, options: CsvOptions) -> Result<Dataset, ShellError> {
    let mut rdr = ReaderBuilder::new()
        .delimiter(options.delimiter)
        .has_headers(false)
        .flexible(true)
        .trim(Trim::All)
        .from_reader(reader);

    let mut records = rdr.records();
    let parse_err = |e: csv::Error| {
        let row = e.position().map_or(0, |p| p.line());
        ShellError::Parse { row, column: 0, message: e.to_string() }
    };

    let first = match records.next() {
        Some(r) => r.map_err(parse_err)?,
        None => return Err(ShellError::Parse { row: 1, column: 0, message: "input is empty".into() }),
    };
    let width = first.len();

    let mut lines = Vec::new();
    let mut columns: Vec<Column>;
    let first_line = first.position().map_or(1, |p| p.line());
    if options.has_header {
        let mut names: Vec<String> = Vec::with_capacity(width);
        for (i, name) in first.iter().enumerate() {
            if name.is_empty() {
                return Err(ShellError::Parse {
                    row: first_line,
                    column: i + 1,
                    message: "empty column name".into(),
                });
            }
            if names.iter().any(|n| n == name) {
                return Err(ShellError::Parse {
                    row: first_line,
                    column: i + 1,
                    message: format!("duplicate column name '{name}'"),
                });
            }
            names.push(name.to_string());
        }
        columns = names.into_iter().map(|name| Column { name, cells: Vec::new() }).collect();
    } else {
        columns = (1..=width).map(|i| Column { name: format!("col{i}"), cells: Vec::new() }).collect();
    }

    let data = (!options.has_header).then_some(Ok(first)).into_iter().chain(records);
    for record in data {
        let record = record.map_err(parse_err)?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != width {
            return Err(ShellError::RaggedRows { row: line, expected: width, found: record.len() });
        }
        for (i, (text, column)) in record.iter().zip(columns.iter_mut()).enumerate() {
            if text.is_empty() {
                return Err(ShellError::Parse {
                    row: line,
                    column: i + 1,
                    message: format!("missing value in column '{}'", column.name),
                });
            }
            column.cells.push(Cell::parse(text));
        }
        lines.push(line);
    }

    if lines.is_empty() {
        return Err(ShellError::Parse { row: first_line + 1, column: 0, message: "no data rows".into() });
    }
    Ok(Dataset { columns, lines })
}
