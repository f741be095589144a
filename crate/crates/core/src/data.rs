//! Loading a single numeric column of losses from a delimited text file.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sample::Sample;

/// Column chosen by 0-based index or by header name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnSelector {
    Index(usize),
    Name(String),
}

impl Default for ColumnSelector {
    fn default() -> Self {
        ColumnSelector::Index(0)
    }
}

impl FromStr for ColumnSelector {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => ColumnSelector::Index(i),
            Err(_) => ColumnSelector::Name(s.to_string()),
        })
    }
}

/// Whether the first row is a header.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HeaderMode {
    /// Header if the selected field of the first row is not a number.
    #[default]
    Detect,
    Present,
    Absent,
}

#[derive(Debug, Clone)]
pub struct CsvSource {
    pub path: PathBuf,
    pub column: ColumnSelector,
    pub header: HeaderMode,
    pub delimiter: u8,
}

impl CsvSource {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self {
            path: path.into(),
            column: ColumnSelector::default(),
            header: HeaderMode::default(),
            delimiter: b',',
        }
    }
}

const MAX_REPORTED_ROWS: usize = 10;

fn data_error(path: &Path, message: impl Into<String>) -> Error {
    Error::Data {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

fn parse_number(field: &str) -> Option<f64> {
    field.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Reads the selected column into a [`Sample`].
///
/// Every non-numeric or missing field is an error; the message lists the
/// offending line numbers.
pub fn read_sample(source: &CsvSource) -> Result<Sample> {
    let path = source.path.as_path();
    let text = std::fs::read(path).map_err(|e| data_error(path, e.to_string()))?;
    // The reader skips blank lines without counting them, so line numbers are
    // recovered from byte offsets.
    let line_starts: Vec<u64> = std::iter::once(0)
        .chain(text.iter().enumerate().filter(|(_, &b)| b == b'\n').map(|(i, _)| i as u64 + 1))
        .collect();
    let line_of = |mut byte: u64| {
        while text.get(byte as usize).is_some_and(|b| matches!(b, b'\r' | b'\n')) {
            byte += 1;
        }
        line_starts.partition_point(|&s| s <= byte)
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .delimiter(source.delimiter)
        .from_reader(text.as_slice());

    let mut records = reader.records().peekable();
    let mut index = match &source.column {
        ColumnSelector::Index(i) => Some(*i),
        ColumnSelector::Name(_) => None,
    };

    let first = match records.peek() {
        None => return Err(data_error(path, "file contains no observations")),
        Some(Err(e)) => return Err(data_error(path, e.to_string())),
        Some(Ok(r)) => r.clone(),
    };
    let has_header = match (source.header, &source.column) {
        (HeaderMode::Present, _) | (HeaderMode::Detect, ColumnSelector::Name(_)) => true,
        (HeaderMode::Absent, _) => false,
        (HeaderMode::Detect, ColumnSelector::Index(i)) => {
            first.get(*i).map(|f| parse_number(f).is_none()).unwrap_or(false)
        }
    };
    if has_header {
        records.next();
        if let ColumnSelector::Name(name) = &source.column {
            let found = first.iter().position(|h| h.trim() == name);
            index = Some(found.ok_or_else(|| data_error(path, format!("no column named `{name}`")))?);
        }
    }
    let Some(index) = index else {
        return Err(data_error(path, "column names need a header row"));
    };

    let mut values = Vec::new();
    let mut bad = Vec::new();
    let mut bad_count = 0usize;
    for record in records {
        let record = record.map_err(|e| data_error(path, e.to_string()))?;
        let line = record.position().map(|p| line_of(p.byte())).unwrap_or(0);
        if record.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        match record.get(index).and_then(parse_number) {
            Some(v) => values.push(v),
            None => {
                bad_count += 1;
                if bad.len() < MAX_REPORTED_ROWS {
                    let field = record.get(index).unwrap_or("<missing>");
                    bad.push(format!("line {line}: `{field}`"));
                }
            }
        }
    }
    if bad_count > 0 {
        let more = if bad_count > bad.len() {
            format!(" (and {} more)", bad_count - bad.len())
        } else {
            String::new()
        };
        return Err(data_error(
            path,
            format!("non-numeric values in column {index}: {}{more}", bad.join(", ")),
        ));
    }
    if values.is_empty() {
        return Err(data_error(path, "file contains no observations"));
    }
    Sample::new(values)
}
