//! Matrix ingestion from JSON or CSV text.

use matstab_core::Matrix;
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum InputError {
    #[error("empty input")]
    Empty,
    #[error("JSON error at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("CSV error at line {line}: {message}")]
    Csv { line: u64, message: String },
    #[error("row {row}, column {col}: cannot parse {text:?} as a number")]
    Number { row: usize, col: usize, text: String },
    #[error("row {row}, column {col}: value is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("declared n = {declared} but {rows} rows given")]
    DeclaredSize { declared: usize, rows: usize },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonMatrix {
    n: usize,
    rows: Vec<Vec<f64>>,
}

/// Parses `{"n": .., "rows": [[..], ..]}` when the text starts with `{`, CSV
/// otherwise. Locations in errors are 1-based. A typographic minus (U+2212)
/// is read as `-`.
pub fn parse_matrix(text: &str) -> Result<Matrix, InputError> {
    let text = text.replace('\u{2212}', "-");
    let body = text.trim_start();
    if body.is_empty() {
        return Err(InputError::Empty);
    }
    let (declared, rows) = if body.starts_with('{') {
        let m: JsonMatrix = serde_json::from_str(&text)
            .map_err(|e| InputError::Json { line: e.line(), column: e.column(), message: e.to_string() })?;
        (Some(m.n), m.rows)
    } else {
        (None, csv_rows(&text)?)
    };
    build(declared, rows)
}

fn csv_rows(text: &str) -> Result<Vec<Vec<f64>>, InputError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| InputError::Csv {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = rows.len() + 1;
        let parsed = record
            .iter()
            .enumerate()
            .map(|(j, field)| {
                field.parse::<f64>().map_err(|_| InputError::Number { row, col: j + 1, text: field.to_string() })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        rows.push(parsed);
    }
    Ok(rows)
}

fn build(declared: Option<usize>, rows: Vec<Vec<f64>>) -> Result<Matrix, InputError> {
    let n = rows.len();
    if n == 0 {
        return Err(InputError::Empty);
    }
    if let Some(d) = declared.filter(|&d| d != n) {
        return Err(InputError::DeclaredSize { declared: d, rows: n });
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(InputError::Ragged { row: i + 1, len: r.len(), expected: n });
        }
        if let Some(j) = r.iter().position(|x| !x.is_finite()) {
            return Err(InputError::NonFinite { row: i + 1, col: j + 1 });
        }
    }
    Ok(Matrix::from_rows(&rows).expect("validated above"))
}
