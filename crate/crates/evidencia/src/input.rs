//! CSV readers for datasets and basis tables.

use std::io::Read;
use std::path::Path;

use evidencia_core::linmodel::Dataset;
use evidencia_core::Matrix;

use crate::error::{CliError, CliResult};

fn reader<R: Read>(source: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(source)
}

fn parse_number(field: &str, line: u64, column: &str) -> CliResult<f64> {
    let v: f64 = field.parse().map_err(|_| {
        CliError::input(format!(
            "line {line}, column '{column}': cannot parse '{field}' as a number"
        ))
    })?;
    if !v.is_finite() {
        return Err(CliError::input(format!(
            "line {line}, column '{column}': value must be finite"
        )));
    }
    Ok(v)
}

fn csv_error(e: csv::Error) -> CliError {
    match e.position() {
        Some(p) => CliError::input(format!("line {}: {e}", p.line())),
        None => CliError::input(e.to_string()),
    }
}

/// Reads a dataset with columns `x`, `y`, `sigma` in any order.
pub fn read_dataset<R: Read>(source: R) -> CliResult<Dataset> {
    let mut rdr = reader(source);
    let headers = rdr.headers().map_err(csv_error)?.clone();
    let find = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::input(format!("column '{name}' not found")))
    };
    let (ix, iy, is) = (find("x")?, find("y")?, find("sigma")?);
    let (mut x, mut y, mut sigma) = (Vec::new(), Vec::new(), Vec::new());
    for record in rdr.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize, name: &str| {
            record
                .get(i)
                .ok_or_else(|| CliError::input(format!("line {line}: missing column '{name}'")))
        };
        x.push(parse_number(field(ix, "x")?, line, "x")?);
        y.push(parse_number(field(iy, "y")?, line, "y")?);
        let s = parse_number(field(is, "sigma")?, line, "sigma")?;
        if s <= 0.0 {
            return Err(CliError::input(format!(
                "line {line}, column 'sigma': uncertainty must be > 0, got {s}"
            )));
        }
        sigma.push(s);
    }
    if x.is_empty() {
        return Err(CliError::input("dataset has no rows"));
    }
    Ok(Dataset::new(x, y, sigma)?)
}

/// Reads a basis table: a header row, then one row per data point and one
/// column per basis function.
pub fn read_basis_table<R: Read>(source: R) -> CliResult<Matrix> {
    let mut rdr = reader(source);
    let headers = rdr.headers().map_err(csv_error)?.clone();
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        let row = record
            .iter()
            .zip(headers.iter())
            .map(|(field, name)| parse_number(field, line, name))
            .collect::<CliResult<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() || headers.is_empty() {
        return Err(CliError::input("basis table is empty"));
    }
    Ok(Matrix::from_rows(&rows))
}

pub fn open(path: &Path) -> CliResult<std::fs::File> {
    std::fs::File::open(path).map_err(|e| CliError::io(path, e))
}
