//! Numeric CSV reading shared by the base-design loader and the command
//! line front end.

use std::fs::File;
use std::path::Path;

use crate::error::{Error, Result};
use crate::numerics::Matrix;

/// A parsed numeric CSV file.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericTable {
    /// Column names when the first row was not numeric.
    pub header: Option<Vec<String>>,
    pub rows: Vec<Vec<f64>>,
    /// 1-based file line of each data row.
    pub lines: Vec<u64>,
}

impl NumericTable {
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn to_matrix(&self) -> Result<Matrix> {
        Matrix::from_rows(&self.rows)
    }
}

/// Reads a comma-separated numeric file. A first row containing any
/// non-numeric field is taken as a header; every later row must be numeric,
/// finite, and as wide as the first.
pub fn read_numeric_csv(path: &Path) -> Result<NumericTable> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);

    let parse_err = |line: u64, reason: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        reason,
    };

    let mut header = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut lines = Vec::new();
    for (k, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map_or(k as u64 + 1, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed: Vec<Option<f64>> = record
            .iter()
            .map(|f| f.parse::<f64>().ok().filter(|v| v.is_finite()))
            .collect();
        if rows.is_empty() && header.is_none() && parsed.iter().any(Option::is_none) {
            header = Some(record.iter().map(str::to_string).collect());
            continue;
        }
        if let Some(pos) = parsed.iter().position(Option::is_none) {
            return Err(parse_err(
                line,
                format!(
                    "field {} is not a finite number: {:?}",
                    pos + 1,
                    &record[pos]
                ),
            ));
        }
        let values: Vec<f64> = parsed.into_iter().map(Option::unwrap).collect();
        let width = header
            .as_ref()
            .map(Vec::len)
            .or_else(|| rows.first().map(Vec::len));
        if let Some(w) = width {
            if values.len() != w {
                return Err(parse_err(
                    line,
                    format!("expected {w} fields, found {}", values.len()),
                ));
            }
        }
        rows.push(values);
        lines.push(line);
    }
    if rows.is_empty() {
        return Err(parse_err(0, "no numeric rows".to_string()));
    }
    Ok(NumericTable {
        header,
        rows,
        lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn header_is_detected() {
        let f = write("a,b\n1,2\n3,4.5\n");
        let t = read_numeric_csv(f.path()).unwrap();
        assert_eq!(t.header, Some(vec!["a".into(), "b".into()]));
        assert_eq!(t.rows, vec![vec![1.0, 2.0], vec![3.0, 4.5]]);
        assert_eq!(t.lines, vec![2, 3]);
    }

    #[test]
    fn headerless() {
        let f = write("1,-1\n-1,1\n");
        let t = read_numeric_csv(f.path()).unwrap();
        assert!(t.header.is_none());
        assert_eq!(t.to_matrix().unwrap().row(1), &[-1.0, 1.0]);
    }

    #[test]
    fn bad_field_names_the_line() {
        let f = write("1,2\n3,x\n");
        match read_numeric_csv(f.path()) {
            Err(Error::Parse { line, reason, .. }) => {
                assert_eq!(line, 2);
                assert!(reason.contains("field 2"), "{reason}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ragged_rows() {
        let f = write("1,2\n3\n");
        assert!(matches!(
            read_numeric_csv(f.path()),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn missing_file() {
        assert!(matches!(
            read_numeric_csv(Path::new("/nonexistent/x.csv")),
            Err(Error::Io { .. })
        ));
    }
}
