//! Plain-text matrix files.
//!
//! ```text
//! rows cols
//! a11 a12 ... a1c
//! ...
//! ```
//!
//! Entries are written in scientific notation with 17 significant digits,
//! which round-trips every finite `f64` exactly.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use strassen_core::Matrix;

#[derive(Debug, thiserror::Error)]
pub enum MatrixFileError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

pub fn format_matrix(m: &Matrix) -> String {
    let mut out = String::with_capacity(m.rows() * m.cols() * 25 + 16);
    writeln!(out, "{} {}", m.rows(), m.cols()).unwrap();
    for i in 0..m.rows() {
        for (j, v) in m.row(i).iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            write!(out, "{v:.16e}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses the file contents; `path` is only used in error messages.
pub fn parse_matrix(text: &str, path: &Path) -> Result<Matrix, MatrixFileError> {
    let err = |line: usize, message: String| MatrixFileError::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (header_no, header) = lines.next().ok_or_else(|| err(1, "empty file".into()))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let [rows, cols] = dims[..] else {
        return Err(err(
            header_no,
            format!("expected header \"rows cols\", found {header:?}"),
        ));
    };
    let parse_dim = |s: &str| -> Result<usize, MatrixFileError> {
        match s.parse::<usize>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(err(header_no, format!("invalid dimension {s:?}"))),
        }
    };
    let (rows, cols) = (parse_dim(rows)?, parse_dim(cols)?);

    let mut data = Vec::with_capacity(rows * cols);
    let mut seen_rows = 0;
    for (line_no, line) in lines {
        if line.trim().is_empty() {
            if seen_rows == rows {
                continue;
            }
            return Err(err(line_no, "blank line inside the matrix body".into()));
        }
        if seen_rows == rows {
            return Err(err(line_no, format!("more than {rows} rows")));
        }
        let before = data.len();
        for token in line.split_whitespace() {
            let v: f64 = token
                .parse()
                .map_err(|_| err(line_no, format!("invalid number {token:?}")))?;
            if !v.is_finite() {
                return Err(err(line_no, format!("non-finite entry {token:?}")));
            }
            data.push(v);
        }
        let found = data.len() - before;
        if found != cols {
            return Err(err(
                line_no,
                format!("expected {cols} entries, found {found}"),
            ));
        }
        seen_rows += 1;
    }
    if seen_rows != rows {
        return Err(err(
            text.lines().count().max(1),
            format!("expected {rows} rows, found {seen_rows}"),
        ));
    }
    Ok(Matrix::from_finite(rows, cols, data).expect("validated above"))
}

pub fn read_matrix(path: &Path) -> Result<Matrix, MatrixFileError> {
    let text = fs::read_to_string(path).map_err(|source| MatrixFileError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_matrix(&text, path)
}

pub fn write_matrix(path: &Path, m: &Matrix) -> Result<(), MatrixFileError> {
    fs::write(path, format_matrix(m)).map_err(|source| MatrixFileError::Io {
        path: path.to_path_buf(),
        source,
    })
}
