//! Matrix files: `{"rows": r, "cols": c, "data": [[[re, im], ...], ...]}`.
//!
//! Numbers are written in the shortest decimal form that parses back to the
//! same `f64`, so a write followed by a read is bit-exact.

use std::fs;
use std::path::{Path, PathBuf};

use ginvkit::{CMatrix, C64};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &CMatrix) -> Self {
        MatrixFile {
            rows: m.rows(),
            cols: m.cols(),
            data: (0..m.rows())
                .map(|i| {
                    (0..m.cols())
                        .map(|j| {
                            let z = m.get(i, j);
                            [z.re, z.im]
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Checks the shape against `rows` and `cols`; the error names the
    /// offending field.
    pub fn to_matrix(&self) -> Result<CMatrix, String> {
        if self.data.len() != self.rows {
            return Err(format!(
                "data: {} rows present but rows = {}",
                self.data.len(),
                self.rows
            ));
        }
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for (i, row) in self.data.iter().enumerate() {
            if row.len() != self.cols {
                return Err(format!(
                    "data[{i}]: {} entries present but cols = {}",
                    row.len(),
                    self.cols
                ));
            }
            for (j, [re, im]) in row.iter().enumerate() {
                if !re.is_finite() || !im.is_finite() {
                    return Err(format!("data[{i}][{j}]: entry is not finite"));
                }
                entries.push(C64::new(*re, *im));
            }
        }
        CMatrix::new(self.rows, self.cols, entries).map_err(|e| e.to_string())
    }
}

pub fn to_json(m: &CMatrix) -> String {
    serde_json::to_string(&MatrixFile::from_matrix(m)).expect("finite matrix serializes")
}

pub fn from_json(text: &str) -> Result<CMatrix, String> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: MatrixFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            e.inner().to_string()
        } else {
            format!("{path}: {}", e.inner())
        }
    })?;
    file.to_matrix()
}

pub fn read_matrix(path: &Path) -> Result<CMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    from_json(&text).map_err(|message| CliError::Malformed {
        path: path.to_path_buf(),
        message,
    })
}

pub fn write_matrix(path: &Path, m: &CMatrix) -> Result<(), CliError> {
    write_text(path, &(to_json(m) + "\n"))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: PathBuf::from(path),
        source,
    })
}
