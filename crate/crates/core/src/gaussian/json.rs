//! JSON file format for covariance matrices:
//!
//! ```json
//! { "modes": 2, "ordering": "q-block-p-block", "matrix": [ ...16 numbers... ] }
//! ```
//!
//! `matrix` is the 2N×2N matrix in row-major order, either flat or as a list
//! of rows. `"interleaved"` ordering is converted on load.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{CovarianceMatrix, Ordering};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixLayout {
    QBlockPBlock,
    Interleaved,
}

impl From<MatrixLayout> for Ordering {
    fn from(l: MatrixLayout) -> Self {
        match l {
            MatrixLayout::QBlockPBlock => Ordering::QBlockPBlock,
            MatrixLayout::Interleaved => Ordering::Interleaved,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum Entries {
    Flat(Vec<f64>),
    Rows(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CovarianceFile {
    pub modes: usize,
    pub ordering: MatrixLayout,
    matrix: Entries,
}

impl CovarianceFile {
    pub fn from_covariance(cov: &CovarianceMatrix<f64>, layout: MatrixLayout) -> Self {
        let m = cov.to_ordering(layout.into());
        let flat = m.transpose().iter().copied().collect();
        Self { modes: cov.modes(), ordering: layout, matrix: Entries::Flat(flat) }
    }

    pub fn to_covariance(&self) -> Result<CovarianceMatrix<f64>> {
        let dim = 2 * self.modes;
        let flat: Vec<f64> = match &self.matrix {
            Entries::Flat(v) => v.clone(),
            Entries::Rows(rows) => {
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    return Err(Error::Format(format!("matrix must have {dim} rows of {dim} entries")));
                }
                rows.iter().flatten().copied().collect()
            }
        };
        if flat.len() != dim * dim {
            return Err(Error::Format(format!(
                "matrix has {} entries, expected {} for {} modes",
                flat.len(),
                dim * dim,
                self.modes
            )));
        }
        let m = DMatrix::from_row_slice(dim, dim, &flat);
        CovarianceMatrix::with_ordering(self.modes, m, self.ordering.into())
    }
}

pub fn read_covariance(text: &str) -> Result<CovarianceMatrix<f64>> {
    let file: CovarianceFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    file.to_covariance()
}

pub fn write_covariance(cov: &CovarianceMatrix<f64>, layout: MatrixLayout) -> String {
    let file = CovarianceFile::from_covariance(cov, layout);
    serde_json::to_string_pretty(&file).expect("covariance serializes")
}
