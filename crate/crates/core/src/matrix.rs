//! Dense rational matrices with partition labels on rows and columns.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scalar::{parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    row_labels: Vec<Partition>,
    col_labels: Vec<Partition>,
    entries: Vec<Vec<Rational>>,
}

impl RatMatrix {
    pub fn zeros(row_labels: Vec<Partition>, col_labels: Vec<Partition>) -> Self {
        let entries = vec![vec![Rational::zero(); col_labels.len()]; row_labels.len()];
        RatMatrix {
            row_labels,
            col_labels,
            entries,
        }
    }

    pub fn square_zeros(labels: Vec<Partition>) -> Self {
        RatMatrix::zeros(labels.clone(), labels)
    }

    pub fn identity(labels: Vec<Partition>) -> Self {
        let mut m = RatMatrix::square_zeros(labels);
        for i in 0..m.nrows() {
            m.entries[i][i] = Rational::one();
        }
        m
    }

    pub fn from_fn(
        row_labels: Vec<Partition>,
        col_labels: Vec<Partition>,
        mut f: impl FnMut(&Partition, &Partition) -> Rational,
    ) -> Self {
        let entries = row_labels
            .iter()
            .map(|r| col_labels.iter().map(|c| f(r, c)).collect())
            .collect();
        RatMatrix {
            row_labels,
            col_labels,
            entries,
        }
    }

    pub fn from_rows(
        row_labels: Vec<Partition>,
        col_labels: Vec<Partition>,
        entries: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        if entries.len() != row_labels.len()
            || entries.iter().any(|row| row.len() != col_labels.len())
        {
            return Err(Error::Malformed(format!(
                "matrix body is not {}x{}",
                row_labels.len(),
                col_labels.len()
            )));
        }
        Ok(RatMatrix {
            row_labels,
            col_labels,
            entries,
        })
    }

    pub fn nrows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn is_square(&self) -> bool {
        self.row_labels == self.col_labels
    }

    pub fn row_labels(&self) -> &[Partition] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[Partition] {
        &self.col_labels
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i][j] = value;
    }

    /// Entry by labels; `None` if either label is absent.
    pub fn get(&self, row: &Partition, col: &Partition) -> Option<&Rational> {
        let i = self.row_labels.iter().position(|l| l == row)?;
        let j = self.col_labels.iter().position(|l| l == col)?;
        Some(&self.entries[i][j])
    }

    pub fn transpose(&self) -> RatMatrix {
        let entries = (0..self.ncols())
            .map(|j| (0..self.nrows()).map(|i| self.entries[i][j].clone()).collect())
            .collect();
        RatMatrix {
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
            entries,
        }
    }

    pub fn mul(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if self.col_labels != rhs.row_labels {
            return Err(Error::Precondition(
                "matrix product: inner labels differ".into(),
            ));
        }
        let mut out = RatMatrix::zeros(self.row_labels.clone(), rhs.col_labels.clone());
        for i in 0..self.nrows() {
            for k in 0..self.ncols() {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.ncols() {
                    let b = &rhs.entries[k][j];
                    if !b.is_zero() {
                        out.entries[i][j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Principal submatrix on the labels kept by `keep`, in the current order.
    pub fn principal_submatrix(&self, keep: impl Fn(&Partition) -> bool) -> RatMatrix {
        let idx: Vec<usize> = (0..self.nrows())
            .filter(|&i| keep(&self.row_labels[i]))
            .collect();
        let labels: Vec<Partition> = idx.iter().map(|&i| self.row_labels[i].clone()).collect();
        let entries = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect();
        RatMatrix {
            row_labels: labels.clone(),
            col_labels: labels,
            entries,
        }
    }

    /// Exact determinant by Gaussian elimination, pivoting on the first
    /// nonzero entry of each column. The empty matrix has determinant 1.
    pub fn determinant(&self) -> Result<Rational> {
        if self.nrows() != self.ncols() {
            return Err(Error::Precondition("determinant of a non-square matrix".into()));
        }
        let n = self.nrows();
        let mut work = self.entries.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !work[r][col].is_zero()) else {
                return Ok(Rational::zero());
            };
            if pivot != col {
                work.swap(pivot, col);
                det = -det;
            }
            let pivot_value = work[col][col].clone();
            det *= &pivot_value;
            for r in (col + 1)..n {
                if work[r][col].is_zero() {
                    continue;
                }
                let factor = &work[r][col] / &pivot_value;
                let (upper, lower) = work.split_at_mut(r);
                for (target, source) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                    *target -= &factor * source;
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse by Gauss-Jordan elimination; the result's rows carry the
    /// column labels and vice versa.
    pub fn inverse(&self) -> Result<RatMatrix> {
        if self.nrows() != self.ncols() {
            return Err(Error::Precondition("inverse of a non-square matrix".into()));
        }
        let n = self.nrows();
        let mut work = self.entries.clone();
        let mut inv = RatMatrix::identity(self.row_labels.clone()).entries;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !work[r][col].is_zero())
                .ok_or_else(|| Error::Precondition("matrix is singular".into()))?;
            work.swap(pivot, col);
            inv.swap(pivot, col);
            let scale = work[col][col].recip();
            for c in 0..n {
                work[col][c] *= &scale;
                inv[col][c] *= &scale;
            }
            for r in 0..n {
                if r == col || work[r][col].is_zero() {
                    continue;
                }
                let factor = work[r][col].clone();
                for c in 0..n {
                    let dw = &factor * &work[col][c];
                    work[r][c] -= dw;
                    let di = &factor * &inv[col][c];
                    inv[r][c] -= di;
                }
            }
        }
        Ok(RatMatrix {
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
            entries: inv,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.entries.iter().enumerate().all(|(i, row)| {
                row.iter()
                    .enumerate()
                    .all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.nrows())
                .all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// `{"labels": [...], "rows": [[...]]}` for square matrices;
    /// `row_labels`/`col_labels` otherwise. Entries are rational strings.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|v| v.to_string()).collect())
            .collect();
        let labels = |ls: &[Partition]| ls.iter().map(|l| l.to_string()).collect::<Vec<_>>();
        if self.is_square() {
            json!({ "labels": labels(&self.row_labels), "rows": rows })
        } else {
            json!({
                "row_labels": labels(&self.row_labels),
                "col_labels": labels(&self.col_labels),
                "rows": rows,
            })
        }
    }

    pub fn from_json(value: &Value) -> Result<RatMatrix> {
        let parse_labels = |v: &Value| -> Result<Vec<Partition>> {
            v.as_array()
                .ok_or_else(|| Error::Malformed("labels must be an array".into()))?
                .iter()
                .map(|l| {
                    l.as_str()
                        .ok_or_else(|| Error::Malformed("label must be a string".into()))?
                        .parse()
                })
                .collect()
        };
        let (row_labels, col_labels) = match value.get("labels") {
            Some(labels) => {
                let l = parse_labels(labels)?;
                (l.clone(), l)
            }
            None => (
                parse_labels(value.get("row_labels").unwrap_or(&Value::Null))?,
                parse_labels(value.get("col_labels").unwrap_or(&Value::Null))?,
            ),
        };
        let rows = value
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Malformed("missing rows".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Malformed("row must be an array".into()))?
                    .iter()
                    .map(|v| {
                        v.as_str()
                            .ok_or_else(|| Error::Malformed("entry must be a string".into()))
                            .and_then(parse_rational)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        RatMatrix::from_rows(row_labels, col_labels, rows)
    }

    /// Header row of column labels followed by one line per row.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let header: Vec<String> = self.col_labels.iter().map(|l| l.to_string()).collect();
        writer.write_record(&header).expect("in-memory write");
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writer.write_record(&cells).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf8 output")
    }

    pub fn label_index(&self) -> HashMap<&Partition, usize> {
        self.row_labels.iter().enumerate().map(|(i, l)| (l, i)).collect()
    }
}
