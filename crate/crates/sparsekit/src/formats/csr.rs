//! Compressed sparse row storage.

use super::{check_values, FormatError};
use crate::coo::CooMatrix;
use crate::spmv::{check_dims, SpmvError};

/// CSR matrix: nonzeros stored row by row along with their column indices,
/// plus a pointer array marking where each row's segment starts.
///
/// `row_ptr` has length `rows + 1`; row `i`'s nonzeros live at positions
/// `row_ptr[i] .. row_ptr[i + 1]` of `values` and `col_indices`, with column
/// indices strictly increasing inside each row.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
    col_indices: Vec<usize>,
    row_ptr: Vec<usize>,
}

impl CsrMatrix {
    /// Builds the CSR layout from canonical coordinate form.
    pub fn from_coo(m: &CooMatrix) -> Self {
        let mut values = Vec::with_capacity(m.nnz());
        let mut col_indices = Vec::with_capacity(m.nnz());
        let mut row_ptr = vec![0usize; m.rows() + 1];
        for &(r, _, _) in m.entries() {
            row_ptr[r + 1] += 1;
        }
        for i in 0..m.rows() {
            row_ptr[i + 1] += row_ptr[i];
        }
        // Entries are already sorted row-major, so a single pass fills
        // each segment in column order.
        for &(_, c, v) in m.entries() {
            values.push(v);
            col_indices.push(c);
        }
        CsrMatrix {
            rows: m.rows(),
            cols: m.cols(),
            values,
            col_indices,
            row_ptr,
        }
    }

    /// Assembles a CSR matrix from raw arrays, validating every invariant.
    pub fn try_new(
        rows: usize,
        cols: usize,
        values: Vec<f64>,
        col_indices: Vec<usize>,
        row_ptr: Vec<usize>,
    ) -> Result<Self, FormatError> {
        if row_ptr.len() != rows + 1 {
            return Err(FormatError::WrongLength {
                what: "row_ptr",
                expected: rows + 1,
                got: row_ptr.len(),
            });
        }
        if col_indices.len() != values.len() {
            return Err(FormatError::WrongLength {
                what: "col_indices",
                expected: values.len(),
                got: col_indices.len(),
            });
        }
        if row_ptr[0] != 0 || row_ptr[rows] != values.len() {
            return Err(FormatError::BadPointer {
                what: "row_ptr",
                detail: format!(
                    "endpoints must be 0 and {}, found {} and {}",
                    values.len(),
                    row_ptr[0],
                    row_ptr[rows]
                ),
            });
        }
        for i in 0..rows {
            if row_ptr[i] > row_ptr[i + 1] || row_ptr[i + 1] > values.len() {
                return Err(FormatError::BadPointer {
                    what: "row_ptr",
                    detail: format!("decreases or overruns at row {i}"),
                });
            }
        }
        for i in 0..rows {
            let segment = &col_indices[row_ptr[i]..row_ptr[i + 1]];
            for (k, &c) in segment.iter().enumerate() {
                if c >= cols {
                    return Err(FormatError::IndexOutOfBounds {
                        what: "column index",
                        index: c,
                        limit: cols,
                    });
                }
                if k > 0 && segment[k - 1] >= c {
                    return Err(FormatError::NotSorted {
                        what: "column indices",
                        line: i,
                    });
                }
            }
        }
        check_values(&values)?;
        Ok(CsrMatrix {
            rows,
            cols,
            values,
            col_indices,
            row_ptr,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn col_indices(&self) -> &[usize] {
        &self.col_indices
    }

    pub fn row_ptr(&self) -> &[usize] {
        &self.row_ptr
    }

    /// Lossless reconstruction of the coordinate matrix.
    pub fn to_coo(&self) -> CooMatrix {
        let mut triplets = Vec::with_capacity(self.nnz());
        for r in 0..self.rows {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                triplets.push((r, self.col_indices[k], self.values[k]));
            }
        }
        CooMatrix::from_triplets(self.rows, self.cols, triplets)
            .expect("validated CSR arrays reconstruct cleanly")
    }

    /// y = A x, accumulating each row's products left to right.
    pub fn spmv(&self, x: &[f64]) -> Result<Vec<f64>, SpmvError> {
        check_dims(self.cols, x.len())?;
        let mut y = vec![0.0; self.rows];
        for r in 0..self.rows {
            let mut acc = 0.0;
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.values[k] * x[self.col_indices[k]];
            }
            y[r] = acc;
        }
        Ok(y)
    }

    /// Occupied array slots: values, column indices, and the row pointer.
    pub fn element_count(&self) -> usize {
        self.values.len() + self.col_indices.len() + self.row_ptr.len()
    }
}
