//! Transpose jagged diagonal storage.
//!
//! The column-wise twin of JDS: columns are ordered by descending nonzero
//! count (ties keep original column order) and compacted upwards. Transpose
//! jagged diagonal `d` holds the `d`-th nonzero, top-down, of every column
//! with at least `d + 1` of them. Row indices are stored explicitly, so the
//! multiply scatters straight into the output vector with no inverse
//! permutation; the column order array participates only in reconstruction
//! and is not counted by the size model.

use super::{check_permutation, check_values, FormatError};
use crate::coo::CooMatrix;
use crate::spmv::{check_dims, SpmvError};

#[derive(Debug, Clone, PartialEq)]
pub struct TjdsMatrix {
    rows: usize,
    cols: usize,
    /// `col_order[p]` is the original index of the column at position `p`.
    col_order: Vec<usize>,
    values: Vec<f64>,
    row_indices: Vec<usize>,
    /// Segment boundaries; `tjd_ptr.len() - 1` transpose jagged diagonals.
    tjd_ptr: Vec<usize>,
}

impl TjdsMatrix {
    pub fn from_coo(m: &CooMatrix) -> Self {
        let mut col_entries: Vec<Vec<(usize, f64)>> = vec![Vec::new(); m.cols()];
        for &(r, c, v) in m.entries() {
            col_entries[c].push((r, v));
        }
        let mut col_order: Vec<usize> = (0..m.cols()).collect();
        col_order.sort_by(|&a, &b| col_entries[b].len().cmp(&col_entries[a].len()));
        let tjd = col_entries.iter().map(Vec::len).max().unwrap_or(0);

        let mut values = Vec::with_capacity(m.nnz());
        let mut row_indices = Vec::with_capacity(m.nnz());
        let mut tjd_ptr = Vec::with_capacity(tjd + 1);
        tjd_ptr.push(0);
        for d in 0..tjd {
            for &c in &col_order {
                if let Some(&(r, v)) = col_entries[c].get(d) {
                    values.push(v);
                    row_indices.push(r);
                }
            }
            tjd_ptr.push(values.len());
        }
        TjdsMatrix {
            rows: m.rows(),
            cols: m.cols(),
            col_order,
            values,
            row_indices,
            tjd_ptr,
        }
    }

    pub fn try_new(
        rows: usize,
        cols: usize,
        col_order: Vec<usize>,
        values: Vec<f64>,
        row_indices: Vec<usize>,
        tjd_ptr: Vec<usize>,
    ) -> Result<Self, FormatError> {
        check_permutation(&col_order, cols, "column order")?;
        if row_indices.len() != values.len() {
            return Err(FormatError::WrongLength {
                what: "row_indices",
                expected: values.len(),
                got: row_indices.len(),
            });
        }
        if tjd_ptr.first() != Some(&0) || tjd_ptr.last() != Some(&values.len()) {
            return Err(FormatError::BadPointer {
                what: "tjd_ptr",
                detail: format!("endpoints must be 0 and {}", values.len()),
            });
        }
        let mut prev_len = usize::MAX;
        for w in tjd_ptr.windows(2) {
            let seg = w[1].checked_sub(w[0]).ok_or(FormatError::BadPointer {
                what: "tjd_ptr",
                detail: "decreasing".into(),
            })?;
            if seg == 0 || seg > cols || seg > prev_len {
                return Err(FormatError::SegmentsNotMonotone { what: "tjd_ptr" });
            }
            prev_len = seg;
        }
        for &r in &row_indices {
            if r >= rows {
                return Err(FormatError::IndexOutOfBounds {
                    what: "row index",
                    index: r,
                    limit: rows,
                });
            }
        }
        check_values(&values)?;
        // Top-down order: within each column, rows ascend across segments.
        let mut last_row: Vec<Option<usize>> = vec![None; cols];
        for d in 0..tjd_ptr.len() - 1 {
            for idx in tjd_ptr[d]..tjd_ptr[d + 1] {
                let p = idx - tjd_ptr[d];
                let r = row_indices[idx];
                if let Some(prev) = last_row[p] {
                    if prev >= r {
                        return Err(FormatError::NotSorted {
                            what: "row indices",
                            line: col_order[p],
                        });
                    }
                }
                last_row[p] = Some(r);
            }
        }
        Ok(TjdsMatrix {
            rows,
            cols,
            col_order,
            values,
            row_indices,
            tjd_ptr,
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

    /// Number of transpose jagged diagonals (max per-column nonzero count).
    pub fn num_transpose_jagged_diagonals(&self) -> usize {
        self.tjd_ptr.len() - 1
    }

    pub fn col_order(&self) -> &[usize] {
        &self.col_order
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row_indices(&self) -> &[usize] {
        &self.row_indices
    }

    pub fn tjd_ptr(&self) -> &[usize] {
        &self.tjd_ptr
    }

    pub fn to_coo(&self) -> CooMatrix {
        let mut triplets = Vec::with_capacity(self.nnz());
        for d in 0..self.num_transpose_jagged_diagonals() {
            for idx in self.tjd_ptr[d]..self.tjd_ptr[d + 1] {
                let p = idx - self.tjd_ptr[d];
                triplets.push((self.row_indices[idx], self.col_order[p], self.values[idx]));
            }
        }
        CooMatrix::from_triplets(self.rows, self.cols, triplets)
            .expect("validated TJDS arrays reconstruct cleanly")
    }

    /// y = A x one transpose jagged diagonal at a time, scattering each
    /// product onto its explicit row.
    pub fn spmv(&self, x: &[f64]) -> Result<Vec<f64>, SpmvError> {
        check_dims(self.cols, x.len())?;
        let mut y = vec![0.0; self.rows];
        for d in 0..self.num_transpose_jagged_diagonals() {
            for idx in self.tjd_ptr[d]..self.tjd_ptr[d + 1] {
                let p = idx - self.tjd_ptr[d];
                y[self.row_indices[idx]] += self.values[idx] * x[self.col_order[p]];
            }
        }
        Ok(y)
    }

    /// Occupied slots counted by the size model: values, row indices, and
    /// the segment pointer. The column order array is excluded.
    pub fn element_count(&self) -> usize {
        self.values.len() + self.row_indices.len() + self.tjd_ptr.len()
    }
}
