//! Jagged diagonal storage.
//!
//! Rows are permuted by descending nonzero count (ties keep original row
//! order) and their nonzeros compacted leftwards. Jagged diagonal `d` then
//! holds the `d`-th nonzero of every row that has at least `d + 1` of them,
//! in permuted order, so segment lengths shrink monotonically from the top
//! of the jagged staircase to the bottom.

use super::{check_permutation, check_values, FormatError};
use crate::coo::CooMatrix;
use crate::spmv::{check_dims, SpmvError};

#[derive(Debug, Clone, PartialEq)]
pub struct JdsMatrix {
    rows: usize,
    cols: usize,
    /// `perm[p]` is the original index of the row at permuted position `p`.
    perm: Vec<usize>,
    values: Vec<f64>,
    col_indices: Vec<usize>,
    /// Segment boundaries; `jd_ptr.len() - 1` is the jagged diagonal count.
    jd_ptr: Vec<usize>,
}

impl JdsMatrix {
    pub fn from_coo(m: &CooMatrix) -> Self {
        let mut row_entries: Vec<Vec<(usize, f64)>> = vec![Vec::new(); m.rows()];
        for &(r, c, v) in m.entries() {
            row_entries[r].push((c, v));
        }
        let mut perm: Vec<usize> = (0..m.rows()).collect();
        // Stable sort: ties between equal-count rows keep original order.
        perm.sort_by(|&a, &b| row_entries[b].len().cmp(&row_entries[a].len()));
        let jd = row_entries.iter().map(Vec::len).max().unwrap_or(0);

        let mut values = Vec::with_capacity(m.nnz());
        let mut col_indices = Vec::with_capacity(m.nnz());
        let mut jd_ptr = Vec::with_capacity(jd + 1);
        jd_ptr.push(0);
        for d in 0..jd {
            for &r in &perm {
                if let Some(&(c, v)) = row_entries[r].get(d) {
                    values.push(v);
                    col_indices.push(c);
                }
            }
            jd_ptr.push(values.len());
        }
        JdsMatrix {
            rows: m.rows(),
            cols: m.cols(),
            perm,
            values,
            col_indices,
            jd_ptr,
        }
    }

    /// Assembles from raw arrays, validating the permutation, segment
    /// monotonicity, and per-row column ordering.
    pub fn try_new(
        rows: usize,
        cols: usize,
        perm: Vec<usize>,
        values: Vec<f64>,
        col_indices: Vec<usize>,
        jd_ptr: Vec<usize>,
    ) -> Result<Self, FormatError> {
        check_permutation(&perm, rows, "row permutation")?;
        if col_indices.len() != values.len() {
            return Err(FormatError::WrongLength {
                what: "col_indices",
                expected: values.len(),
                got: col_indices.len(),
            });
        }
        if jd_ptr.first() != Some(&0) || jd_ptr.last() != Some(&values.len()) {
            return Err(FormatError::BadPointer {
                what: "jd_ptr",
                detail: format!("endpoints must be 0 and {}", values.len()),
            });
        }
        let mut prev_len = usize::MAX;
        for w in jd_ptr.windows(2) {
            let seg = w[1].checked_sub(w[0]).ok_or(FormatError::BadPointer {
                what: "jd_ptr",
                detail: "decreasing".into(),
            })?;
            if seg == 0 || seg > rows || seg > prev_len {
                return Err(FormatError::SegmentsNotMonotone { what: "jd_ptr" });
            }
            prev_len = seg;
        }
        for &c in &col_indices {
            if c >= cols {
                return Err(FormatError::IndexOutOfBounds {
                    what: "column index",
                    index: c,
                    limit: cols,
                });
            }
        }
        check_values(&values)?;
        // Within each row, columns must ascend across the jagged diagonals.
        let mut last_col: Vec<Option<usize>> = vec![None; rows];
        for d in 0..jd_ptr.len() - 1 {
            for idx in jd_ptr[d]..jd_ptr[d + 1] {
                let p = idx - jd_ptr[d];
                let c = col_indices[idx];
                if let Some(prev) = last_col[p] {
                    if prev >= c {
                        return Err(FormatError::NotSorted {
                            what: "column indices",
                            line: perm[p],
                        });
                    }
                }
                last_col[p] = Some(c);
            }
        }
        Ok(JdsMatrix {
            rows,
            cols,
            perm,
            values,
            col_indices,
            jd_ptr,
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

    /// Number of jagged diagonals (the maximum per-row nonzero count).
    pub fn num_jagged_diagonals(&self) -> usize {
        self.jd_ptr.len() - 1
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn col_indices(&self) -> &[usize] {
        &self.col_indices
    }

    pub fn jd_ptr(&self) -> &[usize] {
        &self.jd_ptr
    }

    pub fn to_coo(&self) -> CooMatrix {
        let mut triplets = Vec::with_capacity(self.nnz());
        for d in 0..self.num_jagged_diagonals() {
            for idx in self.jd_ptr[d]..self.jd_ptr[d + 1] {
                let p = idx - self.jd_ptr[d];
                triplets.push((self.perm[p], self.col_indices[idx], self.values[idx]));
            }
        }
        CooMatrix::from_triplets(self.rows, self.cols, triplets)
            .expect("validated JDS arrays reconstruct cleanly")
    }

    /// y = A x one jagged diagonal at a time; each product lands on the
    /// original row through the permutation.
    pub fn spmv(&self, x: &[f64]) -> Result<Vec<f64>, SpmvError> {
        check_dims(self.cols, x.len())?;
        let mut y = vec![0.0; self.rows];
        for d in 0..self.num_jagged_diagonals() {
            for idx in self.jd_ptr[d]..self.jd_ptr[d + 1] {
                let p = idx - self.jd_ptr[d];
                y[self.perm[p]] += self.values[idx] * x[self.col_indices[idx]];
            }
        }
        Ok(y)
    }

    /// Occupied slots: values, column indices, the segment pointer, and the
    /// row permutation.
    pub fn element_count(&self) -> usize {
        self.values.len() + self.col_indices.len() + self.jd_ptr.len() + self.perm.len()
    }
}
