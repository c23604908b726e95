//! Compressed sparse column storage.

use super::{check_values, FormatError};
use crate::coo::CooMatrix;
use crate::spmv::{check_dims, SpmvError};

/// CSC matrix: the column-major mirror of CSR. Nonzeros are stored column
/// by column with their row indices; `col_ptr` has length `cols + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CscMatrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
    row_indices: Vec<usize>,
    col_ptr: Vec<usize>,
}

impl CscMatrix {
    pub fn from_coo(m: &CooMatrix) -> Self {
        let mut col_ptr = vec![0usize; m.cols() + 1];
        for &(_, c, _) in m.entries() {
            col_ptr[c + 1] += 1;
        }
        for j in 0..m.cols() {
            col_ptr[j + 1] += col_ptr[j];
        }
        // Scatter pass: row-major input order means rows arrive ascending
        // within each column.
        let mut next = col_ptr.clone();
        let mut values = vec![0.0; m.nnz()];
        let mut row_indices = vec![0usize; m.nnz()];
        for &(r, c, v) in m.entries() {
            let slot = next[c];
            values[slot] = v;
            row_indices[slot] = r;
            next[c] += 1;
        }
        CscMatrix {
            rows: m.rows(),
            cols: m.cols(),
            values,
            row_indices,
            col_ptr,
        }
    }

    /// Assembles a CSC matrix from raw arrays, validating every invariant.
    pub fn try_new(
        rows: usize,
        cols: usize,
        values: Vec<f64>,
        row_indices: Vec<usize>,
        col_ptr: Vec<usize>,
    ) -> Result<Self, FormatError> {
        if col_ptr.len() != cols + 1 {
            return Err(FormatError::WrongLength {
                what: "col_ptr",
                expected: cols + 1,
                got: col_ptr.len(),
            });
        }
        if row_indices.len() != values.len() {
            return Err(FormatError::WrongLength {
                what: "row_indices",
                expected: values.len(),
                got: row_indices.len(),
            });
        }
        if col_ptr[0] != 0 || col_ptr[cols] != values.len() {
            return Err(FormatError::BadPointer {
                what: "col_ptr",
                detail: format!(
                    "endpoints must be 0 and {}, found {} and {}",
                    values.len(),
                    col_ptr[0],
                    col_ptr[cols]
                ),
            });
        }
        for j in 0..cols {
            if col_ptr[j] > col_ptr[j + 1] || col_ptr[j + 1] > values.len() {
                return Err(FormatError::BadPointer {
                    what: "col_ptr",
                    detail: format!("decreases or overruns at column {j}"),
                });
            }
        }
        for j in 0..cols {
            let segment = &row_indices[col_ptr[j]..col_ptr[j + 1]];
            for (k, &r) in segment.iter().enumerate() {
                if r >= rows {
                    return Err(FormatError::IndexOutOfBounds {
                        what: "row index",
                        index: r,
                        limit: rows,
                    });
                }
                if k > 0 && segment[k - 1] >= r {
                    return Err(FormatError::NotSorted {
                        what: "row indices",
                        line: j,
                    });
                }
            }
        }
        check_values(&values)?;
        Ok(CscMatrix {
            rows,
            cols,
            values,
            row_indices,
            col_ptr,
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

    pub fn row_indices(&self) -> &[usize] {
        &self.row_indices
    }

    pub fn col_ptr(&self) -> &[usize] {
        &self.col_ptr
    }

    pub fn to_coo(&self) -> CooMatrix {
        let mut triplets = Vec::with_capacity(self.nnz());
        for j in 0..self.cols {
            for k in self.col_ptr[j]..self.col_ptr[j + 1] {
                triplets.push((self.row_indices[k], j, self.values[k]));
            }
        }
        CooMatrix::from_triplets(self.rows, self.cols, triplets)
            .expect("validated CSC arrays reconstruct cleanly")
    }

    /// y = A x by scatter-accumulation: columns are visited left to right
    /// and each column's products are added into the result.
    pub fn spmv(&self, x: &[f64]) -> Result<Vec<f64>, SpmvError> {
        check_dims(self.cols, x.len())?;
        let mut y = vec![0.0; self.rows];
        for j in 0..self.cols {
            let xj = x[j];
            for k in self.col_ptr[j]..self.col_ptr[j + 1] {
                y[self.row_indices[k]] += self.values[k] * xj;
            }
        }
        Ok(y)
    }

    pub fn element_count(&self) -> usize {
        self.values.len() + self.row_indices.len() + self.col_ptr.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::DenseMatrix;
    use crate::formats::CsrMatrix;
    use crate::testutil::demo_matrix;

    /// Independent oracle: enumerate columns by scanning the dense form.
    fn column_scan_oracle(m: &CooMatrix) -> (Vec<f64>, Vec<usize>, Vec<usize>) {
        let d = DenseMatrix::from_coo(m).unwrap();
        let mut values = Vec::new();
        let mut row_indices = Vec::new();
        let mut col_ptr = vec![0usize];
        for j in 0..d.cols() {
            for i in 0..d.rows() {
                if d.get(i, j) != 0.0 {
                    values.push(d.get(i, j));
                    row_indices.push(i);
                }
            }
            col_ptr.push(values.len());
        }
        (values, row_indices, col_ptr)
    }

    #[test]
    fn demo_matrix_arrays_match_the_column_scan_oracle() {
        let m = demo_matrix();
        let csc = CscMatrix::from_coo(&m);
        assert_eq!(csc.values(), &[2.0, 7.0, 1.0, 4.0, 3.0, 6.0, 5.0, 8.0]);
        assert_eq!(csc.row_indices(), &[0, 2, 0, 1, 1, 2, 1, 3]);
        assert_eq!(csc.col_ptr(), &[0, 2, 4, 6, 8]);
        let (values, row_indices, col_ptr) = column_scan_oracle(&m);
        assert_eq!(csc.values(), values.as_slice());
        assert_eq!(csc.row_indices(), row_indices.as_slice());
        assert_eq!(csc.col_ptr(), col_ptr.as_slice());
    }

    #[test]
    fn empty_matrix_has_flat_pointer() {
        let csc = CscMatrix::from_coo(&CooMatrix::empty(3, 3).unwrap());
        assert_eq!(csc.col_ptr(), &[0, 0, 0, 0]);
    }

    #[test]
    fn csc_mirrors_csr_of_the_transpose() {
        let m = demo_matrix();
        let csc = CscMatrix::from_coo(&m);
        let csr_t = CsrMatrix::from_coo(&m.transpose());
        assert_eq!(csc.values(), csr_t.values());
        assert_eq!(csc.row_indices(), csr_t.col_indices());
        assert_eq!(csc.col_ptr(), csr_t.row_ptr());
    }

    #[test]
    fn try_new_round_trips_and_rejects_bad_arrays() {
        let csc = CscMatrix::from_coo(&demo_matrix());
        let rebuilt = CscMatrix::try_new(
            4,
            4,
            csc.values().to_vec(),
            csc.row_indices().to_vec(),
            csc.col_ptr().to_vec(),
        )
        .unwrap();
        assert_eq!(rebuilt, csc);
        assert!(matches!(
            CscMatrix::try_new(2, 1, vec![1.0, 2.0], vec![1, 0], vec![0, 2]),
            Err(FormatError::NotSorted { .. })
        ));
        assert!(matches!(
            CscMatrix::try_new(1, 1, vec![1.0], vec![3], vec![0, 1]),
            Err(FormatError::IndexOutOfBounds { .. })
        ));
    }

    #[test]
    fn spmv_matches_hand_sums() {
        let csc = CscMatrix::from_coo(&demo_matrix());
        assert_eq!(csc.spmv(&[1.0; 4]).unwrap(), vec![3.0, 12.0, 13.0, 8.0]);
        assert_eq!(
            csc.spmv(&[1.0, 2.0, 3.0, 4.0]).unwrap(),
            vec![4.0, 37.0, 25.0, 32.0]
        );
    }
}
