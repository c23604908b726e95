//! Row-major dense matrices.
//!
//! The dense kernel is the correctness oracle for every sparse kernel, so
//! materialization is guarded by an element budget to keep accidental
//! `to_dense` calls on huge inputs from exhausting memory.

use crate::coo::{CooError, CooMatrix};

/// Default cap on `rows * cols` for dense materialization.
pub const DEFAULT_DENSE_BUDGET: u128 = 100_000_000;

/// Dense matrix with `values[i * cols + j] = A[i, j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl DenseMatrix {
    /// Materializes a coordinate matrix under the default element budget.
    pub fn from_coo(m: &CooMatrix) -> Result<Self, CooError> {
        Self::from_coo_with_budget(m, DEFAULT_DENSE_BUDGET)
    }

    pub fn from_coo_with_budget(m: &CooMatrix, budget: u128) -> Result<Self, CooError> {
        let elements = m.rows() as u128 * m.cols() as u128;
        if elements > budget {
            return Err(CooError::BudgetExceeded { elements, budget });
        }
        let mut values = vec![0.0; m.rows() * m.cols()];
        for &(r, c, v) in m.entries() {
            values[r * m.cols() + c] = v;
        }
        Ok(DenseMatrix {
            rows: m.rows(),
            cols: m.cols(),
            values,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols + col]
    }

    /// Row-major value storage of length `rows * cols`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Collects the nonzero cells back into canonical coordinate form.
    pub fn to_coo(&self) -> CooMatrix {
        let mut triplets = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if v != 0.0 {
                    triplets.push((r, c, v));
                }
            }
        }
        CooMatrix::from_triplets(self.rows, self.cols, triplets)
            .expect("dense scan yields in-bounds finite triplets")
    }

    /// y = A x with a plain row-by-row dot product. This is the oracle the
    /// sparse kernels are checked against.
    pub fn spmv(&self, x: &[f64]) -> Result<Vec<f64>, crate::spmv::SpmvError> {
        crate::spmv::check_dims(self.cols, x.len())?;
        let mut y = vec![0.0; self.rows];
        for r in 0..self.rows {
            let mut acc = 0.0;
            for c in 0..self.cols {
                acc += self.values[r * self.cols + c] * x[c];
            }
            y[r] = acc;
        }
        Ok(y)
    }

    pub fn element_count(&self) -> usize {
        self.values.len()
    }
}

impl CooMatrix {
    /// Convenience for [`DenseMatrix::from_coo`].
    pub fn to_dense(&self) -> Result<DenseMatrix, CooError> {
        DenseMatrix::from_coo(self)
    }
}
