//! Coordinate (triplet) storage, the canonical in-memory form.
//!
//! Every other format in the crate is constructed from a [`CooMatrix`] and
//! reconstructs back to one, so conversions never have to know about each
//! other. Assembly is canonicalizing: triplets are sorted row-major,
//! duplicate coordinates are summed, and entries whose value is exactly
//! `0.0` are dropped. Two matrices with the same nonzero set therefore
//! compare equal regardless of the order their entries were supplied in.

use std::fmt;

/// Errors from assembling or materializing coordinate matrices.
#[derive(Debug, Clone, PartialEq)]
pub enum CooError {
    /// A matrix must have at least one row and one column.
    ZeroDimension,
    /// An entry lies outside the declared shape.
    IndexOutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    /// NaN and infinite values are rejected at assembly.
    NonFinite { row: usize, col: usize },
    /// Dense materialization would exceed the element budget.
    BudgetExceeded { elements: u128, budget: u128 },
}

impl fmt::Display for CooError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CooError::ZeroDimension => {
                write!(f, "matrix dimensions must be at least 1 x 1")
            }
            CooError::IndexOutOfBounds {
                row,
                col,
                rows,
                cols,
            } => write!(
                f,
                "entry ({row}, {col}) is outside the {rows} x {cols} matrix"
            ),
            CooError::NonFinite { row, col } => {
                write!(f, "entry ({row}, {col}) has a non-finite value")
            }
            CooError::BudgetExceeded { elements, budget } => write!(
                f,
                "dense form needs {elements} elements, over the budget of {budget}"
            ),
        }
    }
}

impl std::error::Error for CooError {}

/// Sparse matrix in coordinate form.
///
/// Entries are held as `(row, col, value)` triplets with 0-based indices,
/// strictly sorted row-major, with no duplicates and no explicit zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct CooMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl CooMatrix {
    /// Assembles a matrix from triplets in any order.
    ///
    /// Duplicate coordinates are summed; entries that are (or sum to)
    /// exactly `0.0` are dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: Vec<(usize, usize, f64)>,
    ) -> Result<Self, CooError> {
        if rows == 0 || cols == 0 {
            return Err(CooError::ZeroDimension);
        }
        let mut entries = triplets;
        for &(r, c, v) in &entries {
            if r >= rows || c >= cols {
                return Err(CooError::IndexOutOfBounds {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            if !v.is_finite() {
                return Err(CooError::NonFinite { row: r, col: c });
            }
        }
        entries.sort_by_key(|&(r, c, _)| (r, c));
        let mut assembled: Vec<(usize, usize, f64)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match assembled.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => assembled.push((r, c, v)),
            }
        }
        assembled.retain(|&(_, _, v)| v != 0.0);
        Ok(CooMatrix {
            rows,
            cols,
            entries: assembled,
        })
    }

    /// An empty matrix of the given shape.
    pub fn empty(rows: usize, cols: usize) -> Result<Self, CooError> {
        Self::from_triplets(rows, cols, Vec::new())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of stored nonzeros.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Fraction of cells that hold a nonzero, in `[0, 1]`.
    pub fn density(&self) -> f64 {
        self.entries.len() as f64 / (self.rows as f64 * self.cols as f64)
    }

    /// The canonical entry slice: sorted row-major, deduplicated, zero-free.
    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, usize, f64)> {
        self.entries.iter()
    }

    /// Nonzero count of every row.
    pub fn row_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.rows];
        for &(r, _, _) in &self.entries {
            counts[r] += 1;
        }
        counts
    }

    /// Nonzero count of every column.
    pub fn col_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.cols];
        for &(_, c, _) in &self.entries {
            counts[c] += 1;
        }
        counts
    }

    /// The transposed matrix (indices swapped, entries re-sorted).
    pub fn transpose(&self) -> CooMatrix {
        let swapped = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        CooMatrix::from_triplets(self.cols, self.rows, swapped)
            .expect("transposing cannot break assembly invariants")
    }

    /// y = A x over the triplets, accumulating in row-major entry order.
    pub fn spmv(&self, x: &[f64]) -> Result<Vec<f64>, crate::spmv::SpmvError> {
        crate::spmv::check_dims(self.cols, x.len())?;
        let mut y = vec![0.0; self.rows];
        for &(r, c, v) in &self.entries {
            y[r] += v * x[c];
        }
        Ok(y)
    }

    /// Array slots a coordinate layout occupies: row, column, and value per
    /// entry.
    pub fn element_count(&self) -> usize {
        3 * self.entries.len()
    }
}
