//! Compressed diagonal storage.
//!
//! Each diagonal is keyed by its offset `k = col - row` and stored as a
//! fixed-length strip of `min(rows, cols)` slots, padded with `0.0` where
//! the diagonal leaves the matrix or the cell is structurally zero. Strips
//! are anchored by row when the matrix is square or wide (`slot t` holds
//! `A[t, t + k]`) and by column when it is tall (`slot t` holds
//! `A[t - k, t]`), so the strip length always matches the shorter side.

use super::FormatError;
use crate::coo::CooMatrix;
use crate::spmv::{check_dims, SpmvError};

#[derive(Debug, Clone, PartialEq)]
pub struct DiaMatrix {
    rows: usize,
    cols: usize,
    /// Offsets of the stored diagonals, strictly ascending.
    offsets: Vec<isize>,
    /// Strips of length `diag_len()`, one per offset, concatenated.
    data: Vec<f64>,
}

impl DiaMatrix {
    pub fn from_coo(m: &CooMatrix) -> Self {
        let len = m.rows().min(m.cols());
        let mut offsets: Vec<isize> = m
            .iter()
            .map(|&(r, c, _)| c as isize - r as isize)
            .collect();
        offsets.sort_unstable();
        offsets.dedup();
        let mut data = vec![0.0; offsets.len() * len];
        let row_anchored = m.rows() <= m.cols();
        for &(r, c, v) in m.entries() {
            let k = c as isize - r as isize;
            let d = offsets.binary_search(&k).expect("offset was collected");
            let t = if row_anchored { r } else { c };
            data[d * len + t] = v;
        }
        DiaMatrix {
            rows: m.rows(),
            cols: m.cols(),
            offsets,
            data,
        }
    }

    /// Assembles from raw arrays, validating offsets, padding, and that
    /// every listed diagonal actually holds a nonzero.
    pub fn try_new(
        rows: usize,
        cols: usize,
        offsets: Vec<isize>,
        data: Vec<f64>,
    ) -> Result<Self, FormatError> {
        let len = rows.min(cols);
        if data.len() != offsets.len() * len {
            return Err(FormatError::WrongLength {
                what: "diagonal data",
                expected: offsets.len() * len,
                got: data.len(),
            });
        }
        for (i, &k) in offsets.iter().enumerate() {
            if k < -(rows as isize - 1) || k > cols as isize - 1 {
                return Err(FormatError::BadOffset { offset: k });
            }
            if i > 0 && offsets[i - 1] >= k {
                return Err(FormatError::OffsetsNotAscending);
            }
        }
        let candidate = DiaMatrix {
            rows,
            cols,
            offsets,
            data,
        };
        for (d, &k) in candidate.offsets.iter().enumerate() {
            let strip = candidate.diagonal(d);
            let mut nonzero = 0usize;
            for (t, &v) in strip.iter().enumerate() {
                if !v.is_finite() {
                    return Err(FormatError::NonFiniteStoredValue { position: d * len + t });
                }
                if candidate.cell_of(k, t).is_some() {
                    if v != 0.0 {
                        nonzero += 1;
                    }
                } else if v != 0.0 {
                    return Err(FormatError::BadPadding { offset: k, slot: t });
                }
            }
            if nonzero == 0 {
                return Err(FormatError::EmptyDiagonal { offset: k });
            }
        }
        Ok(candidate)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Length of every stored strip: the matrix's shorter side.
    pub fn diag_len(&self) -> usize {
        self.rows.min(self.cols)
    }

    /// Number of stored (nonzero) diagonals.
    pub fn num_diagonals(&self) -> usize {
        self.offsets.len()
    }

    pub fn offsets(&self) -> &[isize] {
        &self.offsets
    }

    /// The strip of the `d`-th stored diagonal.
    pub fn diagonal(&self, d: usize) -> &[f64] {
        let len = self.diag_len();
        &self.data[d * len..(d + 1) * len]
    }

    /// The matrix cell slot `t` of a diagonal with offset `k` refers to,
    /// or `None` when the slot is padding.
    fn cell_of(&self, k: isize, t: usize) -> Option<(usize, usize)> {
        if self.rows <= self.cols {
            let c = t as isize + k;
            (c >= 0 && c < self.cols as isize).then_some((t, c as usize))
        } else {
            let r = t as isize - k;
            (r >= 0 && r < self.rows as isize).then_some((r as usize, t))
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|&&v| v != 0.0).count()
    }

    pub fn to_coo(&self) -> CooMatrix {
        let mut triplets = Vec::new();
        for (d, &k) in self.offsets.iter().enumerate() {
            for (t, &v) in self.diagonal(d).iter().enumerate() {
                if v != 0.0 {
                    let (r, c) = self
                        .cell_of(k, t)
                        .expect("validated padding keeps nonzeros inside the matrix");
                    triplets.push((r, c, v));
                }
            }
        }
        CooMatrix::from_triplets(self.rows, self.cols, triplets)
            .expect("validated DIA arrays reconstruct cleanly")
    }

    /// y = A x diagonal by diagonal, ascending offsets.
    pub fn spmv(&self, x: &[f64]) -> Result<Vec<f64>, SpmvError> {
        check_dims(self.cols, x.len())?;
        let mut y = vec![0.0; self.rows];
        for (d, &k) in self.offsets.iter().enumerate() {
            let strip = self.diagonal(d);
            for (t, &v) in strip.iter().enumerate() {
                if let Some((r, c)) = self.cell_of(k, t) {
                    y[r] += v * x[c];
                }
            }
        }
        Ok(y)
    }

    /// Occupied slots: the offset list plus every padded strip.
    pub fn element_count(&self) -> usize {
        self.offsets.len() + self.data.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::DenseMatrix;
    use crate::testutil::demo_matrix;

    /// Independent oracle: enumerate nonzero diagonals by scanning the
    /// dense form cell by cell.
    #[allow(clippy::type_complexity)]
    fn diagonal_scan_oracle(m: &CooMatrix) -> Vec<(isize, Vec<(usize, usize, f64)>)> {
        let d = DenseMatrix::from_coo(m).unwrap();
        let mut result = Vec::new();
        for k in -(d.rows() as isize - 1)..=(d.cols() as isize - 1) {
            let mut cells = Vec::new();
            for r in 0..d.rows() {
                let c = r as isize + k;
                if c >= 0 && (c as usize) < d.cols() && d.get(r, c as usize) != 0.0 {
                    cells.push((r, c as usize, d.get(r, c as usize)));
                }
            }
            if !cells.is_empty() {
                result.push((k, cells));
            }
        }
        result
    }

    #[test]
    fn demo_matrix_offsets_match_the_diagonal_scan_oracle() {
        let m = demo_matrix();
        let dia = DiaMatrix::from_coo(&m);
        assert_eq!(dia.offsets(), &[-2, 0, 1, 2]);
        assert_eq!(dia.num_diagonals(), 4);
        assert_eq!(dia.element_count(), 20);
        let oracle = diagonal_scan_oracle(&m);
        let oracle_offsets: Vec<isize> = oracle.iter().map(|&(k, _)| k).collect();
        assert_eq!(dia.offsets(), oracle_offsets.as_slice());
        // Strip contents, slot by slot.
        assert_eq!(dia.diagonal(0), &[0.0, 0.0, 7.0, 0.0]);
        assert_eq!(dia.diagonal(1), &[2.0, 4.0, 6.0, 8.0]);
        assert_eq!(dia.diagonal(2), &[1.0, 3.0, 0.0, 0.0]);
        assert_eq!(dia.diagonal(3), &[0.0, 5.0, 0.0, 0.0]);
    }

    #[test]
    fn identity_is_one_unit_strip() {
        let m = crate::pattern::generate_pattern(crate::pattern::PatternKind::Identity, 4, 4)
            .unwrap();
        let dia = DiaMatrix::from_coo(&m);
        assert_eq!(dia.offsets(), &[0]);
        assert_eq!(dia.diagonal(0), &[1.0; 4]);
        assert_eq!(dia.element_count(), 5);
        assert_eq!(dia.to_coo(), m);
    }

    #[test]
    fn wide_matrix_pads_past_the_short_side() {
        // Single entry at (0, 4) of a 3x5: one diagonal of length 3.
        let m = CooMatrix::from_triplets(3, 5, vec![(0, 4, 9.5)]).unwrap();
        let dia = DiaMatrix::from_coo(&m);
        assert_eq!(dia.offsets(), &[4]);
        assert_eq!(dia.diag_len(), 3);
        assert_eq!(dia.diagonal(0), &[9.5, 0.0, 0.0]);
        assert_eq!(dia.element_count(), 4);
        assert_eq!(dia.to_coo(), m);
    }

    #[test]
    fn tall_matrix_anchors_by_column() {
        let m = CooMatrix::from_triplets(5, 3, vec![(4, 0, 1.5), (0, 2, 2.5)]).unwrap();
        let dia = DiaMatrix::from_coo(&m);
        assert_eq!(dia.offsets(), &[-4, 2]);
        assert_eq!(dia.diag_len(), 3);
        assert_eq!(dia.diagonal(0), &[1.5, 0.0, 0.0]);
        assert_eq!(dia.diagonal(1), &[0.0, 0.0, 2.5]);
        assert_eq!(dia.to_coo(), m);
    }

    #[test]
    fn try_new_rejects_bad_diagonals() {
        // Offset outside the matrix.
        assert!(matches!(
            DiaMatrix::try_new(2, 2, vec![3], vec![1.0, 0.0]),
            Err(FormatError::BadOffset { offset: 3 })
        ));
        // Unsorted offsets.
        assert!(matches!(
            DiaMatrix::try_new(3, 3, vec![1, 0], vec![1.0; 6]),
            Err(FormatError::OffsetsNotAscending)
        ));
        // Nonzero in a padding slot: offset 1 of a 2x2 has one real cell.
        assert!(matches!(
            DiaMatrix::try_new(2, 2, vec![1], vec![1.0, 2.0]),
            Err(FormatError::BadPadding { offset: 1, slot: 1 })
        ));
        // A diagonal with no nonzero at all.
        assert!(matches!(
            DiaMatrix::try_new(2, 2, vec![0], vec![0.0, 0.0]),
            Err(FormatError::EmptyDiagonal { offset: 0 })
        ));
        // Wrong data length.
        assert!(matches!(
            DiaMatrix::try_new(2, 2, vec![0], vec![1.0]),
            Err(FormatError::WrongLength { .. })
        ));
    }

    #[test]
    fn spmv_matches_hand_sums() {
        let dia = DiaMatrix::from_coo(&demo_matrix());
        assert_eq!(dia.spmv(&[1.0; 4]).unwrap(), vec![3.0, 12.0, 13.0, 8.0]);
        assert_eq!(
            dia.spmv(&[1.0, 2.0, 3.0, 4.0]).unwrap(),
            vec![4.0, 37.0, 25.0, 32.0]
        );
    }

    #[test]
    fn spmv_handles_rectangular_shapes() {
        let wide = CooMatrix::from_triplets(2, 4, vec![(0, 3, 2.0), (1, 0, 3.0)]).unwrap();
        let dia = DiaMatrix::from_coo(&wide);
        assert_eq!(
            dia.spmv(&[1.0, 1.0, 1.0, 10.0]).unwrap(),
            vec![20.0, 3.0]
        );
        let tall = CooMatrix::from_triplets(4, 2, vec![(3, 0, 2.0), (0, 1, 3.0)]).unwrap();
        let dia = DiaMatrix::from_coo(&tall);
        assert_eq!(
            dia.spmv(&[1.0, 2.0]).unwrap(),
            vec![6.0, 0.0, 0.0, 2.0]
        );
    }
}
