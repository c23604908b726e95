//! Matrix-vector multiplication support: the op-count model and a small
//! timing harness.
//!
//! The multiply kernels themselves live on each matrix type (`spmv`
//! methods); this module holds what is shared around them. The op-count
//! model covers exactly two layouts, dense and COO — the two the
//! comparison is defined for — and reports the closed-form expression
//! value without claiming a unit. Timings are monotone data for reports
//! only and are never used in correctness assertions.

use std::fmt;
use std::time::{Duration, Instant};

use crate::formats::{FormatId, FormatMatrix};

#[derive(Debug, Clone, PartialEq)]
pub enum SpmvError {
    /// The input vector length does not match the matrix column count.
    DimensionMismatch { expected: usize, got: usize },
    /// No op-count formula exists for this layout.
    UnmodelledFormat(FormatId),
    /// The COO formula assumes at least one nonzero per row.
    InvalidNpr,
    /// Benchmarks need at least one repetition.
    ZeroRepetitions,
    InvalidDimensions,
}

impl fmt::Display for SpmvError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpmvError::DimensionMismatch { expected, got } => {
                write!(f, "vector has length {got}, expected {expected}")
            }
            SpmvError::UnmodelledFormat(id) => {
                write!(f, "no op-count model for {id} (only dense and COO are modelled)")
            }
            SpmvError::InvalidNpr => write!(f, "nonzeros per row must be at least 1"),
            SpmvError::ZeroRepetitions => write!(f, "repetitions must be at least 1"),
            SpmvError::InvalidDimensions => write!(f, "dimensions must be at least 1 x 1"),
        }
    }
}

impl std::error::Error for SpmvError {}

pub(crate) fn check_dims(expected: usize, got: usize) -> Result<(), SpmvError> {
    if expected == got {
        Ok(())
    } else {
        Err(SpmvError::DimensionMismatch { expected, got })
    }
}

/// Modelled computation count of one `y = A x` multiply.
///
/// * dense: `M * (2N - 1)` — N products and N-1 additions per row.
/// * COO: `NNZ + M * (Npr - 1)`, under the model's assumption that every
///   row holds `Npr` nonzeros.
///
/// Other layouts have no modelled count and return an error; their cost is
/// measured, not predicted.
pub fn op_count(
    format: FormatId,
    m: usize,
    n: usize,
    nnz: usize,
    npr: usize,
) -> Result<u64, SpmvError> {
    match format {
        FormatId::Dense => {
            if m == 0 || n == 0 {
                return Err(SpmvError::InvalidDimensions);
            }
            Ok(m as u64 * (2 * n as u64 - 1))
        }
        FormatId::Coo => {
            if npr == 0 {
                return Err(SpmvError::InvalidNpr);
            }
            Ok(nnz as u64 + m as u64 * (npr as u64 - 1))
        }
        other => Err(SpmvError::UnmodelledFormat(other)),
    }
}

/// Largest per-component relative deviation of `result` from `oracle`.
/// Components where the oracle is exactly zero contribute their absolute
/// value instead.
pub fn max_relative_error(result: &[f64], oracle: &[f64]) -> f64 {
    assert_eq!(result.len(), oracle.len(), "vectors must match in length");
    result
        .iter()
        .zip(oracle)
        .map(|(&a, &b)| {
            if b == 0.0 {
                a.abs()
            } else {
                (a - b).abs() / b.abs()
            }
        })
        .fold(0.0, f64::max)
}

/// Wall-time samples of repeated multiplies, plus the (deterministic)
/// product vector.
#[derive(Debug, Clone)]
pub struct TimingSummary {
    samples: Vec<Duration>,
    result: Vec<f64>,
}

impl TimingSummary {
    pub fn samples(&self) -> &[Duration] {
        &self.samples
    }

    pub fn result(&self) -> &[f64] {
        &self.result
    }

    pub fn min(&self) -> Duration {
        self.samples.iter().copied().min().unwrap_or_default()
    }

    pub fn median(&self) -> Duration {
        let mut sorted = self.samples.clone();
        sorted.sort_unstable();
        let n = sorted.len();
        if n % 2 == 1 {
            sorted[n / 2]
        } else {
            (sorted[n / 2 - 1] + sorted[n / 2]) / 2
        }
    }

    pub fn mean(&self) -> Duration {
        let total: Duration = self.samples.iter().sum();
        total / self.samples.len() as u32
    }
}

/// Times `repetitions` multiplies of one matrix, single-threaded so the
/// samples stay comparable across formats.
pub fn bench_spmv(
    matrix: &FormatMatrix,
    x: &[f64],
    repetitions: usize,
) -> Result<TimingSummary, SpmvError> {
    bench_with(repetitions, || matrix.spmv(x))
}

/// The timing loop behind [`bench_spmv`], usable with any multiply closure
/// (the dense oracle, for instance).
pub fn bench_with<F>(repetitions: usize, mut multiply: F) -> Result<TimingSummary, SpmvError>
where
    F: FnMut() -> Result<Vec<f64>, SpmvError>,
{
    if repetitions == 0 {
        return Err(SpmvError::ZeroRepetitions);
    }
    let mut samples = Vec::with_capacity(repetitions);
    let mut result = Vec::new();
    for _ in 0..repetitions {
        let start = Instant::now();
        let y = std::hint::black_box(multiply()?);
        samples.push(start.elapsed());
        result = y;
    }
    Ok(TimingSummary { samples, result })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coo::CooMatrix;
    use crate::pattern::{generate_pattern, PatternKind};

    #[test]
    fn op_count_evaluates_the_model_rows() {
        // Dense 4x4: 4 * (2*4 - 1).
        assert_eq!(op_count(FormatId::Dense, 4, 4, 0, 0).unwrap(), 28);
        // COO with 8 nonzeros over 4 rows of 2 each: 8 + 4 * 1.
        assert_eq!(op_count(FormatId::Coo, 4, 4, 8, 2).unwrap(), 12);
        // 1x1 dense.
        assert_eq!(op_count(FormatId::Dense, 1, 1, 0, 0).unwrap(), 1);
    }

    #[test]
    fn op_count_rejects_unmodelled_formats_and_bad_npr() {
        assert_eq!(
            op_count(FormatId::Csr, 4, 4, 8, 2),
            Err(SpmvError::UnmodelledFormat(FormatId::Csr))
        );
        assert_eq!(
            op_count(FormatId::Coo, 4, 4, 8, 0),
            Err(SpmvError::InvalidNpr)
        );
    }

    #[test]
    fn sparse_model_never_exceeds_dense_when_truly_sparse() {
        for (m, n, nnz) in [(4usize, 4usize, 8usize), (10, 6, 12), (32, 32, 64)] {
            let npr = (nnz as f64 / m as f64).round().max(1.0) as usize;
            let dense = op_count(FormatId::Dense, m, n, 0, 0).unwrap();
            let coo = op_count(FormatId::Coo, m, n, nnz, npr).unwrap();
            assert!(nnz < m * n);
            assert!(dense >= coo, "dense {dense} < coo {coo} at {m}x{n}");
        }
    }

    #[test]
    fn bench_records_the_requested_sample_count() {
        let m = generate_pattern(PatternKind::Identity, 8, 8).unwrap();
        let f = FormatMatrix::build(&m, FormatId::Csr).unwrap();
        let summary = bench_spmv(&f, &[1.0; 8], 3).unwrap();
        assert_eq!(summary.samples().len(), 3);
        assert_eq!(summary.result(), &[1.0; 8]);
        assert!(summary.min() <= summary.median());
    }

    #[test]
    fn bench_result_equals_plain_spmv_on_identity() {
        let m = generate_pattern(PatternKind::Identity, 1000, 1000).unwrap();
        let f = FormatMatrix::build(&m, FormatId::Dia).unwrap();
        let x: Vec<f64> = (0..1000).map(|i| i as f64 * 0.25 - 3.0).collect();
        let summary = bench_spmv(&f, &x, 10).unwrap();
        assert_eq!(summary.result(), x.as_slice());
        assert_eq!(summary.samples().len(), 10);
    }

    #[test]
    fn bench_rejects_zero_repetitions_and_bad_dims() {
        let m = CooMatrix::empty(2, 2).unwrap();
        let f = FormatMatrix::build(&m, FormatId::Coo).unwrap();
        assert_eq!(
            bench_spmv(&f, &[1.0; 2], 0).unwrap_err(),
            SpmvError::ZeroRepetitions
        );
        assert_eq!(
            bench_spmv(&f, &[1.0; 3], 1).unwrap_err(),
            SpmvError::DimensionMismatch {
                expected: 2,
                got: 3
            }
        );
    }

    #[test]
    fn relative_error_handles_zero_oracle_components() {
        assert_eq!(max_relative_error(&[0.0, 2.0], &[0.0, 2.0]), 0.0);
        assert_eq!(max_relative_error(&[0.5, 2.0], &[0.0, 2.0]), 0.5);
        assert!(max_relative_error(&[1.0 + 1e-13], &[1.0]) < 1e-12);
    }
}
