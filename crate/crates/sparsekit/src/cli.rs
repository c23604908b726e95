//! Command implementations behind the `sparsekit` binary.
//!
//! Each command loads a Matrix Market file, assembles a [`Report`], and
//! leaves rendering (text or JSON) to the caller, so the same entry points
//! serve the binary, the examples, and the integration tests.

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analyzer::analyze;
use crate::coo::{CooError, CooMatrix};
use crate::dense::DenseMatrix;
use crate::formats::{FormatError, FormatId, FormatMatrix};
use crate::market::{read_matrix_market_file, write_matrix_market, MarketError};
use crate::recommender::{recommend_with, Objective};
use crate::report::{
    format_arrays_json, format_dump, BenchRow, BenchSection, ConvertSection, MatrixSummary,
    OpModelSection, Report, SizeSection, DEFAULT_INDEX_BYTES,
};
use crate::size_model::{size_report, SizeModelError};
use crate::spmv::{bench_spmv, bench_with, max_relative_error, SpmvError};

/// Seed of the deterministic benchmark vector; printed in every bench
/// report.
pub const BENCH_SEED: u64 = 42;

/// Per-component relative tolerance each kernel must meet against the
/// dense oracle before it is timed.
pub const KERNEL_TOLERANCE: f64 = 1e-12;

#[derive(Debug)]
pub enum CliError {
    /// Reading or parsing the input file failed.
    Market { path: PathBuf, source: MarketError },
    /// Writing an output file failed.
    Io { path: PathBuf, source: io::Error },
    Dense(CooError),
    Size(SizeModelError),
    Spmv(SpmvError),
    Format(FormatError),
    /// A kernel disagreed with the dense oracle; timing it would be
    /// meaningless.
    KernelMismatch { format: FormatId, error: f64 },
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Market { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Dense(e) => write!(f, "{e}"),
            CliError::Size(e) => write!(f, "{e}"),
            CliError::Spmv(e) => write!(f, "{e}"),
            CliError::Format(e) => write!(f, "{e}"),
            CliError::KernelMismatch { format, error } => write!(
                f,
                "{format} kernel disagrees with the dense oracle (relative error {error:.3e})"
            ),
        }
    }
}

impl std::error::Error for CliError {}

fn load(path: &Path) -> Result<CooMatrix, CliError> {
    read_matrix_market_file(path).map_err(|source| CliError::Market {
        path: path.to_path_buf(),
        source,
    })
}

/// `analyze <file>`: matrix summary plus the distribution profile.
pub fn analyze_report(path: &Path) -> Result<Report, CliError> {
    let m = load(path)?;
    let mut report = Report::new("analyze", Some(path.display().to_string()));
    report.matrix = Some(MatrixSummary::of(&m));
    report.analysis = Some(analyze(&m));
    report.op_model = Some(OpModelSection::of(&m));
    Ok(report)
}

/// `recommend <file> --objective ...`: the analysis plus one suggestion
/// per requested objective; size requests include the size table.
pub fn recommend_report(path: &Path, objectives: &[Objective]) -> Result<Report, CliError> {
    let m = load(path)?;
    let profile = analyze(&m);
    let sizes = size_report(&m).map_err(CliError::Size)?;
    let mut report = Report::new("recommend", Some(path.display().to_string()));
    report.matrix = Some(MatrixSummary::of(&m));
    report.analysis = Some(profile.clone());
    report.op_model = Some(OpModelSection::of(&m));
    if objectives.contains(&Objective::Size) {
        report.sizes = Some(SizeSection::of(&sizes, DEFAULT_INDEX_BYTES));
    }
    report.recommendations = objectives
        .iter()
        .map(|&objective| recommend_with(&profile, &sizes, objective))
        .collect();
    if report.recommendations.len() == 2 {
        report.objectives_disagree =
            Some(report.recommendations[0].format != report.recommendations[1].format);
    }
    Ok(report)
}

/// `convert <file> --format F --out PATH`: writes the array dump to `PATH`
/// and a Matrix Market round-trip file to `PATH.mtx`.
pub fn convert_file(path: &Path, format: FormatId, out: &Path) -> Result<Report, CliError> {
    let m = load(path)?;
    let f = FormatMatrix::build(&m, format).map_err(CliError::Format)?;
    let dump = format_dump(&f);
    fs::write(out, &dump).map_err(|source| CliError::Io {
        path: out.to_path_buf(),
        source,
    })?;
    let market_path = PathBuf::from(format!("{}.mtx", out.display()));
    let mut buf = Vec::new();
    write_matrix_market(&mut buf, &f.to_coo()).expect("writing to a Vec cannot fail");
    fs::write(&market_path, buf).map_err(|source| CliError::Io {
        path: market_path.clone(),
        source,
    })?;

    let mut report = Report::new("convert", Some(path.display().to_string()));
    report.matrix = Some(MatrixSummary::of(&m));
    report.convert = Some(ConvertSection {
        format,
        dump_path: out.display().to_string(),
        market_path: market_path.display().to_string(),
        arrays: format_arrays_json(&f),
    });
    Ok(report)
}

/// `bench <file> --reps N`: verifies every kernel against the dense oracle,
/// then times it, and shows the recommender's speed pick alongside.
pub fn bench_report(path: &Path, repetitions: usize) -> Result<Report, CliError> {
    let m = load(path)?;
    let dense = DenseMatrix::from_coo(&m).map_err(CliError::Dense)?;
    let mut rng = ChaCha8Rng::seed_from_u64(BENCH_SEED);
    let x: Vec<f64> = (0..m.cols()).map(|_| 0.5 + rng.gen::<f64>()).collect();
    let oracle = dense.spmv(&x).map_err(CliError::Spmv)?;

    let mut rows = Vec::with_capacity(FormatId::ALL.len());
    let summary = bench_with(repetitions, || dense.spmv(&x)).map_err(CliError::Spmv)?;
    rows.push(bench_row(FormatId::Dense, &summary, 0.0));
    for f in FormatMatrix::build_all(&m) {
        let result = f.spmv(&x).map_err(CliError::Spmv)?;
        let error = max_relative_error(&result, &oracle);
        if error > KERNEL_TOLERANCE {
            return Err(CliError::KernelMismatch {
                format: f.format_id(),
                error,
            });
        }
        let summary = bench_spmv(&f, &x, repetitions).map_err(CliError::Spmv)?;
        rows.push(bench_row(f.format_id(), &summary, error));
    }

    let profile = analyze(&m);
    let sizes = size_report(&m).map_err(CliError::Size)?;
    let mut report = Report::new("bench", Some(path.display().to_string()));
    report.matrix = Some(MatrixSummary::of(&m));
    report.op_model = Some(OpModelSection::of(&m));
    report.recommendations = vec![recommend_with(&profile, &sizes, Objective::Speed)];
    report.bench = Some(BenchSection {
        seed: BENCH_SEED,
        repetitions,
        rows,
    });
    Ok(report)
}

fn bench_row(
    kernel: FormatId,
    summary: &crate::spmv::TimingSummary,
    error: f64,
) -> BenchRow {
    let ns = |d: std::time::Duration| u64::try_from(d.as_nanos()).unwrap_or(u64::MAX);
    BenchRow {
        kernel,
        min_ns: ns(summary.min()),
        median_ns: ns(summary.median()),
        mean_ns: ns(summary.mean()),
        verified: error <= KERNEL_TOLERANCE,
        max_relative_error: error,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::market::write_matrix_market_string;
    use crate::pattern::{generate_pattern, PatternKind};

    fn write_fixture(dir: &tempfile::TempDir, name: &str, m: &CooMatrix) -> PathBuf {
        let path = dir.path().join(name);
        fs::write(&path, write_matrix_market_string(m)).unwrap();
        path
    }

    #[test]
    fn analyze_report_carries_summary_and_profile() {
        let dir = tempfile::tempdir().unwrap();
        let m = generate_pattern(PatternKind::Identity, 7, 7).unwrap();
        let path = write_fixture(&dir, "id7.mtx", &m);
        let report = analyze_report(&path).unwrap();
        let summary = report.matrix.unwrap();
        assert_eq!((summary.rows, summary.cols, summary.nnz), (7, 7, 7));
        assert_eq!(
            report.analysis.unwrap().diag_level,
            crate::analyzer::Level::VeryHigh
        );
        assert!(report.error.is_none());
    }

    #[test]
    fn missing_file_error_names_the_path() {
        let err = analyze_report(Path::new("no/such/file.mtx")).unwrap_err();
        assert!(err.to_string().contains("no/such/file.mtx"));
    }

    #[test]
    fn recommend_report_includes_sizes_only_for_size_objective() {
        let dir = tempfile::tempdir().unwrap();
        let m = generate_pattern(PatternKind::Identity, 7, 7).unwrap();
        let path = write_fixture(&dir, "id7.mtx", &m);
        let speed_only = recommend_report(&path, &[Objective::Speed]).unwrap();
        assert!(speed_only.sizes.is_none());
        assert_eq!(speed_only.recommendations.len(), 1);
        let both = recommend_report(&path, &[Objective::Speed, Objective::Size]).unwrap();
        assert!(both.sizes.is_some());
        assert_eq!(both.objectives_disagree, Some(false));
    }

    #[test]
    fn convert_writes_dump_and_round_trip_file() {
        let dir = tempfile::tempdir().unwrap();
        let m = crate::testutil::demo_matrix();
        let path = write_fixture(&dir, "demo.mtx", &m);
        let out = dir.path().join("demo_csr.txt");
        let report = convert_file(&path, FormatId::Csr, &out).unwrap();
        let dump = fs::read_to_string(&out).unwrap();
        assert!(dump.contains("Row ptr: 1 3 6 8 9"));
        let section = report.convert.unwrap();
        let round_trip = read_matrix_market_file(&section.market_path).unwrap();
        assert_eq!(round_trip, m);
    }

    #[test]
    fn bench_report_covers_all_seven_kernels() {
        let dir = tempfile::tempdir().unwrap();
        let m = crate::testutil::demo_matrix();
        let path = write_fixture(&dir, "demo.mtx", &m);
        let report = bench_report(&path, 5).unwrap();
        let bench = report.bench.unwrap();
        assert_eq!(bench.rows.len(), 7);
        assert!(bench.rows.iter().all(|r| r.verified));
        assert_eq!(bench.seed, BENCH_SEED);
        assert_eq!(report.recommendations.len(), 1);
        assert_eq!(report.recommendations[0].objective, Objective::Speed);
    }

    #[test]
    fn bench_rejects_zero_repetitions() {
        let dir = tempfile::tempdir().unwrap();
        let m = crate::testutil::demo_matrix();
        let path = write_fixture(&dir, "demo.mtx", &m);
        assert!(matches!(
            bench_report(&path, 0).unwrap_err(),
            CliError::Spmv(SpmvError::ZeroRepetitions)
        ));
    }
}
