//! `sparsekit` — a sparse-matrix storage toolkit.
//!
//! The crate implements six point-entry sparse storage formats (COO, CSR,
//! CSC, DIA, JDS, TJDS) with lossless conversions through a canonical
//! coordinate form, matrix-vector multiplication kernels for every format,
//! element-count size models, and a rule-based recommender that analyzes the
//! distribution of nonzeros in a matrix and suggests the most appropriate
//! format for a speed or size objective.
//!
//! # Quick tour
//!
//! ```
//! use sparsekit::{read_matrix_market_str, CsrMatrix, Objective, recommend};
//!
//! let text = "%%MatrixMarket matrix coordinate real general\n\
//!             4 4 8\n\
//!             1 1 2\n1 2 1\n2 2 4\n2 3 3\n2 4 5\n3 1 7\n3 3 6\n4 4 8\n";
//! let coo = read_matrix_market_str(text)?;
//!
//! // Convert to a compressed format and multiply.
//! let csr = CsrMatrix::from_coo(&coo);
//! let y = csr.spmv(&[1.0, 1.0, 1.0, 1.0])?;
//! assert_eq!(y, vec![3.0, 12.0, 13.0, 8.0]);
//!
//! // Ask the recommender which format fits this matrix best.
//! let pick = recommend(&coo, Objective::Speed)?;
//! println!("suggested format for speed: {}", pick.format);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! # Modules
//!
//! * [`coo`] — canonical triplet form; every conversion passes through it.
//! * [`dense`] — row-major dense matrices, used as the correctness oracle.
//! * [`market`] — Matrix Market coordinate file reader and writer.
//! * [`pattern`] — deterministic synthetic matrix generators.
//! * [`formats`] — the five compressed layouts beyond COO.
//! * [`spmv`] — multiplication op-count model and a timing harness.
//! * [`size_model`] — element-count size formulas and measured cross-checks.
//! * [`analyzer`] — nonzero distribution profiling (shape, dense lines,
//!   diagonal density, randomness).
//! * [`recommender`] — rule tables mapping a profile to a format per objective.
//! * [`report`] — text and JSON renderings of the analysis workflow.
//! * [`cli`] — entry points behind the `sparsekit` binary.
//!
//! Run `cargo run --example recommend_format` for the end-to-end workflow, or
//! see the `examples/` directory for one runnable example per capability.

// Kernels walk parallel arrays by position; index loops are the clearest
// way to write them.
#![allow(clippy::needless_range_loop)]

pub mod analyzer;
pub mod cli;
pub mod coo;
pub mod dense;
pub mod formats;
pub mod market;
pub mod pattern;
pub mod recommender;
pub mod report;
pub mod size_model;
pub mod spmv;

#[cfg(test)]
pub(crate) mod testutil;

pub use crate::analyzer::{analyze, DistributionProfile, Level, Shape};
pub use crate::coo::{CooError, CooMatrix};
pub use crate::dense::DenseMatrix;
pub use crate::formats::{
    CscMatrix, CsrMatrix, DiaMatrix, FormatError, FormatId, FormatMatrix, JdsMatrix, TjdsMatrix,
};
pub use crate::market::{
    read_matrix_market, read_matrix_market_file, read_matrix_market_str, write_matrix_market,
    write_matrix_market_string, MarketError,
};
pub use crate::pattern::{generate_pattern, PatternError, PatternKind};
pub use crate::recommender::{recommend, recommend_with, Objective, Recommendation};
pub use crate::size_model::{model_size, size_report, SizeParams, SizeReport};
pub use crate::spmv::{bench_spmv, op_count, SpmvError, TimingSummary};
