//! Deterministic synthetic matrix generators.
//!
//! Each pattern targets one of the distribution categories the analyzer
//! recognizes, which makes these the fixtures of choice for tests, examples,
//! and benchmarks: `identity`/`tridiagonal` for diagonal density,
//! `dense_rows`/`dense_cols` for dense lines, `checkerboard` for ideal
//! randomness, and `uniform_random` for everything in between. The same
//! `(kind, rows, cols)` always yields the same matrix; randomness comes only
//! from the explicit seed of `uniform_random`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coo::CooMatrix;

#[derive(Debug, Clone, PartialEq)]
pub enum PatternError {
    ZeroDimension,
    /// `kind` string did not parse.
    UnknownKind(String),
    ParamOutOfRange { kind: &'static str, reason: String },
}

impl fmt::Display for PatternError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternError::ZeroDimension => {
                write!(f, "pattern dimensions must be at least 1 x 1")
            }
            PatternError::UnknownKind(s) => write!(
                f,
                "unknown pattern '{s}' (expected identity, tridiagonal, dense_rows(k), \
                 dense_cols(k), checkerboard(stride), or uniform_random(density,seed))"
            ),
            PatternError::ParamOutOfRange { kind, reason } => {
                write!(f, "bad parameter for {kind}: {reason}")
            }
        }
    }
}

impl std::error::Error for PatternError {}

/// A named nonzero layout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PatternKind {
    /// Ones on the main diagonal.
    Identity,
    /// Classic second-difference stencil: 2 on the diagonal, -1 beside it.
    Tridiagonal,
    /// The first `k` rows fully dense; every other row holds one entry,
    /// placed round-robin across columns.
    DenseRows(usize),
    /// The first `k` columns fully dense; every other column holds one
    /// entry, placed round-robin across rows.
    DenseCols(usize),
    /// Nonzeros wherever `(i + j) % stride == 0`; stride 2 is the even
    /// checkerboard, stride 1 is fully dense.
    Checkerboard(usize),
    /// Independent cell fill with the given probability, reproducible from
    /// the seed.
    UniformRandom { density: f64, seed: u64 },
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternKind::Identity => write!(f, "identity"),
            PatternKind::Tridiagonal => write!(f, "tridiagonal"),
            PatternKind::DenseRows(k) => write!(f, "dense_rows({k})"),
            PatternKind::DenseCols(k) => write!(f, "dense_cols({k})"),
            PatternKind::Checkerboard(s) => write!(f, "checkerboard({s})"),
            PatternKind::UniformRandom { density, seed } => {
                write!(f, "uniform_random({density},{seed})")
            }
        }
    }
}

impl FromStr for PatternKind {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "identity" => return Ok(PatternKind::Identity),
            "tridiagonal" => return Ok(PatternKind::Tridiagonal),
            _ => {}
        }
        let (name, rest) = match s.split_once('(') {
            Some((name, rest)) => (name, rest),
            None => return Err(PatternError::UnknownKind(s.to_string())),
        };
        let args = match rest.strip_suffix(')') {
            Some(args) => args,
            None => return Err(PatternError::UnknownKind(s.to_string())),
        };
        let unknown = || PatternError::UnknownKind(s.to_string());
        match name {
            "dense_rows" => Ok(PatternKind::DenseRows(
                args.trim().parse().map_err(|_| unknown())?,
            )),
            "dense_cols" => Ok(PatternKind::DenseCols(
                args.trim().parse().map_err(|_| unknown())?,
            )),
            "checkerboard" => Ok(PatternKind::Checkerboard(
                args.trim().parse().map_err(|_| unknown())?,
            )),
            "uniform_random" => {
                let (d, seed) = args.split_once(',').ok_or_else(unknown)?;
                Ok(PatternKind::UniformRandom {
                    density: d.trim().parse().map_err(|_| unknown())?,
                    seed: seed.trim().parse().map_err(|_| unknown())?,
                })
            }
            _ => Err(unknown()),
        }
    }
}

/// Builds the matrix a pattern describes.
pub fn generate_pattern(
    kind: PatternKind,
    rows: usize,
    cols: usize,
) -> Result<CooMatrix, PatternError> {
    if rows == 0 || cols == 0 {
        return Err(PatternError::ZeroDimension);
    }
    let triplets = match kind {
        PatternKind::Identity => (0..rows.min(cols)).map(|i| (i, i, 1.0)).collect(),
        PatternKind::Tridiagonal => {
            let mut t = Vec::new();
            for i in 0..rows {
                if i > 0 && i - 1 < cols {
                    t.push((i, i - 1, -1.0));
                }
                if i < cols {
                    t.push((i, i, 2.0));
                }
                if i + 1 < cols {
                    t.push((i, i + 1, -1.0));
                }
            }
            t
        }
        PatternKind::DenseRows(k) => {
            if k > rows {
                return Err(PatternError::ParamOutOfRange {
                    kind: "dense_rows",
                    reason: format!("k = {k} exceeds the {rows} rows"),
                });
            }
            let mut t = Vec::new();
            for i in 0..k {
                for j in 0..cols {
                    t.push((i, j, 1.0));
                }
            }
            for i in k..rows {
                t.push((i, (i - k) % cols, 1.0));
            }
            t
        }
        PatternKind::DenseCols(k) => {
            if k > cols {
                return Err(PatternError::ParamOutOfRange {
                    kind: "dense_cols",
                    reason: format!("k = {k} exceeds the {cols} columns"),
                });
            }
            let mut t = Vec::new();
            for j in 0..k {
                for i in 0..rows {
                    t.push((i, j, 1.0));
                }
            }
            for j in k..cols {
                t.push(((j - k) % rows, j, 1.0));
            }
            t
        }
        PatternKind::Checkerboard(stride) => {
            if stride == 0 {
                return Err(PatternError::ParamOutOfRange {
                    kind: "checkerboard",
                    reason: "stride must be at least 1".into(),
                });
            }
            let mut t = Vec::new();
            for i in 0..rows {
                for j in 0..cols {
                    if (i + j) % stride == 0 {
                        t.push((i, j, 1.0));
                    }
                }
            }
            t
        }
        PatternKind::UniformRandom { density, seed } => {
            if !(0.0..=1.0).contains(&density) {
                return Err(PatternError::ParamOutOfRange {
                    kind: "uniform_random",
                    reason: format!("density {density} is outside [0, 1]"),
                });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut t = Vec::new();
            for i in 0..rows {
                for j in 0..cols {
                    if rng.gen::<f64>() < density {
                        // Well-scaled positive values keep SpMV comparisons
                        // free of cancellation.
                        t.push((i, j, 0.5 + rng.gen::<f64>()));
                    }
                }
            }
            t
        }
    };
    Ok(CooMatrix::from_triplets(rows, cols, triplets)
        .expect("generators emit in-bounds nonzero triplets"))
}
