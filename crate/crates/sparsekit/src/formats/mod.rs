//! The five compressed storage formats beyond COO.
//!
//! Every format is constructed from a [`CooMatrix`] and reconstructs back to
//! one via `to_coo`; there are no direct format-to-format conversions. All
//! conversions are lossless: `F::from_coo(&m).to_coo() == m` for every
//! format `F` and matrix `m`.
//!
//! Raw-array constructors (`try_new`) validate the full set of layout
//! invariants, so a value of any format type always describes a coherent
//! matrix and traversal never has to re-check.

mod csc;
mod csr;
mod dia;
mod jds;
mod tjds;

pub use csc::CscMatrix;
pub use csr::CsrMatrix;
pub use dia::DiaMatrix;
pub use jds::JdsMatrix;
pub use tjds::TjdsMatrix;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::coo::CooMatrix;
use crate::spmv::SpmvError;

/// Identifier for every storage layout the toolkit models, dense included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormatId {
    Dense,
    Coo,
    Csr,
    Csc,
    Dia,
    Jds,
    Tjds,
}

impl FormatId {
    /// All seven layouts, dense first.
    pub const ALL: [FormatId; 7] = [
        FormatId::Dense,
        FormatId::Coo,
        FormatId::Csr,
        FormatId::Csc,
        FormatId::Dia,
        FormatId::Jds,
        FormatId::Tjds,
    ];

    /// The six sparse layouts.
    pub const SPARSE: [FormatId; 6] = [
        FormatId::Coo,
        FormatId::Csr,
        FormatId::Csc,
        FormatId::Dia,
        FormatId::Jds,
        FormatId::Tjds,
    ];

    pub fn is_sparse(self) -> bool {
        self != FormatId::Dense
    }

    /// Lowercase id used in files, flags, and JSON.
    pub fn id_str(self) -> &'static str {
        match self {
            FormatId::Dense => "dense",
            FormatId::Coo => "coo",
            FormatId::Csr => "csr",
            FormatId::Csc => "csc",
            FormatId::Dia => "dia",
            FormatId::Jds => "jds",
            FormatId::Tjds => "tjds",
        }
    }
}

impl fmt::Display for FormatId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            FormatId::Dense => "Dense",
            FormatId::Coo => "COO",
            FormatId::Csr => "CSR",
            FormatId::Csc => "CSC",
            FormatId::Dia => "DIA",
            FormatId::Jds => "JDS",
            FormatId::Tjds => "TJDS",
        };
        f.write_str(name)
    }
}

impl FromStr for FormatId {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FormatId::ALL
            .into_iter()
            .find(|id| s.eq_ignore_ascii_case(id.id_str()))
            .ok_or_else(|| FormatError::UnknownFormat(s.to_string()))
    }
}

/// Invariant violations raised by the raw-array constructors.
#[derive(Debug, Clone, PartialEq)]
pub enum FormatError {
    UnknownFormat(String),
    /// An array does not have the length its layout requires.
    WrongLength {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    /// A pointer array is malformed (wrong endpoints or decreasing).
    BadPointer {
        what: &'static str,
        detail: String,
    },
    IndexOutOfBounds {
        what: &'static str,
        index: usize,
        limit: usize,
    },
    /// Indices within a line are not strictly increasing.
    NotSorted {
        what: &'static str,
        line: usize,
    },
    NotAPermutation {
        what: &'static str,
    },
    /// Stored values must be nonzero (padding slots in DIA excepted).
    ZeroStoredValue {
        position: usize,
    },
    NonFiniteStoredValue {
        position: usize,
    },
    /// A listed diagonal carries no nonzero at all.
    EmptyDiagonal {
        offset: isize,
    },
    /// A DIA slot that falls outside the matrix must hold 0.0.
    BadPadding {
        offset: isize,
        slot: usize,
    },
    /// A diagonal offset outside `[-(rows-1), cols-1]`.
    BadOffset {
        offset: isize,
    },
    OffsetsNotAscending,
    /// Jagged segment lengths must be nonincreasing.
    SegmentsNotMonotone {
        what: &'static str,
    },
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::UnknownFormat(s) => {
                write!(f, "unknown format '{s}' (expected one of: dense, coo, csr, csc, dia, jds, tjds)")
            }
            FormatError::WrongLength {
                what,
                expected,
                got,
            } => write!(f, "{what} has length {got}, expected {expected}"),
            FormatError::BadPointer { what, detail } => write!(f, "bad {what}: {detail}"),
            FormatError::IndexOutOfBounds { what, index, limit } => {
                write!(f, "{what} {index} is out of bounds (limit {limit})")
            }
            FormatError::NotSorted { what, line } => {
                write!(f, "{what} of line {line} are not strictly increasing")
            }
            FormatError::NotAPermutation { what } => write!(f, "{what} is not a permutation"),
            FormatError::ZeroStoredValue { position } => {
                write!(f, "stored value at position {position} is zero")
            }
            FormatError::NonFiniteStoredValue { position } => {
                write!(f, "stored value at position {position} is not finite")
            }
            FormatError::EmptyDiagonal { offset } => {
                write!(f, "diagonal {offset} holds no nonzero")
            }
            FormatError::BadPadding { offset, slot } => write!(
                f,
                "diagonal {offset} slot {slot} lies outside the matrix but is nonzero"
            ),
            FormatError::BadOffset { offset } => {
                write!(f, "diagonal offset {offset} is outside the matrix")
            }
            FormatError::OffsetsNotAscending => write!(f, "offsets are not strictly ascending"),
            FormatError::SegmentsNotMonotone { what } => {
                write!(f, "{what} segment lengths increase")
            }
        }
    }
}

impl std::error::Error for FormatError {}

/// Shared checks for stored value arrays.
pub(crate) fn check_values(values: &[f64]) -> Result<(), FormatError> {
    for (position, &v) in values.iter().enumerate() {
        if v == 0.0 {
            return Err(FormatError::ZeroStoredValue { position });
        }
        if !v.is_finite() {
            return Err(FormatError::NonFiniteStoredValue { position });
        }
    }
    Ok(())
}

pub(crate) fn check_permutation(perm: &[usize], n: usize, what: &'static str) -> Result<(), FormatError> {
    if perm.len() != n {
        return Err(FormatError::WrongLength {
            what,
            expected: n,
            got: perm.len(),
        });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(FormatError::NotAPermutation { what });
        }
        seen[p] = true;
    }
    Ok(())
}

/// A matrix held in any one of the six sparse layouts, for code that works
/// uniformly across formats (reports, benchmarks, conversion dumps).
#[derive(Debug, Clone, PartialEq)]
pub enum FormatMatrix {
    Coo(CooMatrix),
    Csr(CsrMatrix),
    Csc(CscMatrix),
    Dia(DiaMatrix),
    Jds(JdsMatrix),
    Tjds(TjdsMatrix),
}

impl FormatMatrix {
    /// Converts `m` into the requested sparse layout.
    pub fn build(m: &CooMatrix, id: FormatId) -> Result<FormatMatrix, FormatError> {
        Ok(match id {
            FormatId::Dense => return Err(FormatError::UnknownFormat("dense".to_string())),
            FormatId::Coo => FormatMatrix::Coo(m.clone()),
            FormatId::Csr => FormatMatrix::Csr(CsrMatrix::from_coo(m)),
            FormatId::Csc => FormatMatrix::Csc(CscMatrix::from_coo(m)),
            FormatId::Dia => FormatMatrix::Dia(DiaMatrix::from_coo(m)),
            FormatId::Jds => FormatMatrix::Jds(JdsMatrix::from_coo(m)),
            FormatId::Tjds => FormatMatrix::Tjds(TjdsMatrix::from_coo(m)),
        })
    }

    /// One instance per sparse layout, in [`FormatId::SPARSE`] order.
    pub fn build_all(m: &CooMatrix) -> Vec<FormatMatrix> {
        FormatId::SPARSE
            .into_iter()
            .map(|id| FormatMatrix::build(m, id).expect("sparse ids are convertible"))
            .collect()
    }

    pub fn format_id(&self) -> FormatId {
        match self {
            FormatMatrix::Coo(_) => FormatId::Coo,
            FormatMatrix::Csr(_) => FormatId::Csr,
            FormatMatrix::Csc(_) => FormatId::Csc,
            FormatMatrix::Dia(_) => FormatId::Dia,
            FormatMatrix::Jds(_) => FormatId::Jds,
            FormatMatrix::Tjds(_) => FormatId::Tjds,
        }
    }

    pub fn rows(&self) -> usize {
        match self {
            FormatMatrix::Coo(m) => m.rows(),
            FormatMatrix::Csr(m) => m.rows(),
            FormatMatrix::Csc(m) => m.rows(),
            FormatMatrix::Dia(m) => m.rows(),
            FormatMatrix::Jds(m) => m.rows(),
            FormatMatrix::Tjds(m) => m.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            FormatMatrix::Coo(m) => m.cols(),
            FormatMatrix::Csr(m) => m.cols(),
            FormatMatrix::Csc(m) => m.cols(),
            FormatMatrix::Dia(m) => m.cols(),
            FormatMatrix::Jds(m) => m.cols(),
            FormatMatrix::Tjds(m) => m.cols(),
        }
    }

    pub fn nnz(&self) -> usize {
        match self {
            FormatMatrix::Coo(m) => m.nnz(),
            FormatMatrix::Csr(m) => m.nnz(),
            FormatMatrix::Csc(m) => m.nnz(),
            FormatMatrix::Dia(m) => m.nnz(),
            FormatMatrix::Jds(m) => m.nnz(),
            FormatMatrix::Tjds(m) => m.nnz(),
        }
    }

    /// Array slots the layout occupies, as counted by the size model.
    pub fn element_count(&self) -> usize {
        match self {
            FormatMatrix::Coo(m) => m.element_count(),
            FormatMatrix::Csr(m) => m.element_count(),
            FormatMatrix::Csc(m) => m.element_count(),
            FormatMatrix::Dia(m) => m.element_count(),
            FormatMatrix::Jds(m) => m.element_count(),
            FormatMatrix::Tjds(m) => m.element_count(),
        }
    }

    /// Reconstructs the canonical coordinate matrix this layout stores.
    pub fn to_coo(&self) -> CooMatrix {
        match self {
            FormatMatrix::Coo(m) => m.clone(),
            FormatMatrix::Csr(m) => m.to_coo(),
            FormatMatrix::Csc(m) => m.to_coo(),
            FormatMatrix::Dia(m) => m.to_coo(),
            FormatMatrix::Jds(m) => m.to_coo(),
            FormatMatrix::Tjds(m) => m.to_coo(),
        }
    }

    pub fn spmv(&self, x: &[f64]) -> Result<Vec<f64>, SpmvError> {
        match self {
            FormatMatrix::Coo(m) => m.spmv(x),
            FormatMatrix::Csr(m) => m.spmv(x),
            FormatMatrix::Csc(m) => m.spmv(x),
            FormatMatrix::Dia(m) => m.spmv(x),
            FormatMatrix::Jds(m) => m.spmv(x),
            FormatMatrix::Tjds(m) => m.spmv(x),
        }
    }
}
