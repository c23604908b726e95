//! Matrix Market coordinate file reader and writer.
//!
//! Reads `%%MatrixMarket matrix coordinate <real|integer|pattern>
//! <general|symmetric>` files: comments and blank lines are skipped, a size
//! line `M N NNZ` follows the header, then `NNZ` entry lines with 1-based
//! indices. Symmetric inputs are expanded to full (general) storage by
//! mirroring every off-diagonal entry; pattern entries receive the value
//! `1.0`; integer values are widened to `f64`. Duplicate coordinates are
//! summed and explicit zeros dropped by the assembler.
//!
//! Dense (`array`) Matrix Market files are rejected: the toolkit's subject
//! is sparse data. Every parse error carries the 1-based line number it was
//! found on.
//!
//! The writer emits `real general` with entries sorted row-major and values
//! in the shortest decimal form that round-trips, so
//! `read(write(m)) == m` exactly.

use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use crate::coo::{CooError, CooMatrix};

#[derive(Debug)]
pub enum MarketError {
    Io(io::Error),
    /// First line is not a recognizable MatrixMarket banner.
    MalformedHeader { line: usize, reason: String },
    /// The file declares a layout other than `coordinate` (e.g. `array`).
    UnsupportedLayout { line: usize, found: String },
    /// The value field is not `real`, `integer`, or `pattern`.
    UnsupportedField { line: usize, found: String },
    /// The symmetry qualifier is not `general` or `symmetric`.
    UnsupportedSymmetry { line: usize, found: String },
    /// No `M N NNZ` size line before end of file.
    MissingSizeLine { line: usize },
    BadSizeLine { line: usize, reason: String },
    /// An entry line with the wrong shape or an unparsable index.
    BadEntry { line: usize, reason: String },
    /// A value token that does not parse to a finite number.
    BadValue { line: usize, token: String },
    /// A 1-based entry index outside the declared size.
    IndexOutOfBounds {
        line: usize,
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    /// More entry lines than the size line declared.
    TooManyEntries { line: usize, declared: usize },
    /// Fewer entry lines than the size line declared.
    TooFewEntries {
        line: usize,
        declared: usize,
        found: usize,
    },
    Assembly(CooError),
}

impl fmt::Display for MarketError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MarketError::Io(e) => write!(f, "i/o error: {e}"),
            MarketError::MalformedHeader { line, reason } => {
                write!(f, "line {line}: malformed MatrixMarket header: {reason}")
            }
            MarketError::UnsupportedLayout { line, found } => write!(
                f,
                "line {line}: unsupported layout '{found}' (only 'coordinate' is accepted; \
                 dense 'array' files are not sparse input)"
            ),
            MarketError::UnsupportedField { line, found } => write!(
                f,
                "line {line}: unsupported value field '{found}' (expected real, integer, or pattern)"
            ),
            MarketError::UnsupportedSymmetry { line, found } => write!(
                f,
                "line {line}: unsupported symmetry '{found}' (expected general or symmetric)"
            ),
            MarketError::MissingSizeLine { line } => {
                write!(f, "line {line}: missing 'M N NNZ' size line")
            }
            MarketError::BadSizeLine { line, reason } => {
                write!(f, "line {line}: bad size line: {reason}")
            }
            MarketError::BadEntry { line, reason } => {
                write!(f, "line {line}: bad entry: {reason}")
            }
            MarketError::BadValue { line, token } => {
                write!(f, "line {line}: value '{token}' is not a finite number")
            }
            MarketError::IndexOutOfBounds {
                line,
                row,
                col,
                rows,
                cols,
            } => write!(
                f,
                "line {line}: entry ({row}, {col}) is outside the declared {rows} x {cols} size"
            ),
            MarketError::TooManyEntries { line, declared } => {
                write!(f, "line {line}: more than the declared {declared} entries")
            }
            MarketError::TooFewEntries {
                line,
                declared,
                found,
            } => write!(
                f,
                "line {line}: expected {declared} entries but the file ends after {found}"
            ),
            MarketError::Assembly(e) => write!(f, "assembly failed: {e}"),
        }
    }
}

impl std::error::Error for MarketError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            MarketError::Io(e) => Some(e),
            MarketError::Assembly(e) => Some(e),
            _ => None,
        }
    }
}

impl From<io::Error> for MarketError {
    fn from(e: io::Error) -> Self {
        MarketError::Io(e)
    }
}

impl From<CooError> for MarketError {
    fn from(e: CooError) -> Self {
        MarketError::Assembly(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum ValueField {
    Real,
    Integer,
    Pattern,
}

struct Header {
    field: ValueField,
    symmetric: bool,
}

fn parse_header(line: &str, lineno: usize) -> Result<Header, MarketError> {
    let mut tokens = line.split_whitespace();
    match tokens.next() {
        Some(t) if t.eq_ignore_ascii_case("%%MatrixMarket") => {}
        _ => {
            return Err(MarketError::MalformedHeader {
                line: lineno,
                reason: "first line must start with '%%MatrixMarket'".into(),
            })
        }
    }
    match tokens.next() {
        Some(t) if t.eq_ignore_ascii_case("matrix") => {}
        other => {
            return Err(MarketError::MalformedHeader {
                line: lineno,
                reason: format!(
                    "expected object 'matrix', found '{}'",
                    other.unwrap_or("<end of line>")
                ),
            })
        }
    }
    match tokens.next() {
        Some(t) if t.eq_ignore_ascii_case("coordinate") => {}
        Some(other) => {
            return Err(MarketError::UnsupportedLayout {
                line: lineno,
                found: other.to_string(),
            })
        }
        None => {
            return Err(MarketError::MalformedHeader {
                line: lineno,
                reason: "missing layout token".into(),
            })
        }
    }
    let field = match tokens.next() {
        Some(t) if t.eq_ignore_ascii_case("real") => ValueField::Real,
        Some(t) if t.eq_ignore_ascii_case("integer") => ValueField::Integer,
        Some(t) if t.eq_ignore_ascii_case("pattern") => ValueField::Pattern,
        Some(other) => {
            return Err(MarketError::UnsupportedField {
                line: lineno,
                found: other.to_string(),
            })
        }
        None => {
            return Err(MarketError::MalformedHeader {
                line: lineno,
                reason: "missing value field token".into(),
            })
        }
    };
    let symmetric = match tokens.next() {
        Some(t) if t.eq_ignore_ascii_case("general") => false,
        Some(t) if t.eq_ignore_ascii_case("symmetric") => true,
        Some(other) => {
            return Err(MarketError::UnsupportedSymmetry {
                line: lineno,
                found: other.to_string(),
            })
        }
        None => {
            return Err(MarketError::MalformedHeader {
                line: lineno,
                reason: "missing symmetry token".into(),
            })
        }
    };
    Ok(Header { field, symmetric })
}

fn parse_size_line(line: &str, lineno: usize) -> Result<(usize, usize, usize), MarketError> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() != 3 {
        return Err(MarketError::BadSizeLine {
            line: lineno,
            reason: format!("expected 'M N NNZ', found {} token(s)", tokens.len()),
        });
    }
    let parse = |tok: &str, what: &str| {
        tok.parse::<usize>().map_err(|_| MarketError::BadSizeLine {
            line: lineno,
            reason: format!("{what} '{tok}' is not a nonnegative integer"),
        })
    };
    let m = parse(tokens[0], "row count")?;
    let n = parse(tokens[1], "column count")?;
    let nnz = parse(tokens[2], "entry count")?;
    if m == 0 || n == 0 {
        return Err(MarketError::BadSizeLine {
            line: lineno,
            reason: "dimensions must be at least 1 x 1".into(),
        });
    }
    Ok((m, n, nnz))
}

/// Reads a Matrix Market coordinate stream into a [`CooMatrix`].
pub fn read_matrix_market<R: BufRead>(reader: R) -> Result<CooMatrix, MarketError> {
    let mut lines = reader.lines();
    let mut lineno = 0usize;

    let header_line = match lines.next() {
        Some(line) => {
            lineno += 1;
            line?
        }
        None => {
            return Err(MarketError::MalformedHeader {
                line: 1,
                reason: "empty input".into(),
            })
        }
    };
    let header = parse_header(&header_line, lineno)?;

    // Size line: first line after the header that is neither blank nor a
    // '%' comment.
    let mut size = None;
    for line in lines.by_ref() {
        lineno += 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        size = Some(parse_size_line(trimmed, lineno)?);
        break;
    }
    let (rows, cols, declared) = match size {
        Some(s) => s,
        None => return Err(MarketError::MissingSizeLine { line: lineno + 1 }),
    };

    let mut triplets: Vec<(usize, usize, f64)> = Vec::with_capacity(declared);
    let mut found = 0usize;
    for line in lines {
        lineno += 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        if found == declared {
            return Err(MarketError::TooManyEntries {
                line: lineno,
                declared,
            });
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let expected_tokens = match header.field {
            ValueField::Pattern => 2,
            _ => 3,
        };
        if tokens.len() != expected_tokens {
            return Err(MarketError::BadEntry {
                line: lineno,
                reason: format!(
                    "expected {expected_tokens} token(s), found {}",
                    tokens.len()
                ),
            });
        }
        let parse_index = |tok: &str, what: &str| {
            tok.parse::<usize>().map_err(|_| MarketError::BadEntry {
                line: lineno,
                reason: format!("{what} '{tok}' is not a positive integer"),
            })
        };
        let i = parse_index(tokens[0], "row index")?;
        let j = parse_index(tokens[1], "column index")?;
        if i == 0 || j == 0 {
            return Err(MarketError::BadEntry {
                line: lineno,
                reason: "indices are 1-based; 0 is not a valid index".into(),
            });
        }
        if i > rows || j > cols {
            return Err(MarketError::IndexOutOfBounds {
                line: lineno,
                row: i,
                col: j,
                rows,
                cols,
            });
        }
        let value = match header.field {
            ValueField::Pattern => 1.0,
            _ => {
                let tok = tokens[2];
                let v: f64 = tok.parse().map_err(|_| MarketError::BadValue {
                    line: lineno,
                    token: tok.to_string(),
                })?;
                if !v.is_finite() {
                    return Err(MarketError::BadValue {
                        line: lineno,
                        token: tok.to_string(),
                    });
                }
                v
            }
        };
        found += 1;
        let (r, c) = (i - 1, j - 1);
        triplets.push((r, c, value));
        if header.symmetric && r != c {
            triplets.push((c, r, value));
        }
    }
    if found < declared {
        return Err(MarketError::TooFewEntries {
            line: lineno,
            declared,
            found,
        });
    }
    Ok(CooMatrix::from_triplets(rows, cols, triplets)?)
}

/// Reads a Matrix Market coordinate file from a string.
pub fn read_matrix_market_str(text: &str) -> Result<CooMatrix, MarketError> {
    read_matrix_market(text.as_bytes())
}

/// Reads a Matrix Market coordinate file from disk.
pub fn read_matrix_market_file<P: AsRef<Path>>(path: P) -> Result<CooMatrix, MarketError> {
    let file = File::open(path)?;
    read_matrix_market(BufReader::new(file))
}

/// Writes `m` as `%%MatrixMarket matrix coordinate real general`.
pub fn write_matrix_market<W: Write>(mut w: W, m: &CooMatrix) -> io::Result<()> {
    writeln!(w, "%%MatrixMarket matrix coordinate real general")?;
    writeln!(w, "{} {} {}", m.rows(), m.cols(), m.nnz())?;
    for &(r, c, v) in m.entries() {
        // `{}` on f64 is the shortest decimal that parses back exactly.
        writeln!(w, "{} {} {}", r + 1, c + 1, v)?;
    }
    Ok(())
}

/// [`write_matrix_market`] into a fresh `String`.
pub fn write_matrix_market_string(m: &CooMatrix) -> String {
    let mut buf = Vec::new();
    write_matrix_market(&mut buf, m).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("matrix market output is ASCII")
}
