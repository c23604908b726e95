//! Nonzero distribution analysis.
//!
//! A matrix is profiled along four categories — dense rows, dense columns,
//! diagonal density, and randomness — each summarized as a percentage and
//! bucketed into one of five levels, plus the shape of the matrix. The
//! recommender consumes this profile; the analyzer itself never judges
//! which format is best.
//!
//! The category rules:
//!
//! * A row or column is *dense* when its nonzero count strictly exceeds
//!   half its length (compared exactly as `2 * count > length`). The
//!   category percentage is the share of all nonzeros lying in dense lines.
//! * *Diagonal density* is the share of the `M + N - 1` possible diagonals
//!   that hold at least one nonzero — and its level scale is inverted:
//!   few nonzero diagonals means the nonzeros are concentrated, which is
//!   the favorable, "very high" case.
//! * A nonzero is *ideally random* when its distance to the neighboring
//!   nonzero in its row and in its column both equal the ideal gap
//!   `g = round(1 / density)`. Boundary nonzeros (last in their line) use
//!   their predecessor; nonzeros alone in a line are never ideally random.
//!
//! Levels at bucket boundaries resolve to the higher-density level, so
//! exactly 50% dense-row mass is `VeryHigh` and exactly 15% nonzero
//! diagonals is still `VeryHigh` diagonal density.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::coo::CooMatrix;

/// Five-step intensity scale used by every category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    VeryLow,
    Low,
    Medium,
    High,
    VeryHigh,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Level::VeryLow => "very low",
            Level::Low => "low",
            Level::Medium => "medium",
            Level::High => "high",
            Level::VeryHigh => "very high",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Square,
    VerticallyRectangular,
    HorizontallyRectangular,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Shape::Square => "square",
            Shape::VerticallyRectangular => "vertically rectangular",
            Shape::HorizontallyRectangular => "horizontally rectangular",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Rows,
    Cols,
}

/// Everything the analyzer knows about one matrix.
#[derive(Debug, Clone, Serialize)]
pub struct DistributionProfile {
    pub rows: usize,
    pub cols: usize,
    pub nnz: usize,
    pub shape: Shape,

    pub dense_row_pct: f64,
    pub dense_row_level: Level,
    /// How many rows pass the dense-line test.
    pub dense_row_count: usize,
    /// How many nonzeros lie in those rows.
    pub dense_row_nonzeros: usize,

    pub dense_col_pct: f64,
    pub dense_col_level: Level,
    pub dense_col_count: usize,
    pub dense_col_nonzeros: usize,

    pub diag_pct: f64,
    pub diag_level: Level,
    /// NZD: diagonals holding at least one nonzero.
    pub nonzero_diagonals: usize,
    /// `rows + cols - 1`.
    pub possible_diagonals: usize,

    pub random_pct: f64,
    pub random_level: Level,
    pub ideally_random_count: usize,
    /// `round(1 / density)`, absent for degenerate matrices.
    pub ideal_gap: Option<usize>,

    /// Set when the matrix has fewer than two nonzeros, where the
    /// randomness criterion (and for empty matrices, every category) has
    /// no meaningful value. Such profiles report the lowest levels instead
    /// of failing.
    pub degenerate: bool,
}

pub fn classify_shape(rows: usize, cols: usize) -> Shape {
    debug_assert!(rows >= 1 && cols >= 1);
    if rows == cols {
        Shape::Square
    } else if cols > rows {
        Shape::HorizontallyRectangular
    } else {
        Shape::VerticallyRectangular
    }
}

fn dense_level(pct: f64) -> Level {
    if pct >= 50.0 {
        Level::VeryHigh
    } else if pct >= 35.0 {
        Level::High
    } else if pct >= 25.0 {
        Level::Medium
    } else if pct >= 15.0 {
        Level::Low
    } else {
        Level::VeryLow
    }
}

/// Inverted scale: fewer nonzero diagonals, higher diagonal density.
fn diagonal_level(pct: f64) -> Level {
    if pct <= 15.0 {
        Level::VeryHigh
    } else if pct <= 30.0 {
        Level::High
    } else if pct <= 45.0 {
        Level::Medium
    } else if pct <= 60.0 {
        Level::Low
    } else {
        Level::VeryLow
    }
}

fn randomness_level(pct: f64) -> Level {
    if pct >= 75.0 {
        Level::VeryHigh
    } else if pct >= 60.0 {
        Level::High
    } else if pct >= 50.0 {
        Level::Medium
    } else if pct >= 40.0 {
        Level::Low
    } else {
        Level::VeryLow
    }
}

struct DenseLineStats {
    pct: f64,
    level: Level,
    dense_lines: usize,
    nonzeros_in_dense_lines: usize,
}

fn dense_line_stats(m: &CooMatrix, axis: Axis) -> DenseLineStats {
    let (counts, line_len) = match axis {
        Axis::Rows => (m.row_counts(), m.cols()),
        Axis::Cols => (m.col_counts(), m.rows()),
    };
    let mut dense_lines = 0usize;
    let mut covered = 0usize;
    for &count in &counts {
        // Exact rational comparison: count > line_len / 2.
        if 2 * count > line_len {
            dense_lines += 1;
            covered += count;
        }
    }
    let pct = if m.nnz() == 0 {
        0.0
    } else {
        100.0 * covered as f64 / m.nnz() as f64
    };
    DenseLineStats {
        pct,
        level: dense_level(pct),
        dense_lines,
        nonzeros_in_dense_lines: covered,
    }
}

/// Share of nonzeros lying in dense lines along the given axis, with its
/// level. An empty matrix reports `(0.0, VeryLow)`.
pub fn dense_line_percentage(m: &CooMatrix, axis: Axis) -> (f64, Level) {
    let stats = dense_line_stats(m, axis);
    (stats.pct, stats.level)
}

fn count_nonzero_diagonals(m: &CooMatrix) -> usize {
    let mut seen = vec![false; m.rows() + m.cols() - 1];
    let mut nzd = 0usize;
    for &(r, c, _) in m.entries() {
        let d = c + m.rows() - 1 - r;
        if !seen[d] {
            seen[d] = true;
            nzd += 1;
        }
    }
    nzd
}

/// Share of the `M + N - 1` possible diagonals that hold a nonzero, with
/// its (inverted) level. An empty matrix reports `(0.0, VeryLow)` rather
/// than the `VeryHigh` its zero percentage would otherwise bucket into.
pub fn diagonal_density(m: &CooMatrix) -> (f64, Level) {
    if m.nnz() == 0 {
        return (0.0, Level::VeryLow);
    }
    let nzd = count_nonzero_diagonals(m);
    let pct = 100.0 * nzd as f64 / (m.rows() + m.cols() - 1) as f64;
    (pct, diagonal_level(pct))
}

struct RandomnessStats {
    pct: f64,
    level: Level,
    ideally_random: usize,
    ideal_gap: Option<usize>,
}

fn randomness_stats(m: &CooMatrix) -> RandomnessStats {
    if m.nnz() < 2 {
        return RandomnessStats {
            pct: 0.0,
            level: Level::VeryLow,
            ideally_random: 0,
            ideal_gap: None,
        };
    }
    let gap = (1.0 / m.density()).round().max(1.0) as usize;

    let mut row_lists: Vec<Vec<usize>> = vec![Vec::new(); m.rows()];
    let mut col_lists: Vec<Vec<usize>> = vec![Vec::new(); m.cols()];
    for &(r, c, _) in m.entries() {
        row_lists[r].push(c);
        col_lists[c].push(r);
    }

    // Gap to the successor in the same line; the last nonzero of a line
    // falls back to its predecessor. Lines with a single nonzero yield no
    // gap at all.
    fn line_gaps(lists: &[Vec<usize>], gaps: &mut HashMap<(usize, usize), usize>, by_row: bool) {
        for (line, list) in lists.iter().enumerate() {
            if list.len() < 2 {
                continue;
            }
            for (i, &pos) in list.iter().enumerate() {
                let gap = if i + 1 < list.len() {
                    list[i + 1] - pos
                } else {
                    pos - list[i - 1]
                };
                let key = if by_row { (line, pos) } else { (pos, line) };
                gaps.insert(key, gap);
            }
        }
    }
    let mut row_gaps = HashMap::new();
    let mut col_gaps = HashMap::new();
    line_gaps(&row_lists, &mut row_gaps, true);
    line_gaps(&col_lists, &mut col_gaps, false);

    let ideally_random = m
        .iter()
        .filter(|&&(r, c, _)| {
            row_gaps.get(&(r, c)) == Some(&gap) && col_gaps.get(&(r, c)) == Some(&gap)
        })
        .count();
    let pct = 100.0 * ideally_random as f64 / m.nnz() as f64;
    RandomnessStats {
        pct,
        level: randomness_level(pct),
        ideally_random,
        ideal_gap: Some(gap),
    }
}

/// Share of nonzeros whose row and column gaps both equal the ideal gap,
/// with its level. Matrices with fewer than two nonzeros report
/// `(0.0, VeryLow)`.
pub fn randomness_percentage(m: &CooMatrix) -> (f64, Level) {
    let stats = randomness_stats(m);
    (stats.pct, stats.level)
}

/// Computes the full distribution profile of a matrix. Pure: equal inputs
/// produce identical profiles.
pub fn analyze(m: &CooMatrix) -> DistributionProfile {
    let row_stats = dense_line_stats(m, Axis::Rows);
    let col_stats = dense_line_stats(m, Axis::Cols);
    let (diag_pct, diag_level) = diagonal_density(m);
    let random = randomness_stats(m);
    let nzd = if m.nnz() == 0 {
        0
    } else {
        count_nonzero_diagonals(m)
    };
    DistributionProfile {
        rows: m.rows(),
        cols: m.cols(),
        nnz: m.nnz(),
        shape: classify_shape(m.rows(), m.cols()),
        dense_row_pct: row_stats.pct,
        dense_row_level: row_stats.level,
        dense_row_count: row_stats.dense_lines,
        dense_row_nonzeros: row_stats.nonzeros_in_dense_lines,
        dense_col_pct: col_stats.pct,
        dense_col_level: col_stats.level,
        dense_col_count: col_stats.dense_lines,
        dense_col_nonzeros: col_stats.nonzeros_in_dense_lines,
        diag_pct,
        diag_level,
        nonzero_diagonals: nzd,
        possible_diagonals: m.rows() + m.cols() - 1,
        random_pct: random.pct,
        random_level: random.level,
        ideally_random_count: random.ideally_random,
        ideal_gap: random.ideal_gap,
        degenerate: m.nnz() < 2,
    }
}
