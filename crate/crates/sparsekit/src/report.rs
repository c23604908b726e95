//! Report assembly and rendering.
//!
//! Every command produces one [`Report`] that can be rendered either as
//! human-readable text (the default, laid out as matrix data, then the
//! analysis, then the suggestion) or serialized to JSON behind `--json`.
//! Both renderings carry the same values; the JSON field set is identical
//! on every run, with `null` for sections a command does not produce, so
//! downstream pipelines can rely on the schema.
//!
//! Percentages are printed to one decimal place, but classification always
//! happens on the unrounded values; displayed indices are 1-based while
//! everything internal stays 0-based.

use std::fmt::Write as _;

use serde::Serialize;

use crate::analyzer::DistributionProfile;
use crate::coo::CooMatrix;
use crate::formats::{FormatId, FormatMatrix};
use crate::recommender::Recommendation;
use crate::size_model::SizeReport;

/// Index width (bytes) used for the size table's bytes column.
pub const DEFAULT_INDEX_BYTES: u64 = 8;

#[derive(Debug, Clone, Serialize)]
pub struct MatrixSummary {
    pub rows: usize,
    pub cols: usize,
    pub nnz: usize,
    pub density_pct: f64,
}

impl MatrixSummary {
    pub fn of(m: &CooMatrix) -> Self {
        MatrixSummary {
            rows: m.rows(),
            cols: m.cols(),
            nnz: m.nnz(),
            density_pct: 100.0 * m.density(),
        }
    }
}

/// Modelled multiply op counts for the two layouts the model covers.
#[derive(Debug, Clone, Serialize)]
pub struct OpModelSection {
    pub dense_ops: u64,
    /// Absent when the matrix is empty (the COO formula needs Npr >= 1).
    pub coo_ops: Option<u64>,
    pub npr: Option<usize>,
    /// Set when rows are uneven, i.e. Npr is a rounded average rather than
    /// the exact per-row count the formula assumes.
    pub npr_approximate: bool,
}

impl OpModelSection {
    pub fn of(m: &CooMatrix) -> Self {
        let dense_ops = crate::spmv::op_count(FormatId::Dense, m.rows(), m.cols(), 0, 0)
            .expect("matrix dimensions are at least 1 x 1");
        if m.nnz() == 0 {
            return OpModelSection {
                dense_ops,
                coo_ops: None,
                npr: None,
                npr_approximate: false,
            };
        }
        let npr = ((m.nnz() as f64 / m.rows() as f64).round() as usize).max(1);
        let counts = m.row_counts();
        let npr_approximate = counts.iter().any(|&c| c != counts[0]);
        let coo_ops = crate::spmv::op_count(FormatId::Coo, m.rows(), m.cols(), m.nnz(), npr)
            .expect("npr is clamped to at least 1");
        OpModelSection {
            dense_ops,
            coo_ops: Some(coo_ops),
            npr: Some(npr),
            npr_approximate,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SizeSectionRow {
    pub format: FormatId,
    pub modelled: u64,
    pub measured: u64,
    pub value_slots: u64,
    pub index_slots: u64,
    pub bytes: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SizeSection {
    pub index_bytes: u64,
    pub rows: Vec<SizeSectionRow>,
    pub minimum: Vec<FormatId>,
    pub minimum_sparse: Vec<FormatId>,
}

impl SizeSection {
    pub fn of(report: &SizeReport, index_bytes: u64) -> Self {
        SizeSection {
            index_bytes,
            rows: report
                .rows
                .iter()
                .map(|r| SizeSectionRow {
                    format: r.format,
                    modelled: r.modelled,
                    measured: r.measured,
                    value_slots: r.value_slots,
                    index_slots: r.index_slots,
                    bytes: r.bytes(index_bytes),
                })
                .collect(),
            minimum: report.minimum_formats(),
            minimum_sparse: report.minimum_sparse_formats(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub kernel: FormatId,
    pub min_ns: u64,
    pub median_ns: u64,
    pub mean_ns: u64,
    /// The kernel's product matched the dense oracle before timing began.
    pub verified: bool,
    pub max_relative_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchSection {
    pub seed: u64,
    pub repetitions: usize,
    pub rows: Vec<BenchRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvertSection {
    pub format: FormatId,
    pub dump_path: String,
    pub market_path: String,
    /// The dumped arrays, keyed by their display names.
    pub arrays: serde_json::Value,
}

/// One command's full output.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub path: Option<String>,
    pub error: Option<String>,
    pub matrix: Option<MatrixSummary>,
    pub analysis: Option<DistributionProfile>,
    pub op_model: Option<OpModelSection>,
    pub sizes: Option<SizeSection>,
    pub recommendations: Vec<Recommendation>,
    pub objectives_disagree: Option<bool>,
    pub bench: Option<BenchSection>,
    pub convert: Option<ConvertSection>,
}

impl Report {
    pub fn new(command: &str, path: Option<String>) -> Self {
        Report {
            command: command.to_string(),
            path,
            error: None,
            matrix: None,
            analysis: None,
            op_model: None,
            sizes: None,
            recommendations: Vec::new(),
            objectives_disagree: None,
            bench: None,
            convert: None,
        }
    }

    /// A schema-complete report that carries only an error.
    pub fn error_report(command: &str, path: Option<String>, message: String) -> Self {
        let mut r = Report::new(command, path);
        r.error = Some(message);
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Renders the text view. `quiet` keeps only the essential lines.
    pub fn render_text(&self, quiet: bool) -> String {
        let mut out = String::new();
        if let Some(err) = &self.error {
            let _ = writeln!(out, "error: {err}");
            return out;
        }
        if let Some(m) = &self.matrix {
            let path = self.path.as_deref().unwrap_or("<memory>");
            let _ = writeln!(
                out,
                "matrix: {path} ({} x {}, nnz {}, density {:.1}%)",
                m.rows, m.cols, m.nnz, m.density_pct
            );
        }
        if let Some(a) = &self.analysis {
            if quiet {
                let _ = writeln!(
                    out,
                    "analysis: shape {}, dense rows {}, dense columns {}, diagonal density {}, randomness {}{}",
                    a.shape,
                    a.dense_row_level,
                    a.dense_col_level,
                    a.diag_level,
                    a.random_level,
                    if a.degenerate { ", degenerate" } else { "" }
                );
            } else {
                let _ = writeln!(out, "\nanalysis");
                let _ = writeln!(out, "  shape: {}", a.shape);
                let _ = writeln!(
                    out,
                    "  dense rows: {:.1}% ({}; {} of {} rows dense, {} of {} nonzeros)",
                    a.dense_row_pct,
                    a.dense_row_level,
                    a.dense_row_count,
                    a.rows,
                    a.dense_row_nonzeros,
                    a.nnz
                );
                let _ = writeln!(
                    out,
                    "  dense columns: {:.1}% ({}; {} of {} columns dense, {} of {} nonzeros)",
                    a.dense_col_pct,
                    a.dense_col_level,
                    a.dense_col_count,
                    a.cols,
                    a.dense_col_nonzeros,
                    a.nnz
                );
                let _ = writeln!(
                    out,
                    "  diagonal density: {:.1}% of diagonals nonzero ({}; {} of {})",
                    a.diag_pct, a.diag_level, a.nonzero_diagonals, a.possible_diagonals
                );
                match a.ideal_gap {
                    Some(gap) => {
                        let _ = writeln!(
                            out,
                            "  randomness: {:.1}% ideally random ({}; {} of {} nonzeros, ideal gap {gap})",
                            a.random_pct, a.random_level, a.ideally_random_count, a.nnz
                        );
                    }
                    None => {
                        let _ = writeln!(
                            out,
                            "  randomness: {:.1}% ideally random ({})",
                            a.random_pct, a.random_level
                        );
                    }
                }
                if a.degenerate {
                    let _ = writeln!(out, "  degenerate: yes (fewer than 2 nonzeros)");
                }
            }
        }
        if !quiet {
            if let Some(op) = &self.op_model {
                let _ = writeln!(out, "\nmultiply op model");
                let _ = writeln!(out, "  dense: {} ops", op.dense_ops);
                match (op.coo_ops, op.npr) {
                    (Some(ops), Some(npr)) => {
                        let note = if op.npr_approximate {
                            ", approximate: rows are uneven"
                        } else {
                            ""
                        };
                        let _ = writeln!(out, "  coo: {ops} ops (npr {npr}{note})");
                    }
                    _ => {
                        let _ = writeln!(out, "  coo: not modelled (empty matrix)");
                    }
                }
            }
            if let Some(s) = &self.sizes {
                let _ = writeln!(
                    out,
                    "\nsizes in elements (bytes at 8-byte values, {}-byte indices)",
                    s.index_bytes
                );
                let _ = writeln!(
                    out,
                    "  {:<6} {:>9} {:>9} {:>10}",
                    "format", "modelled", "measured", "bytes"
                );
                for row in &s.rows {
                    let _ = writeln!(
                        out,
                        "  {:<6} {:>9} {:>9} {:>10}",
                        row.format.id_str(),
                        row.modelled,
                        row.measured,
                        row.bytes
                    );
                }
                let _ = writeln!(
                    out,
                    "  minimum: {}; smallest sparse: {}",
                    join_formats(&s.minimum),
                    join_formats(&s.minimum_sparse)
                );
            }
        }
        for rec in &self.recommendations {
            if quiet {
                let _ = writeln!(
                    out,
                    "{}: {} ({})",
                    rec.objective, rec.format, rec.fired_rule
                );
                continue;
            }
            let _ = writeln!(out, "\nrecommendation ({}): {}", rec.objective, rec.format);
            match &rec.fallback {
                None => {
                    let _ = writeln!(
                        out,
                        "  rule {}: {} very high, {}",
                        rec.fired_rule,
                        rec.category.map(|c| c.to_string()).unwrap_or_default(),
                        rec.shape
                    );
                }
                Some(trace) => {
                    let levels = trace
                        .category_levels
                        .iter()
                        .map(|cl| format!("{} {}", cl.category, cl.level))
                        .collect::<Vec<_>>()
                        .join(", ");
                    match (&trace.applied_rule, rec.category, rec.level) {
                        (Some(rule), Some(category), Some(level)) => {
                            let _ = writeln!(
                                out,
                                "  fallback ({}): highest is {category} at {level}, applied rule {rule}",
                                trace.reason
                            );
                        }
                        _ => {
                            let _ = writeln!(
                                out,
                                "  fallback ({}): declared default for {}",
                                trace.reason, rec.objective
                            );
                        }
                    }
                    let _ = writeln!(out, "  category levels: {levels}");
                }
            }
            if let Some(check) = &rec.size_cross_check {
                let verdict = if check.agrees {
                    "the rule answer matches"
                } else {
                    "the rule answer differs"
                };
                let _ = writeln!(
                    out,
                    "  exact size minimum: {}; {verdict}",
                    join_formats(&check.exact_minimum)
                );
            }
        }
        if let Some(disagree) = self.objectives_disagree {
            if disagree && self.recommendations.len() == 2 {
                let _ = writeln!(
                    out,
                    "\nnote: the objectives disagree ({} {} vs {} {}); pick one at the cost of the other",
                    self.recommendations[0].objective,
                    self.recommendations[0].format,
                    self.recommendations[1].objective,
                    self.recommendations[1].format
                );
            } else if !quiet && self.recommendations.len() == 2 {
                let _ = writeln!(out, "\nnote: both objectives agree on {}", self.recommendations[0].format);
            }
        }
        if let Some(b) = &self.bench {
            if !quiet {
                let _ = writeln!(
                    out,
                    "\nbenchmark ({} repetitions, vector seed {})",
                    b.repetitions, b.seed
                );
            }
            let _ = writeln!(
                out,
                "  {:<6} {:>12} {:>12} {:>12}  verified",
                "kernel", "min", "median", "mean"
            );
            for row in &b.rows {
                let _ = writeln!(
                    out,
                    "  {:<6} {:>12} {:>12} {:>12}  {}",
                    row.kernel.id_str(),
                    format_ns(row.min_ns),
                    format_ns(row.median_ns),
                    format_ns(row.mean_ns),
                    if row.verified { "yes" } else { "NO" }
                );
            }
        }
        if let Some(c) = &self.convert {
            let _ = writeln!(
                out,
                "wrote {} dump to {} and a round-trip file to {}",
                c.format, c.dump_path, c.market_path
            );
        }
        out
    }
}

fn join_formats(formats: &[FormatId]) -> String {
    formats
        .iter()
        .map(|f| f.id_str().to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn format_ns(ns: u64) -> String {
    if ns < 10_000 {
        format!("{ns} ns")
    } else if ns < 10_000_000 {
        format!("{:.2} us", ns as f64 / 1_000.0)
    } else {
        format!("{:.2} ms", ns as f64 / 1_000_000.0)
    }
}

fn join_display<T: std::fmt::Display>(items: impl Iterator<Item = T>) -> String {
    items
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// The plain-text array dump written by the convert command. Indices and
/// pointers are displayed 1-based; diagonal offsets keep their sign.
pub fn format_dump(f: &FormatMatrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "format: {}", f.format_id().id_str());
    let _ = writeln!(out, "rows: {}", f.rows());
    let _ = writeln!(out, "cols: {}", f.cols());
    let _ = writeln!(out, "nnz: {}", f.nnz());
    let one_based = |s: &[usize]| join_display(s.iter().map(|v| v + 1));
    match f {
        FormatMatrix::Coo(m) => {
            let _ = writeln!(
                out,
                "Row index: {}",
                join_display(m.iter().map(|&(r, _, _)| r + 1))
            );
            let _ = writeln!(
                out,
                "Col index: {}",
                join_display(m.iter().map(|&(_, c, _)| c + 1))
            );
            let _ = writeln!(out, "Value: {}", join_display(m.iter().map(|&(_, _, v)| v)));
        }
        FormatMatrix::Csr(m) => {
            let _ = writeln!(out, "Value: {}", join_display(m.values().iter()));
            let _ = writeln!(out, "Col index: {}", one_based(m.col_indices()));
            let _ = writeln!(out, "Row ptr: {}", one_based(m.row_ptr()));
        }
        FormatMatrix::Csc(m) => {
            let _ = writeln!(out, "Value: {}", join_display(m.values().iter()));
            let _ = writeln!(out, "Row index: {}", one_based(m.row_indices()));
            let _ = writeln!(out, "Col ptr: {}", one_based(m.col_ptr()));
        }
        FormatMatrix::Dia(m) => {
            let _ = writeln!(out, "Offsets: {}", join_display(m.offsets().iter()));
            for (d, &k) in m.offsets().iter().enumerate() {
                let _ = writeln!(
                    out,
                    "Diagonal {k}: {}",
                    join_display(m.diagonal(d).iter())
                );
            }
        }
        FormatMatrix::Jds(m) => {
            let _ = writeln!(out, "Perm: {}", one_based(m.perm()));
            let _ = writeln!(out, "Value: {}", join_display(m.values().iter()));
            let _ = writeln!(out, "Col index: {}", one_based(m.col_indices()));
            let _ = writeln!(out, "Jd ptr: {}", one_based(m.jd_ptr()));
        }
        FormatMatrix::Tjds(m) => {
            let _ = writeln!(out, "Col order: {}", one_based(m.col_order()));
            let _ = writeln!(out, "Value: {}", join_display(m.values().iter()));
            let _ = writeln!(out, "Row index: {}", one_based(m.row_indices()));
            let _ = writeln!(out, "Tjd ptr: {}", one_based(m.tjd_ptr()));
        }
    }
    out
}

/// The same arrays as [`format_dump`], as JSON (1-based where displayed).
pub fn format_arrays_json(f: &FormatMatrix) -> serde_json::Value {
    use serde_json::json;
    let one_based = |s: &[usize]| s.iter().map(|v| v + 1).collect::<Vec<_>>();
    match f {
        FormatMatrix::Coo(m) => json!({
            "row_index": m.iter().map(|&(r, _, _)| r + 1).collect::<Vec<_>>(),
            "col_index": m.iter().map(|&(_, c, _)| c + 1).collect::<Vec<_>>(),
            "value": m.iter().map(|&(_, _, v)| v).collect::<Vec<_>>(),
        }),
        FormatMatrix::Csr(m) => json!({
            "value": m.values(),
            "col_index": one_based(m.col_indices()),
            "row_ptr": one_based(m.row_ptr()),
        }),
        FormatMatrix::Csc(m) => json!({
            "value": m.values(),
            "row_index": one_based(m.row_indices()),
            "col_ptr": one_based(m.col_ptr()),
        }),
        FormatMatrix::Dia(m) => json!({
            "offsets": m.offsets(),
            "diagonals": (0..m.num_diagonals())
                .map(|d| m.diagonal(d).to_vec())
                .collect::<Vec<_>>(),
        }),
        FormatMatrix::Jds(m) => json!({
            "perm": one_based(m.perm()),
            "value": m.values(),
            "col_index": one_based(m.col_indices()),
            "jd_ptr": one_based(m.jd_ptr()),
        }),
        FormatMatrix::Tjds(m) => json!({
            "col_order": one_based(m.col_order()),
            "value": m.values(),
            "row_index": one_based(m.row_indices()),
            "tjd_ptr": one_based(m.tjd_ptr()),
        }),
    }
}
