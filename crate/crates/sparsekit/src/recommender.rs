//! Rule-based format recommendation.
//!
//! Two rule tables — one per objective — map a distribution profile to a
//! storage format. A rule fires only on a category at `VeryHigh`; when
//! several categories reach `VeryHigh` at once, precedence is diagonal
//! density, then dense rows, then dense columns, then randomness: the more
//! structured the pattern, the more specialized the format, with
//! randomness as the catch-all.
//!
//! Below `VeryHigh` the tables say nothing, so an explicit fallback ladder
//! takes over: the highest-level category's rule is applied as if it were
//! `VeryHigh` (precedence breaking ties), and when everything is `VeryLow`
//! or the matrix is degenerate, the defaults are CSR for speed and the
//! exact element-count minimum for size. Every recommendation records
//! which rule fired or the full fallback trace, and size recommendations
//! carry a cross-check against the exact minimum rather than silently
//! overriding the rule.

use std::fmt;

use serde::Serialize;

use crate::analyzer::{analyze, DistributionProfile, Level, Shape};
use crate::coo::CooMatrix;
use crate::formats::FormatId;
use crate::size_model::{size_report, SizeModelError, SizeReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Speed,
    Size,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Speed => "speed",
            Objective::Size => "size",
        })
    }
}

/// The four distribution categories, in precedence order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    DiagonalDensity,
    DenseRows,
    DenseCols,
    Randomness,
}

impl Category {
    pub const IN_PRECEDENCE: [Category; 4] = [
        Category::DiagonalDensity,
        Category::DenseRows,
        Category::DenseCols,
        Category::Randomness,
    ];
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::DiagonalDensity => "diagonal density",
            Category::DenseRows => "dense rows",
            Category::DenseCols => "dense columns",
            Category::Randomness => "randomness",
        })
    }
}

struct Rule {
    index: usize,
    category: Category,
    shapes: &'static [Shape],
    format: FormatId,
}

const ANY_SHAPE: &[Shape] = &[
    Shape::Square,
    Shape::VerticallyRectangular,
    Shape::HorizontallyRectangular,
];
const SQUARE_OR_VERTICAL: &[Shape] = &[Shape::Square, Shape::VerticallyRectangular];
const SQUARE_OR_HORIZONTAL: &[Shape] = &[Shape::Square, Shape::HorizontallyRectangular];
const HORIZONTAL: &[Shape] = &[Shape::HorizontallyRectangular];
const VERTICAL: &[Shape] = &[Shape::VerticallyRectangular];

/// Formats that process well per distribution.
const SPEED_RULES: &[Rule] = &[
    Rule { index: 1, category: Category::DiagonalDensity, shapes: ANY_SHAPE, format: FormatId::Dia },
    Rule { index: 2, category: Category::DenseRows, shapes: SQUARE_OR_VERTICAL, format: FormatId::Csr },
    Rule { index: 3, category: Category::DenseCols, shapes: SQUARE_OR_VERTICAL, format: FormatId::Jds },
    Rule { index: 4, category: Category::Randomness, shapes: ANY_SHAPE, format: FormatId::Tjds },
    Rule { index: 5, category: Category::DenseRows, shapes: HORIZONTAL, format: FormatId::Tjds },
    Rule { index: 6, category: Category::DenseCols, shapes: HORIZONTAL, format: FormatId::Csc },
];

/// Formats that store small per distribution.
const SIZE_RULES: &[Rule] = &[
    Rule { index: 1, category: Category::DiagonalDensity, shapes: ANY_SHAPE, format: FormatId::Dia },
    Rule { index: 2, category: Category::Randomness, shapes: ANY_SHAPE, format: FormatId::Tjds },
    Rule { index: 3, category: Category::DenseRows, shapes: SQUARE_OR_HORIZONTAL, format: FormatId::Csr },
    Rule { index: 4, category: Category::DenseRows, shapes: VERTICAL, format: FormatId::Csc },
    Rule { index: 5, category: Category::DenseCols, shapes: SQUARE_OR_VERTICAL, format: FormatId::Csc },
    Rule { index: 6, category: Category::DenseCols, shapes: HORIZONTAL, format: FormatId::Jds },
];

fn rules_for(objective: Objective) -> &'static [Rule] {
    match objective {
        Objective::Speed => SPEED_RULES,
        Objective::Size => SIZE_RULES,
    }
}

fn find_rule(objective: Objective, category: Category, shape: Shape) -> &'static Rule {
    rules_for(objective)
        .iter()
        .find(|r| r.category == category && r.shapes.contains(&shape))
        .expect("every (category, shape) pair has a table row")
}

fn rule_id(objective: Objective, index: usize) -> String {
    format!("{objective}-{index}")
}

/// Why the fallback path ran instead of a table rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FallbackReason {
    /// Some category stands out, just not at `VeryHigh`.
    NoVeryHighCategory,
    /// Nothing stands out at all.
    AllVeryLow,
    /// Fewer than two nonzeros; the analysis is not meaningful.
    Degenerate,
}

impl fmt::Display for FallbackReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FallbackReason::NoVeryHighCategory => "no category at very high",
            FallbackReason::AllVeryLow => "all categories very low",
            FallbackReason::Degenerate => "degenerate matrix",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CategoryLevel {
    pub category: Category,
    pub level: Level,
}

/// Full record of a fallback decision.
#[derive(Debug, Clone, Serialize)]
pub struct FallbackTrace {
    pub reason: FallbackReason,
    /// The table row applied as if its category were `VeryHigh`, when one
    /// was.
    pub applied_rule: Option<String>,
    /// Every category with its observed level, in precedence order.
    pub category_levels: Vec<CategoryLevel>,
}

/// The exact size-model minimum alongside the rule-based answer.
#[derive(Debug, Clone, Serialize)]
pub struct SizeCrossCheck {
    /// Smallest sparse layout(s) by exact element count.
    pub exact_minimum: Vec<FormatId>,
    /// Whether the recommended format is among them.
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Recommendation {
    pub objective: Objective,
    pub format: FormatId,
    /// `"speed-3"`-style table row id, or `"fallback"`.
    pub fired_rule: String,
    /// The category the decision rested on, if any.
    pub category: Option<Category>,
    pub level: Option<Level>,
    pub shape: Shape,
    pub fallback: Option<FallbackTrace>,
    /// Present for the size objective.
    pub size_cross_check: Option<SizeCrossCheck>,
}

fn category_level(profile: &DistributionProfile, category: Category) -> Level {
    match category {
        Category::DiagonalDensity => profile.diag_level,
        Category::DenseRows => profile.dense_row_level,
        Category::DenseCols => profile.dense_col_level,
        Category::Randomness => profile.random_level,
    }
}

fn category_levels(profile: &DistributionProfile) -> Vec<CategoryLevel> {
    Category::IN_PRECEDENCE
        .into_iter()
        .map(|category| CategoryLevel {
            category,
            level: category_level(profile, category),
        })
        .collect()
}

/// Analyzes and sizes `m`, then recommends a format for the objective.
pub fn recommend(m: &CooMatrix, objective: Objective) -> Result<Recommendation, SizeModelError> {
    let profile = analyze(m);
    let sizes = size_report(m)?;
    Ok(recommend_with(&profile, &sizes, objective))
}

/// Recommends from an existing profile and size report. Total: every
/// profile, including degenerate ones, yields a format.
pub fn recommend_with(
    profile: &DistributionProfile,
    sizes: &SizeReport,
    objective: Objective,
) -> Recommendation {
    let cross_check = |format: FormatId| match objective {
        Objective::Size => {
            let exact_minimum = sizes.minimum_sparse_formats();
            let agrees = exact_minimum.contains(&format);
            Some(SizeCrossCheck {
                exact_minimum,
                agrees,
            })
        }
        Objective::Speed => None,
    };

    // Table rules consider only categories at VeryHigh, highest-precedence
    // first.
    for category in Category::IN_PRECEDENCE {
        if category_level(profile, category) == Level::VeryHigh {
            let rule = find_rule(objective, category, profile.shape);
            return Recommendation {
                objective,
                format: rule.format,
                fired_rule: rule_id(objective, rule.index),
                category: Some(category),
                level: Some(Level::VeryHigh),
                shape: profile.shape,
                fallback: None,
                size_cross_check: cross_check(rule.format),
            };
        }
    }

    // Fallback ladder. A degenerate matrix skips it: one or two nonzeros
    // reaching "high" in some category is not a signal worth following.
    let levels = category_levels(profile);
    // Strictly-greater comparison keeps the earliest category on level
    // ties, which is the precedence order.
    let mut best = levels[0].clone();
    for cl in &levels[1..] {
        if cl.level > best.level {
            best = cl.clone();
        }
    }
    if profile.degenerate || best.level == Level::VeryLow {
        let reason = if profile.degenerate {
            FallbackReason::Degenerate
        } else {
            FallbackReason::AllVeryLow
        };
        let format = match objective {
            Objective::Speed => FormatId::Csr,
            Objective::Size => sizes.minimum_sparse_formats()[0],
        };
        return Recommendation {
            objective,
            format,
            fired_rule: "fallback".to_string(),
            category: None,
            level: None,
            shape: profile.shape,
            fallback: Some(FallbackTrace {
                reason,
                applied_rule: None,
                category_levels: levels,
            }),
            size_cross_check: cross_check(format),
        };
    }
    let rule = find_rule(objective, best.category, profile.shape);
    Recommendation {
        objective,
        format: rule.format,
        fired_rule: "fallback".to_string(),
        category: Some(best.category),
        level: Some(best.level),
        shape: profile.shape,
        fallback: Some(FallbackTrace {
            reason: FallbackReason::NoVeryHighCategory,
            applied_rule: Some(rule_id(objective, rule.index)),
            category_levels: levels,
        }),
        size_cross_check: cross_check(rule.format),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{generate_pattern, PatternKind};
    use crate::testutil::demo_matrix;

    fn profile_with(
        shape: Shape,
        diag: Level,
        rows: Level,
        cols: Level,
        random: Level,
    ) -> DistributionProfile {
        let mut p = analyze(&demo_matrix());
        p.shape = shape;
        p.diag_level = diag;
        p.dense_row_level = rows;
        p.dense_col_level = cols;
        p.random_level = random;
        p.degenerate = false;
        p
    }

    fn sizes_of(m: &CooMatrix) -> SizeReport {
        size_report(m).unwrap()
    }

    #[test]
    fn every_table_row_is_reachable() {
        use FormatId::*;
        use Level::{VeryHigh as VH, VeryLow as VL};
        let square = Shape::Square;
        let vertical = Shape::VerticallyRectangular;
        let horizontal = Shape::HorizontallyRectangular;
        let cases: &[(Objective, Shape, [Level; 4], FormatId, &str)] = &[
            // (objective, shape, [diag, rows, cols, random], format, rule)
            (Objective::Speed, square, [VH, VL, VL, VL], Dia, "speed-1"),
            (Objective::Speed, square, [VL, VH, VL, VL], Csr, "speed-2"),
            (Objective::Speed, vertical, [VL, VH, VL, VL], Csr, "speed-2"),
            (Objective::Speed, square, [VL, VL, VH, VL], Jds, "speed-3"),
            (Objective::Speed, vertical, [VL, VL, VH, VL], Jds, "speed-3"),
            (Objective::Speed, horizontal, [VL, VL, VL, VH], Tjds, "speed-4"),
            (Objective::Speed, horizontal, [VL, VH, VL, VL], Tjds, "speed-5"),
            (Objective::Speed, horizontal, [VL, VL, VH, VL], Csc, "speed-6"),
            (Objective::Size, vertical, [VH, VL, VL, VL], Dia, "size-1"),
            (Objective::Size, square, [VL, VL, VL, VH], Tjds, "size-2"),
            (Objective::Size, square, [VL, VH, VL, VL], Csr, "size-3"),
            (Objective::Size, horizontal, [VL, VH, VL, VL], Csr, "size-3"),
            (Objective::Size, vertical, [VL, VH, VL, VL], Csc, "size-4"),
            (Objective::Size, square, [VL, VL, VH, VL], Csc, "size-5"),
            (Objective::Size, vertical, [VL, VL, VH, VL], Csc, "size-5"),
            (Objective::Size, horizontal, [VL, VL, VH, VL], Jds, "size-6"),
        ];
        let sizes = sizes_of(&demo_matrix());
        for &(objective, shape, [d, r, c, x], format, rule) in cases {
            let profile = profile_with(shape, d, r, c, x);
            let rec = recommend_with(&profile, &sizes, objective);
            assert_eq!(rec.format, format, "{rule}");
            assert_eq!(rec.fired_rule, rule);
            assert!(rec.fallback.is_none());
        }
    }

    #[test]
    fn precedence_orders_simultaneous_very_highs() {
        let sizes = sizes_of(&demo_matrix());
        use Level::VeryHigh as VH;
        // Diagonal beats dense rows.
        let p = profile_with(Shape::Square, VH, VH, VH, VH);
        let rec = recommend_with(&p, &sizes, Objective::Speed);
        assert_eq!(rec.format, FormatId::Dia);
        assert_eq!(rec.fired_rule, "speed-1");
        // Dense rows beat dense columns and randomness.
        let p = profile_with(Shape::Square, Level::VeryLow, VH, VH, VH);
        let rec = recommend_with(&p, &sizes, Objective::Speed);
        assert_eq!(rec.format, FormatId::Csr);
        // Dense columns beat randomness.
        let p = profile_with(Shape::Square, Level::VeryLow, Level::VeryLow, VH, VH);
        let rec = recommend_with(&p, &sizes, Objective::Speed);
        assert_eq!(rec.format, FormatId::Jds);
    }

    #[test]
    fn identity_matrix_recommends_dia_for_both_objectives() {
        let m = generate_pattern(PatternKind::Identity, 7, 7).unwrap();
        let speed = recommend(&m, Objective::Speed).unwrap();
        assert_eq!(speed.format, FormatId::Dia);
        assert_eq!(speed.fired_rule, "speed-1");
        let size = recommend(&m, Objective::Size).unwrap();
        assert_eq!(size.format, FormatId::Dia);
        assert_eq!(size.fired_rule, "size-1");
        // The identity-like case is where the rule answer and the exact
        // minimum must coincide.
        let check = size.size_cross_check.unwrap();
        assert!(check.agrees);
        assert_eq!(check.exact_minimum, vec![FormatId::Dia]);
    }

    #[test]
    fn horizontal_dense_rows_split_the_objectives() {
        let m = generate_pattern(PatternKind::DenseRows(2), 4, 8).unwrap();
        let speed = recommend(&m, Objective::Speed).unwrap();
        let size = recommend(&m, Objective::Size).unwrap();
        assert_eq!(speed.format, FormatId::Tjds);
        assert_eq!(speed.fired_rule, "speed-5");
        assert_eq!(size.format, FormatId::Csr);
        assert_eq!(size.fired_rule, "size-3");
    }

    #[test]
    fn vertical_dense_cols_pick_jds_then_csc() {
        let m = generate_pattern(PatternKind::DenseCols(2), 16, 8).unwrap();
        let speed = recommend(&m, Objective::Speed).unwrap();
        let size = recommend(&m, Objective::Size).unwrap();
        assert_eq!(speed.format, FormatId::Jds);
        assert_eq!(speed.fired_rule, "speed-3");
        assert_eq!(size.format, FormatId::Csc);
        assert_eq!(size.fired_rule, "size-5");
    }

    #[test]
    fn fallback_defaults_when_nothing_stands_out() {
        use Level::VeryLow as VL;
        let p = profile_with(Shape::Square, VL, VL, VL, VL);
        let m = generate_pattern(PatternKind::Identity, 100, 100).unwrap();
        let sizes = sizes_of(&m);
        let speed = recommend_with(&p, &sizes, Objective::Speed);
        assert_eq!(speed.format, FormatId::Csr);
        assert_eq!(speed.fired_rule, "fallback");
        assert_eq!(
            speed.fallback.as_ref().unwrap().reason,
            FallbackReason::AllVeryLow
        );
        // Size default is the exact minimum: DIA at 101 elements here.
        let size = recommend_with(&p, &sizes, Objective::Size);
        assert_eq!(size.format, FormatId::Dia);
        assert!(size.size_cross_check.unwrap().agrees);
    }

    #[test]
    fn fallback_ladder_applies_the_highest_level_rule() {
        let p = profile_with(
            Shape::Square,
            Level::High,
            Level::Medium,
            Level::Low,
            Level::Medium,
        );
        let sizes = sizes_of(&demo_matrix());
        let rec = recommend_with(&p, &sizes, Objective::Speed);
        assert_eq!(rec.format, FormatId::Dia);
        assert_eq!(rec.fired_rule, "fallback");
        let trace = rec.fallback.unwrap();
        assert_eq!(trace.reason, FallbackReason::NoVeryHighCategory);
        assert_eq!(trace.applied_rule.as_deref(), Some("speed-1"));
        assert_eq!(trace.category_levels.len(), 4);
    }

    #[test]
    fn fallback_ladder_breaks_level_ties_by_precedence() {
        let p = profile_with(
            Shape::Square,
            Level::Medium,
            Level::Medium,
            Level::Low,
            Level::Low,
        );
        let sizes = sizes_of(&demo_matrix());
        let rec = recommend_with(&p, &sizes, Objective::Speed);
        // Diagonal density wins the Medium tie.
        assert_eq!(rec.category, Some(Category::DiagonalDensity));
        assert_eq!(rec.format, FormatId::Dia);
    }

    #[test]
    fn demo_matrix_falls_back_to_its_high_dense_rows() {
        let m = demo_matrix();
        let speed = recommend(&m, Objective::Speed).unwrap();
        assert_eq!(speed.format, FormatId::Csr);
        assert_eq!(speed.fired_rule, "fallback");
        assert_eq!(speed.category, Some(Category::DenseRows));
        assert_eq!(speed.level, Some(Level::High));
        let size = recommend(&m, Objective::Size).unwrap();
        assert_eq!(size.format, FormatId::Csr);
        let check = size.size_cross_check.unwrap();
        assert_eq!(check.exact_minimum, vec![FormatId::Tjds]);
        assert!(!check.agrees);
    }

    #[test]
    fn degenerate_matrices_still_get_an_answer() {
        let empty = CooMatrix::empty(3, 3).unwrap();
        let speed = recommend(&empty, Objective::Speed).unwrap();
        assert_eq!(speed.format, FormatId::Csr);
        assert_eq!(
            speed.fallback.as_ref().unwrap().reason,
            FallbackReason::Degenerate
        );
        let size = recommend(&empty, Objective::Size).unwrap();
        // COO and DIA tie at zero elements; the first in format order wins.
        assert_eq!(size.format, FormatId::Coo);

        // A single entry in a 2x5 puts diagonal density at High (1 of 6
        // diagonals), but degeneracy suppresses the highest-level ladder.
        let single = CooMatrix::from_triplets(2, 5, vec![(0, 2, 4.0)]).unwrap();
        let rec = recommend(&single, Objective::Speed).unwrap();
        assert_eq!(rec.fired_rule, "fallback");
        assert_eq!(rec.format, FormatId::Csr);
        assert_eq!(
            rec.fallback.as_ref().unwrap().reason,
            FallbackReason::Degenerate
        );
    }

    #[test]
    fn degenerate_matrix_with_a_very_high_category_still_fires_its_rule() {
        // A single entry in a 1x5: its column (length 1) is trivially
        // dense, so dense columns hit VeryHigh and the table answers.
        let m = CooMatrix::from_triplets(1, 5, vec![(0, 2, 4.0)]).unwrap();
        let profile = analyze(&m);
        assert!(profile.degenerate);
        assert_eq!(profile.dense_col_level, Level::VeryHigh);
        let rec = recommend(&m, Objective::Speed).unwrap();
        assert_eq!(rec.fired_rule, "speed-6");
        assert_eq!(rec.format, FormatId::Csc);
    }

    #[test]
    fn recommendations_are_deterministic() {
        let m = generate_pattern(
            PatternKind::UniformRandom {
                density: 0.15,
                seed: 21,
            },
            20,
            30,
        )
        .unwrap();
        let a = recommend(&m, Objective::Size).unwrap();
        let b = recommend(&m, Objective::Size).unwrap();
        assert_eq!(a.format, b.format);
        assert_eq!(a.fired_rule, b.fired_rule);
    }
}
