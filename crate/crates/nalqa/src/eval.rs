//! Black-box response-quality scoring by pair-wise comparison, plus
//! response-time summary statistics.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use num_traits::Float;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing judgment for category {category} and pair {x} vs {y}")]
    MissingJudgment { category: String, x: String, y: String },
    #[error("empty series")]
    EmptySeries,
}

/// Response category codes: best quality, lowest quality, or an
/// evaluation-specific `O<j>` category.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CategoryCode {
    Bq,
    Lq,
    Other(u32),
}

impl FromStr for CategoryCode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.to_ascii_uppercase().as_str() {
            "BQ" => Ok(CategoryCode::Bq),
            "LQ" => Ok(CategoryCode::Lq),
            other => {
                if let Some(j) = other.strip_prefix('O') {
                    let j: u32 = j.parse().map_err(|_| format!("bad category `{s}`"))?;
                    if j == 0 {
                        return Err(format!("bad category `{s}`: index starts at 1"));
                    }
                    Ok(CategoryCode::Other(j))
                } else {
                    Err(format!("bad category `{s}`"))
                }
            }
        }
    }
}

impl fmt::Display for CategoryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CategoryCode::Bq => write!(f, "BQ"),
            CategoryCode::Lq => write!(f, "LQ"),
            CategoryCode::Other(j) => write!(f, "O{j}"),
        }
    }
}

/// Which side of an unordered pair produced the better response; ties
/// and non-relevant categories award nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    XBetter,
    YBetter,
    Tie,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperiorityJudgment {
    pub category: CategoryCode,
    pub x: String,
    pub y: String,
    pub verdict: Verdict,
}

/// Parse the judgments TSV: `category \t system_x \t system_y \t
/// verdict` with verdict `x`, `y` or `tie`; a blank verdict reads as
/// tie-or-nonrelevant.
pub fn parse_judgments(text: &str) -> Result<Vec<SuperiorityJudgment>, EvalError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() < 3 {
            return Err(EvalError::Parse {
                line: idx + 1,
                msg: format!("expected 4 tab-separated columns, got {}", cols.len()),
            });
        }
        let category: CategoryCode = cols[0].parse().map_err(|msg| EvalError::Parse {
            line: idx + 1,
            msg,
        })?;
        let verdict = match cols.get(3).map(|s| s.trim()).unwrap_or("") {
            "x" => Verdict::XBetter,
            "y" => Verdict::YBetter,
            "" | "tie" => Verdict::Tie,
            other => {
                return Err(EvalError::Parse {
                    line: idx + 1,
                    msg: format!("bad verdict `{other}`"),
                })
            }
        };
        out.push(SuperiorityJudgment {
            category,
            x: cols[1].trim().to_string(),
            y: cols[2].trim().to_string(),
            verdict,
        });
    }
    Ok(out)
}

/// Pair-wise scoring: under each category, the better side of a pair
/// earns one point, the worse side zero, and ties award nothing. Totals
/// are row sums per system. Judgments must cover every category x pair
/// combination.
pub fn score(
    systems: &[String],
    judgments: &[SuperiorityJudgment],
) -> Result<IndexMap<String, u32>, EvalError> {
    let categories: BTreeSet<&CategoryCode> = judgments.iter().map(|j| &j.category).collect();
    let mut totals: IndexMap<String, u32> = systems.iter().map(|s| (s.clone(), 0)).collect();
    for (i, x) in systems.iter().enumerate() {
        for y in systems.iter().skip(i + 1) {
            for cat in &categories {
                let j = judgments
                    .iter()
                    .find(|j| {
                        &&j.category == cat
                            && ((&j.x == x && &j.y == y) || (&j.x == y && &j.y == x))
                    })
                    .ok_or_else(|| EvalError::MissingJudgment {
                        category: cat.to_string(),
                        x: x.clone(),
                        y: y.clone(),
                    })?;
                match j.verdict {
                    Verdict::XBetter => *totals.get_mut(&j.x).unwrap() += 1,
                    Verdict::YBetter => *totals.get_mut(&j.y).unwrap() += 1,
                    Verdict::Tie => {}
                }
            }
        }
    }
    Ok(totals)
}

/// Summary statistics over a timing series. Both the sample (n-1) and
/// population (n) estimators are reported, together with the variances,
/// so either convention can be read off directly.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeStats<T> {
    pub max: T,
    pub min: T,
    pub mean: T,
    /// Sample standard deviation (n-1 denominator).
    pub stddev: T,
    pub stddev_population: T,
    pub variance: T,
    pub variance_population: T,
}

pub fn time_stats<T: Float>(series: &[T]) -> Result<TimeStats<T>, EvalError> {
    if series.is_empty() {
        return Err(EvalError::EmptySeries);
    }
    let n = T::from(series.len()).unwrap();
    let sum = series.iter().fold(T::zero(), |a, &b| a + b);
    let mean = sum / n;
    let ss = series
        .iter()
        .fold(T::zero(), |a, &b| a + (b - mean) * (b - mean));
    let variance_population = ss / n;
    let variance = if series.len() > 1 { ss / (n - T::one()) } else { T::zero() };
    let mut max = series[0];
    let mut min = series[0];
    for &v in series {
        if v > max {
            max = v;
        }
        if v < min {
            min = v;
        }
    }
    Ok(TimeStats {
        max,
        min,
        mean,
        stddev: variance.sqrt(),
        stddev_population: variance_population.sqrt(),
        variance,
        variance_population,
    })
}

/// One float per line; `#` comments and blank lines are skipped.
pub fn parse_series(text: &str) -> Result<Vec<f64>, EvalError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: f64 = line.parse().map_err(|_| EvalError::Parse {
            line: idx + 1,
            msg: format!("bad number `{line}`"),
        })?;
        out.push(v);
    }
    Ok(out)
}

pub type TimeStatsF64 = TimeStats<f64>;
pub type TimeStatsF32 = TimeStats<f32>;

#[cfg(test)]
mod tests {
    use super::*;

    fn sys3() -> Vec<String> {
        ["AnswerBus", "NaLURI", "START"].map(String::from).to_vec()
    }

    /// The published three-system comparison: NaLURI takes BQ, O1 and O2
    /// against AnswerBus, O1 against START; START takes BQ and O2
    /// against AnswerBus; everything else ties.
    fn table_6_7() -> Vec<SuperiorityJudgment> {
        parse_judgments(
            "\
BQ\tAnswerBus\tNaLURI\ty
LQ\tAnswerBus\tNaLURI\ttie
O1\tAnswerBus\tNaLURI\ty
O2\tAnswerBus\tNaLURI\ty
BQ\tSTART\tNaLURI\ttie
LQ\tSTART\tNaLURI\ttie
O1\tSTART\tNaLURI\ty
O2\tSTART\tNaLURI\ttie
BQ\tSTART\tAnswerBus\tx
LQ\tSTART\tAnswerBus\ttie
O1\tSTART\tAnswerBus\ttie
O2\tSTART\tAnswerBus\tx
",
        )
        .unwrap()
    }

    #[test]
    fn reproduces_published_totals() {
        let totals = score(&sys3(), &table_6_7()).unwrap();
        assert_eq!(totals["AnswerBus"], 0);
        assert_eq!(totals["NaLURI"], 4);
        assert_eq!(totals["START"], 2);
    }

    #[test]
    fn single_system_scores_zero() {
        let totals = score(&["only".to_string()], &[]).unwrap();
        assert_eq!(totals["only"], 0);
    }

    #[test]
    fn all_ties_score_zero() {
        let judgments = parse_judgments(
            "\
BQ\ta\tb\ttie
BQ\ta\tc\ttie
BQ\tb\tc\ttie
",
        )
        .unwrap();
        let totals = score(&["a".into(), "b".into(), "c".into()], &judgments).unwrap();
        assert!(totals.values().all(|&v| v == 0));
    }

    #[test]
    fn blank_verdict_reads_as_tie() {
        let judgments = parse_judgments("LQ\ta\tb\t\n").unwrap();
        assert_eq!(judgments[0].verdict, Verdict::Tie);
    }

    #[test]
    fn missing_judgment_named() {
        let judgments = parse_judgments("BQ\ta\tb\tx\n").unwrap();
        let err = score(&["a".into(), "b".into(), "c".into()], &judgments).unwrap_err();
        assert!(matches!(err, EvalError::MissingJudgment { .. }));
    }

    #[test]
    fn points_sum_to_non_tie_count() {
        let judgments = table_6_7();
        let totals = score(&sys3(), &judgments).unwrap();
        let non_ties = judgments.iter().filter(|j| j.verdict != Verdict::Tie).count() as u32;
        assert_eq!(totals.values().sum::<u32>(), non_ties);
    }

    #[test]
    fn pair_order_does_not_change_totals() {
        let mut flipped = table_6_7();
        for j in &mut flipped {
            std::mem::swap(&mut j.x, &mut j.y);
            j.verdict = match j.verdict {
                Verdict::XBetter => Verdict::YBetter,
                Verdict::YBetter => Verdict::XBetter,
                Verdict::Tie => Verdict::Tie,
            };
        }
        assert_eq!(
            score(&sys3(), &table_6_7()).unwrap(),
            score(&sys3(), &flipped).unwrap()
        );
    }

    #[test]
    fn constant_series_stats() {
        let s = vec![3.0f64; 10];
        let st = time_stats(&s).unwrap();
        assert_eq!(st.max, 3.0);
        assert_eq!(st.min, 3.0);
        assert_eq!(st.mean, 3.0);
        assert_eq!(st.stddev, 0.0);
    }

    #[test]
    fn small_series_sample_stddev() {
        let st = time_stats(&[1.0f64, 2.0, 3.0]).unwrap();
        assert!((st.mean - 2.0).abs() < 1e-12);
        assert!((st.stddev - 1.0).abs() < 1e-12);
        assert!((st.stddev_population - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn works_for_f32_too() {
        let st = time_stats(&[1.0f32, 2.0, 3.0]).unwrap();
        assert!((st.mean - 2.0).abs() < 1e-6);
        assert!((st.stddev - 1.0).abs() < 1e-6);
    }

    #[test]
    fn empty_series_is_an_error() {
        assert!(matches!(
            time_stats::<f64>(&[]),
            Err(EvalError::EmptySeries)
        ));
    }

    #[test]
    fn parses_series_file() {
        let s = parse_series("1.5\n# comment\n\n2.5\n").unwrap();
        assert_eq!(s, vec![1.5, 2.5]);
        assert!(parse_series("abc\n").is_err());
    }
}
