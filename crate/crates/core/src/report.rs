//! Result documents and their text, JSON and CSV renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lca_solver::DifferentiatingResult;
use crate::multicriteria::{ClassicalMethod, ClassicalSolution, DecisionProblem, LcaSolution};
use crate::pairwise::{rank_alternatives, PairwiseComparisonMatrix, Ranking, RatingVector};
use crate::VERSION;

pub const TOOL_NAME: &str = "trate";

/// A vector in both normalizations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Views {
    pub sum_normalized: Vec<f64>,
    pub max_normalized: Vec<f64>,
}

impl From<&RatingVector> for Views {
    fn from(v: &RatingVector) -> Self {
        Self {
            sum_normalized: v.sum_normalized().values().to_vec(),
            max_normalized: v.max_normalized().values().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<f64>>,
    /// Optimal log-Chebyshev objective minus one: the maximum relative error.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub approximation_error: Option<f64>,
    /// Whether the worst differentiating vector came out with unit max-norm
    /// before rescaling.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst_unit_norm: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TieFlags {
    pub multiple_best_weights: bool,
    pub multiple_best_ratings: bool,
    pub ranking: bool,
}

/// One method's result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodReport {
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Views>,
    pub ratings: Views,
    /// Further best differentiating rating vectors (max-normalized) when the
    /// best solution is not unique.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alternative_optima: Vec<Vec<f64>>,
    /// Equivalence classes of labels, best first.
    pub ranking: Vec<Vec<String>>,
    pub ranking_text: String,
    pub diagnostics: Diagnostics,
    pub ties: TieFlags,
}

/// The matrices a report was computed from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub criterion_labels: Vec<String>,
    pub alternative_labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub criteria: Option<Vec<Vec<f64>>>,
    pub alternatives: Vec<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    /// Methods whose top alternatives were counted.
    pub counted_methods: Vec<String>,
    /// `(label, number of counted methods ranking it top)` in label order.
    pub top_counts: Vec<(String, usize)>,
    /// Alternatives topped by the most methods.
    pub plurality: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub input: InputEcho,
    pub methods: Vec<MethodReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
}

fn ranking_fields(ranking: &Ranking, labels: &[String]) -> (Vec<Vec<String>>, String) {
    (ranking.labelled(labels), ranking.render(labels))
}

/// Reports for the LCA pipeline: `lca-best` (plus `lca-best-2`, ... when the
/// best weight vector is not unique) and `lca-worst`.
pub fn lca_reports(problem: &DecisionProblem, solution: &LcaSolution) -> Vec<MethodReport> {
    let labels = problem.alternative_labels();
    let multiple_weights = solution.weights_best.len() > 1;
    let mut out: Vec<MethodReport> = solution
        .best_stages
        .iter()
        .enumerate()
        .map(|(k, stage)| {
            let (ranking, ranking_text) = ranking_fields(&stage.ranking, labels);
            let mu = stage.generating.lambda();
            MethodReport {
                method: if k == 0 {
                    "lca-best".to_string()
                } else {
                    format!("lca-best-{}", k + 1)
                },
                weights: Some(Views::from(&stage.weights)),
                ratings: Views::from(&stage.ratings[0]),
                alternative_optima: stage.ratings[1..]
                    .iter()
                    .map(|r| r.max_normalized().values().to_vec())
                    .collect(),
                ranking,
                ranking_text,
                diagnostics: Diagnostics {
                    lambda: Some(solution.lambda()),
                    mu: Some(mu),
                    approximation_error: Some(mu - 1.0),
                    ..Diagnostics::default()
                },
                ties: TieFlags {
                    multiple_best_weights: multiple_weights,
                    multiple_best_ratings: stage.ratings.len() > 1,
                    ranking: stage.ranking.has_ties(),
                },
            }
        })
        .collect();

    let worst = &solution.worst_stage;
    let (ranking, ranking_text) = ranking_fields(&worst.ranking, labels);
    let nu = worst.generating.lambda();
    out.push(MethodReport {
        method: "lca-worst".to_string(),
        weights: Some(Views::from(&worst.weights)),
        ratings: Views::from(&worst.ratings),
        alternative_optima: Vec::new(),
        ranking,
        ranking_text,
        diagnostics: Diagnostics {
            lambda: Some(solution.lambda()),
            nu: Some(nu),
            approximation_error: Some(nu - 1.0),
            worst_unit_norm: Some(worst.unit_norm && solution.worst_weights_unit_norm),
            ..Diagnostics::default()
        },
        ties: TieFlags {
            multiple_best_weights: false,
            multiple_best_ratings: false,
            ranking: worst.ranking.has_ties(),
        },
    });
    out
}

pub fn classical_report(problem: &DecisionProblem, solution: &ClassicalSolution) -> MethodReport {
    let (ranking, ranking_text) = ranking_fields(&solution.ranking, problem.alternative_labels());
    let (method, eigenvalues) = match solution.method {
        ClassicalMethod::Ahp => ("ahp", Some(solution.principal_eigenvalues.clone())),
        ClassicalMethod::Wgm => ("wgm", None),
    };
    MethodReport {
        method: method.to_string(),
        weights: Some(Views::from(&solution.criterion_weights)),
        ratings: Views {
            sum_normalized: solution.ratings.values().to_vec(),
            max_normalized: solution.ratings_max.values().to_vec(),
        },
        alternative_optima: Vec::new(),
        ranking,
        ranking_text,
        diagnostics: Diagnostics {
            eigenvalues,
            ..Diagnostics::default()
        },
        ties: TieFlags {
            ranking: solution.ranking.has_ties(),
            ..TieFlags::default()
        },
    }
}

/// Reports `lca-best` and `lca-worst` for a single matrix.
pub fn single_lca_reports(
    labels: &[String],
    lambda: f64,
    result: &DifferentiatingResult,
    tie_tol: f64,
) -> Vec<MethodReport> {
    let best_ranking = rank_alternatives(&result.best[0], tie_tol);
    let worst_ranking = rank_alternatives(&result.worst, tie_tol);
    let (ranking, ranking_text) = ranking_fields(&best_ranking, labels);
    let best = MethodReport {
        method: "lca-best".to_string(),
        weights: None,
        ratings: Views::from(&result.best[0]),
        alternative_optima: result.best[1..]
            .iter()
            .map(|r| r.values().to_vec())
            .collect(),
        ranking,
        ranking_text,
        diagnostics: Diagnostics {
            lambda: Some(lambda),
            approximation_error: Some(lambda - 1.0),
            ..Diagnostics::default()
        },
        ties: TieFlags {
            multiple_best_ratings: result.tie_flag(),
            ranking: best_ranking.has_ties(),
            ..TieFlags::default()
        },
    };
    let (ranking, ranking_text) = ranking_fields(&worst_ranking, labels);
    let worst = MethodReport {
        method: "lca-worst".to_string(),
        weights: None,
        ratings: Views::from(&result.worst),
        alternative_optima: Vec::new(),
        ranking,
        ranking_text,
        diagnostics: Diagnostics {
            lambda: Some(lambda),
            approximation_error: Some(lambda - 1.0),
            worst_unit_norm: Some(result.worst_unit_norm),
            ..Diagnostics::default()
        },
        ties: TieFlags {
            ranking: worst_ranking.has_ties(),
            ..TieFlags::default()
        },
    };
    vec![best, worst]
}

/// Report for a single-matrix rating vector (`eig` or `gmean`).
pub fn single_vector_report(
    method: &str,
    labels: &[String],
    ratings: &RatingVector,
    eigenvalue: Option<f64>,
    tie_tol: f64,
) -> MethodReport {
    let r = rank_alternatives(ratings, tie_tol);
    let (ranking, ranking_text) = ranking_fields(&r, labels);
    MethodReport {
        method: method.to_string(),
        weights: None,
        ratings: Views::from(ratings),
        alternative_optima: Vec::new(),
        ranking,
        ranking_text,
        diagnostics: Diagnostics {
            eigenvalues: eigenvalue.map(|e| vec![e]),
            ..Diagnostics::default()
        },
        ties: TieFlags {
            ranking: r.has_ties(),
            ..TieFlags::default()
        },
    }
}

impl InputEcho {
    pub fn from_problem(problem: &DecisionProblem) -> Self {
        Self {
            criterion_labels: problem.criterion_labels().to_vec(),
            alternative_labels: problem.alternative_labels().to_vec(),
            criteria: Some(problem.criteria().to_rows()),
            alternatives: problem.alternatives().iter().map(|a| a.to_rows()).collect(),
        }
    }

    pub fn from_matrix(matrix: &PairwiseComparisonMatrix, labels: &[String]) -> Self {
        Self {
            criterion_labels: Vec::new(),
            alternative_labels: labels.to_vec(),
            criteria: None,
            alternatives: vec![matrix.to_rows()],
        }
    }
}

impl ReportDocument {
    pub fn new(input: InputEcho, methods: Vec<MethodReport>) -> Self {
        Self {
            tool: TOOL_NAME.to_string(),
            version: VERSION.to_string(),
            input,
            methods,
            comparison: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

fn counts_toward_plurality(method: &str, count_worst: bool) -> bool {
    match method {
        "lca-worst" => count_worst,
        m => !m.starts_with("lca-best-"),
    }
}

/// Tallies which alternatives top each counted method.
///
/// `lca-worst` is counted only with `count_worst`; extra `lca-best-k`
/// entries never are, since they belong to the same method as `lca-best`.
pub fn compare(methods: &[MethodReport], labels: &[String], count_worst: bool) -> Result<Comparison> {
    let counted: Vec<&MethodReport> = methods
        .iter()
        .filter(|m| counts_toward_plurality(&m.method, count_worst))
        .collect();
    if counted.len() < 2 {
        return Err(Error::Shape(format!(
            "comparison needs at least two method results, got {}",
            counted.len()
        )));
    }
    let mut sorted_labels = labels.to_vec();
    sorted_labels.sort();
    for m in &counted {
        let mut seen: Vec<String> = m.ranking.iter().flatten().cloned().collect();
        seen.sort();
        if seen != sorted_labels || m.ratings.max_normalized.len() != labels.len() {
            return Err(Error::Shape(format!(
                "method `{}` does not rank the same alternatives",
                m.method
            )));
        }
    }
    let top_counts: Vec<(String, usize)> = labels
        .iter()
        .map(|l| {
            let n = counted.iter().filter(|m| m.ranking[0].contains(l)).count();
            (l.clone(), n)
        })
        .collect();
    let best = top_counts.iter().map(|(_, n)| *n).max().unwrap_or(0);
    Ok(Comparison {
        counted_methods: counted.iter().map(|m| m.method.clone()).collect(),
        plurality: top_counts
            .iter()
            .filter(|(_, n)| *n == best)
            .map(|(l, _)| l.clone())
            .collect(),
        top_counts,
    })
}

fn fmt_vec(v: &[f64], precision: usize) -> String {
    let cells: Vec<String> = v.iter().map(|x| format!("{x:.precision$}")).collect();
    format!("({})", cells.join(", "))
}

fn method_title(method: &str) -> &str {
    match method {
        "lca-worst" => "log-Chebyshev approximation, worst differentiating",
        "ahp" => "analytic hierarchy process",
        "wgm" => "weighted geometric means",
        "eig" => "principal eigenvector",
        "gmean" => "row geometric means",
        m if m.starts_with("lca-best") => "log-Chebyshev approximation, best differentiating",
        _ => "",
    }
}

/// Side-by-side table of max-normalized ratings with rankings and the
/// plurality line.
pub fn render_comparison(
    methods: &[MethodReport],
    labels: &[String],
    count_worst: bool,
    precision: usize,
) -> Result<String> {
    let comparison = compare(methods, labels, count_worst)?;
    let shown: Vec<&MethodReport> = methods.iter().collect();
    let label_width = labels
        .iter()
        .map(|l| l.chars().count())
        .chain(std::iter::once("alternative".len()))
        .max()
        .unwrap_or(0);
    let col_width = shown
        .iter()
        .map(|m| m.method.len())
        .chain(std::iter::once(precision + 2))
        .max()
        .unwrap_or(0);

    let mut out = String::new();
    out.push_str("comparison (max-normalized ratings)\n");
    let _ = write!(out, "  {:<label_width$}", "alternative");
    for m in &shown {
        let _ = write!(out, "  {:>col_width$}", m.method);
    }
    out.push('\n');
    for (i, label) in labels.iter().enumerate() {
        let pad = label_width - label.chars().count();
        let _ = write!(out, "  {label}{}", " ".repeat(pad));
        for m in &shown {
            let _ = write!(out, "  {:>col_width$.precision$}", m.ratings.max_normalized[i]);
        }
        out.push('\n');
    }
    let method_width = shown.iter().map(|m| m.method.len()).max().unwrap_or(0);
    for m in &shown {
        let _ = writeln!(out, "  {:<method_width$}  {}", m.method, m.ranking_text);
    }
    let best = comparison
        .top_counts
        .iter()
        .map(|(_, n)| *n)
        .max()
        .unwrap_or(0);
    let _ = writeln!(
        out,
        "  plurality: {} (top in {} of {} methods: {})",
        comparison.plurality.join(", "),
        best,
        comparison.counted_methods.len(),
        comparison.counted_methods.join(", ")
    );
    Ok(out)
}

/// Human-readable report.
pub fn render_text(doc: &ReportDocument, precision: usize) -> String {
    let p = precision;
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", doc.tool, doc.version);
    if !doc.input.criterion_labels.is_empty() {
        let _ = writeln!(out, "criteria:     {}", doc.input.criterion_labels.join(", "));
    }
    let _ = writeln!(out, "alternatives: {}", doc.input.alternative_labels.join(", "));

    for m in &doc.methods {
        out.push('\n');
        let _ = writeln!(out, "[{}] {}", m.method, method_title(&m.method));
        let d = &m.diagnostics;
        let weights_label = if m.method.starts_with("lca") {
            "weights (max)"
        } else {
            "weights (sum)"
        };
        let mut row = |name: &str, value: String| {
            let _ = writeln!(out, "  {name:<20} {value}");
        };
        if let Some(l) = d.lambda {
            row("lambda", format!("{l:.p$}"));
        }
        if let Some(w) = &m.weights {
            let v = if m.method.starts_with("lca") {
                &w.max_normalized
            } else {
                &w.sum_normalized
            };
            row(weights_label, fmt_vec(v, p));
        }
        if let Some(ev) = &d.eigenvalues {
            row("eigenvalues", fmt_vec(ev, p));
        }
        if let Some(mu) = d.mu {
            row("mu", format!("{mu:.p$}"));
        }
        if let Some(nu) = d.nu {
            row("nu", format!("{nu:.p$}"));
        }
        if let Some(e) = d.approximation_error {
            row("max relative error", format!("{e:.p$}"));
        }
        row("ratings (sum)", fmt_vec(&m.ratings.sum_normalized, p));
        row("ratings (max)", fmt_vec(&m.ratings.max_normalized, p));
        for other in &m.alternative_optima {
            row("also optimal (max)", fmt_vec(other, p));
        }
        row("ranking", m.ranking_text.clone());
        if m.ties.multiple_best_weights {
            row("note", "best weight vector is not unique".into());
        }
        if d.worst_unit_norm == Some(false) {
            row("note", "worst vector was rescaled to unit max-norm".into());
        }
    }

    if doc.comparison.is_some() {
        out.push('\n');
        let count_worst = doc
            .comparison
            .as_ref()
            .is_some_and(|c| c.counted_methods.iter().any(|m| m == "lca-worst"));
        if let Ok(table) =
            render_comparison(&doc.methods, &doc.input.alternative_labels, count_worst, p)
        {
            out.push_str(&table);
        }
    }
    out
}

/// `method,alternative,rating_max_norm,rank`, one row per alternative per
/// method. `rank` is the 1-based position of the alternative's equivalence
/// class.
pub fn render_csv(doc: &ReportDocument, precision: usize) -> String {
    let mut out = String::from("method,alternative,rating_max_norm,rank\n");
    for m in &doc.methods {
        for (i, label) in doc.input.alternative_labels.iter().enumerate() {
            let rank = m
                .ranking
                .iter()
                .position(|class| class.contains(label))
                .map_or(0, |r| r + 1);
            let _ = writeln!(
                out,
                "{},{},{:.precision$},{}",
                m.method,
                csv_field(label),
                m.ratings.max_normalized[i],
                rank
            );
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(method: &str, ratings: &[f64], ranking: &[&[&str]]) -> MethodReport {
        MethodReport {
            method: method.into(),
            weights: None,
            ratings: Views {
                sum_normalized: ratings.to_vec(),
                max_normalized: ratings.to_vec(),
            },
            alternative_optima: Vec::new(),
            ranking: ranking
                .iter()
                .map(|c| c.iter().map(|s| s.to_string()).collect())
                .collect(),
            ranking_text: String::new(),
            diagnostics: Diagnostics::default(),
            ties: TieFlags::default(),
        }
    }

    fn labels() -> Vec<String> {
        vec!["A".into(), "B".into(), "C".into()]
    }

    #[test]
    fn plurality_follows_top_counts() {
        let methods = vec![
            report("lca-best", &[1.0, 0.9, 0.6], &[&["A"], &["B"], &["C"]]),
            report("lca-worst", &[1.0, 0.8, 1.0], &[&["A", "C"], &["B"]]),
            report("ahp", &[0.97, 1.0, 0.67], &[&["B"], &["A"], &["C"]]),
            report("wgm", &[1.0, 0.9, 0.8], &[&["A"], &["B"], &["C"]]),
        ];
        let c = compare(&methods, &labels(), false).unwrap();
        assert_eq!(c.plurality, vec!["A"]);
        assert_eq!(c.counted_methods, vec!["lca-best", "ahp", "wgm"]);
        assert_eq!(c.top_counts[0].1, 2);
        let c = compare(&methods, &labels(), true).unwrap();
        assert_eq!(c.top_counts, vec![("A".into(), 3), ("B".into(), 1), ("C".into(), 1)]);
    }

    #[test]
    fn comparison_needs_two_methods() {
        let methods = vec![report("ahp", &[1.0, 0.5, 0.2], &[&["A"], &["B"], &["C"]])];
        assert!(matches!(compare(&methods, &labels(), false), Err(Error::Shape(_))));
    }

    #[test]
    fn comparison_rejects_label_mismatch() {
        let methods = vec![
            report("ahp", &[1.0, 0.5, 0.2], &[&["A"], &["B"], &["C"]]),
            report("wgm", &[1.0, 0.5, 0.2], &[&["A"], &["B"], &["D"]]),
        ];
        assert!(matches!(compare(&methods, &labels(), false), Err(Error::Shape(_))));
    }

    #[test]
    fn identical_rankings_name_common_leader() {
        let methods = vec![
            report("ahp", &[0.5, 1.0, 0.2], &[&["B"], &["A"], &["C"]]),
            report("wgm", &[0.6, 1.0, 0.3], &[&["B"], &["A"], &["C"]]),
        ];
        let text = render_comparison(&methods, &labels(), false, 4).unwrap();
        assert!(text.contains("plurality: B (top in 2 of 2 methods"), "{text}");
    }

    #[test]
    fn csv_escapes_labels() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
    }
}
