//! JSON problem files.
//!
//! ```json
//! {
//!   "labels": { "criteria": ["Price", "Comfort"], "alternatives": ["X", "Y"] },
//!   "criteria": [[1, 3], ["1/3", 1]],
//!   "alternatives": [
//!     [[1, "1/2"], [2, 1]],
//!     [[1, 5], ["1/5", 1]]
//!   ]
//! }
//! ```
//!
//! `alternatives` is either a list in criterion order or an object keyed by
//! criterion label. Entries are JSON numbers or strings `"p"` / `"p/q"` with
//! positive integers `p`, `q`. Labels are optional and default to `C1..Cm`
//! and `A1..An`.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multicriteria::DecisionProblem;
use crate::pairwise::PairwiseComparisonMatrix;

/// One matrix entry. Parsed from a number or a fraction string, written back
/// as an integer, `"1/k"`, or a plain number, whichever reproduces the value
/// exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entry(pub f64);

const EXACT_INT_LIMIT: f64 = 9_007_199_254_740_992.0;

fn parse_fraction(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    let positive = |part: &str| -> std::result::Result<u64, String> {
        match part.trim().parse::<u64>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(format!(
                "invalid fraction `{s}`: numerator and denominator must be positive integers"
            )),
        }
    };
    match s.split_once('/') {
        Some((p, q)) => Ok(positive(p)? as f64 / positive(q)? as f64),
        None => Ok(positive(s)? as f64),
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct EntryVisitor;

        impl<'de> de::Visitor<'de> for EntryVisitor {
            type Value = Entry;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number or a fraction string \"p/q\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Entry, E> {
                Ok(Entry(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Entry, E> {
                Ok(Entry(v as f64))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Entry, E> {
                Ok(Entry(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Entry, E> {
                parse_fraction(v).map(Entry).map_err(E::custom)
            }
        }

        deserializer.deserialize_any(EntryVisitor)
    }
}

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let v = self.0;
        if (1.0..EXACT_INT_LIMIT).contains(&v) && v.fract() == 0.0 {
            return serializer.serialize_u64(v as u64);
        }
        if v > 0.0 && v < 1.0 {
            let k = (1.0 / v).round();
            if k < EXACT_INT_LIMIT && 1.0 / k == v {
                return serializer.serialize_str(&format!("1/{}", k as u64));
            }
        }
        serializer.serialize_f64(v)
    }
}

pub type Grid = Vec<Vec<Entry>>;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Labels {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub criteria: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternatives: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum AlternativeGrids {
    List(Vec<Grid>),
    Keyed(BTreeMap<String, Grid>),
}

// Dispatches on the JSON shape directly so entry errors keep their position.
impl<'de> Deserialize<'de> for AlternativeGrids {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct GridsVisitor;

        impl<'de> de::Visitor<'de> for GridsVisitor {
            type Value = AlternativeGrids;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a list of matrices or an object keyed by criterion label")
            }

            fn visit_seq<A: de::SeqAccess<'de>>(
                self,
                seq: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                Deserialize::deserialize(de::value::SeqAccessDeserializer::new(seq))
                    .map(AlternativeGrids::List)
            }

            fn visit_map<A: de::MapAccess<'de>>(
                self,
                map: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                Deserialize::deserialize(de::value::MapAccessDeserializer::new(map))
                    .map(AlternativeGrids::Keyed)
            }
        }

        deserializer.deserialize_any(GridsVisitor)
    }
}

/// On-disk form of a [`DecisionProblem`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Labels>,
    pub criteria: Grid,
    pub alternatives: AlternativeGrids,
}

/// On-disk form of a single comparison matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub matrix: Grid,
}

fn syntax(err: serde_json::Error) -> Error {
    Error::Syntax {
        line: err.line(),
        column: err.column(),
        message: {
            let full = err.to_string();
            let suffix = format!(" at line {} column {}", err.line(), err.column());
            full.strip_suffix(&suffix).map(str::to_owned).unwrap_or(full)
        },
    }
}

fn grid_values(grid: &Grid) -> Vec<Vec<f64>> {
    grid.iter().map(|r| r.iter().map(|e| e.0).collect()).collect()
}

fn check_square(name: &str, grid: &Grid, n: usize) -> Result<()> {
    if grid.len() != n {
        return Err(Error::Document(format!(
            "matrix `{name}` has {} rows, expected {n}",
            grid.len()
        )));
    }
    if let Some((i, row)) = grid.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::Document(format!(
            "matrix `{name}` row {} has {} entries, expected {n}",
            i + 1,
            row.len()
        )));
    }
    Ok(())
}

fn check_labels(kind: &str, labels: &[String], n: usize) -> Result<()> {
    if labels.len() != n {
        return Err(Error::Document(format!(
            "{} {kind} labels given for {n} {kind}",
            labels.len()
        )));
    }
    if let Some(l) = labels.iter().find(|l| labels.iter().filter(|o| o == l).count() > 1) {
        return Err(Error::Document(format!("duplicate {kind} label `{l}`")));
    }
    Ok(())
}

impl ProblemDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(syntax)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem documents always serialize")
    }

    /// Checks structure and validates every matrix.
    pub fn into_problem(self, reciprocity_tol: f64) -> Result<DecisionProblem> {
        let labels = self.labels.unwrap_or_default();
        let m = self.criteria.len();
        if m == 0 {
            return Err(Error::Document("criteria matrix is empty".into()));
        }
        check_square("criteria", &self.criteria, m)?;
        if let Some(l) = &labels.criteria {
            check_labels("criteria", l, m)?;
        }

        let grids: Vec<Grid> = match self.alternatives {
            AlternativeGrids::List(list) => list,
            AlternativeGrids::Keyed(mut map) => {
                let names = labels.criteria.as_ref().ok_or_else(|| {
                    Error::Document(
                        "alternatives keyed by criterion need `labels.criteria`".into(),
                    )
                })?;
                let grids = names
                    .iter()
                    .map(|name| {
                        map.remove(name).ok_or_else(|| {
                            Error::Document(format!("no alternatives matrix for criterion `{name}`"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                if let Some(extra) = map.keys().next() {
                    return Err(Error::Document(format!(
                        "alternatives matrix `{extra}` does not match any criterion"
                    )));
                }
                grids
            }
        };
        if grids.len() != m {
            return Err(Error::Document(format!(
                "criteria matrix is {m}x{m} but {} alternative matrices were given",
                grids.len()
            )));
        }
        let n = grids[0].len();
        if n == 0 {
            return Err(Error::Document("alternatives matrix is empty".into()));
        }
        let criterion_labels = labels
            .criteria
            .clone()
            .unwrap_or_else(|| (1..=m).map(|k| format!("C{k}")).collect());
        for (grid, name) in grids.iter().zip(&criterion_labels) {
            check_square(&format!("alternatives[{name}]"), grid, n)?;
        }
        if let Some(l) = &labels.alternatives {
            check_labels("alternatives", l, n)?;
        }

        let criteria = PairwiseComparisonMatrix::validate(&grid_values(&self.criteria), reciprocity_tol)
            .map_err(|e| e.in_matrix("criteria"))?;
        let alternatives = grids
            .iter()
            .zip(&criterion_labels)
            .map(|(grid, name)| {
                PairwiseComparisonMatrix::validate(&grid_values(grid), reciprocity_tol)
                    .map_err(|e| e.in_matrix(format!("alternatives[{name}]")))
            })
            .collect::<Result<Vec<_>>>()?;
        DecisionProblem::new(
            criteria,
            alternatives,
            Some(criterion_labels),
            labels.alternatives,
        )
    }

    pub fn from_problem(problem: &DecisionProblem) -> Self {
        let grid = |m: &PairwiseComparisonMatrix| -> Grid {
            m.to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(Entry).collect())
                .collect()
        };
        Self {
            labels: Some(Labels {
                criteria: Some(problem.criterion_labels().to_vec()),
                alternatives: Some(problem.alternative_labels().to_vec()),
            }),
            criteria: grid(problem.criteria()),
            alternatives: AlternativeGrids::List(problem.alternatives().iter().map(grid).collect()),
        }
    }
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &str, reciprocity_tol: f64) -> Result<DecisionProblem> {
    ProblemDocument::from_json(text)?.into_problem(reciprocity_tol)
}

/// Serializes a problem in the format read by [`parse_problem`].
pub fn serialize_problem(problem: &DecisionProblem) -> String {
    ProblemDocument::from_problem(problem).to_json()
}

/// Parses and validates a single-matrix file, returning the matrix and its
/// labels (`A1..An` when absent).
pub fn parse_matrix(text: &str, reciprocity_tol: f64) -> Result<(PairwiseComparisonMatrix, Vec<String>)> {
    let doc: MatrixDocument = serde_json::from_str(text).map_err(syntax)?;
    let n = doc.matrix.len();
    if n == 0 {
        return Err(Error::Document("matrix is empty".into()));
    }
    check_square("matrix", &doc.matrix, n)?;
    let labels = match doc.labels {
        Some(l) => {
            check_labels("alternatives", &l, n)?;
            l
        }
        None => (1..=n).map(|i| format!("A{i}")).collect(),
    };
    let matrix = PairwiseComparisonMatrix::validate(&grid_values(&doc.matrix), reciprocity_tol)
        .map_err(|e| e.in_matrix("matrix"))?;
    Ok((matrix, labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairwise::RECIPROCITY_TOLERANCE;

    const SMALL: &str = r#"{
        "labels": { "criteria": ["P", "Q"], "alternatives": ["X", "Y", "Z"] },
        "criteria": [[1, 3], ["1/3", 1]],
        "alternatives": [
            [[1, "1/2", 2], [2, 1, 4], ["1/2", "1/4", 1]],
            [[1, 5, 1], ["1/5", 1, "1/5"], [1, 5, 1]]
        ]
    }"#;

    #[test]
    fn fractions() {
        assert_eq!(parse_fraction("1/7").unwrap(), 1.0 / 7.0);
        assert_eq!(parse_fraction(" 3 ").unwrap(), 3.0);
        assert_eq!(parse_fraction("6/3").unwrap(), 2.0);
        assert!(parse_fraction("0/3").is_err());
        assert!(parse_fraction("1/0").is_err());
        assert!(parse_fraction("-1/2").is_err());
        assert!(parse_fraction("1.5/2").is_err());
        assert!(parse_fraction("abc").is_err());
    }

    #[test]
    fn parses_small_problem() {
        let p = parse_problem(SMALL, RECIPROCITY_TOLERANCE).unwrap();
        assert_eq!(p.criterion_count(), 2);
        assert_eq!(p.alternative_count(), 3);
        assert_eq!(p.alternatives()[0].get(2, 1), 0.25);
        assert_eq!(p.alternative_labels(), &["X", "Y", "Z"]);
    }

    #[test]
    fn keyed_alternatives() {
        let text = r#"{
            "labels": { "criteria": ["P", "Q"] },
            "criteria": [[1, 3], ["1/3", 1]],
            "alternatives": {
                "Q": [[1, 5], ["1/5", 1]],
                "P": [[1, 2], ["1/2", 1]]
            }
        }"#;
        let p = parse_problem(text, RECIPROCITY_TOLERANCE).unwrap();
        assert_eq!(p.alternatives()[0].get(0, 1), 2.0);
        assert_eq!(p.alternatives()[1].get(0, 1), 5.0);
        assert_eq!(p.alternative_labels(), &["A1", "A2"]);
    }

    #[test]
    fn keyed_alternatives_need_labels() {
        let text = r#"{ "criteria": [[1]], "alternatives": { "P": [[1]] } }"#;
        assert!(matches!(
            parse_problem(text, RECIPROCITY_TOLERANCE),
            Err(Error::Document(_))
        ));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_problem("{\n  \"criteria\": [[1,]]\n}", RECIPROCITY_TOLERANCE).unwrap_err();
        match err {
            Error::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_problem(r#"{"criteria": [["1/0"]], "alternatives": [[[1]]]}"#, 1e-6)
            .unwrap_err();
        assert!(matches!(err, Error::Syntax { .. }), "{err:?}");
        assert!(err.to_string().contains("1/0"));
    }

    #[test]
    fn dimension_mismatch() {
        let text = r#"{
            "criteria": [[1, 2], ["1/2", 1]],
            "alternatives": [ [[1]], [[1]], [[1]] ]
        }"#;
        let err = parse_problem(text, RECIPROCITY_TOLERANCE).unwrap_err();
        assert!(err.is_parse_error(), "{err:?}");
    }

    #[test]
    fn zero_entry_is_validation_error() {
        let text = r#"{ "criteria": [[1]], "alternatives": [ [[1, 0], [1, 1]] ] }"#;
        let err = parse_problem(text, RECIPROCITY_TOLERANCE).unwrap_err();
        assert!(err.is_validation_error(), "{err:?}");
        assert!(matches!(err.root(), Error::NonPositiveEntry { row: 0, col: 1, .. }));
    }

    #[test]
    fn reciprocity_error_names_matrix() {
        let text = r#"{ "criteria": [[1, 2], [3, 1]], "alternatives": [ [[1]], [[1]] ] }"#;
        let err = parse_problem(text, RECIPROCITY_TOLERANCE).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("criteria") && msg.contains("(1,2)"), "{msg}");
    }

    #[test]
    fn round_trip() {
        let p = parse_problem(SMALL, RECIPROCITY_TOLERANCE).unwrap();
        let text = serialize_problem(&p);
        assert!(text.contains("\"1/4\""));
        let again = parse_problem(&text, RECIPROCITY_TOLERANCE).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn entry_serialization_is_exact() {
        for v in [1.0, 7.0, 1.0 / 7.0, 0.3, 2.5, 1.0 / 3.0, 1e-3] {
            let s = serde_json::to_string(&Entry(v)).unwrap();
            let back: Entry = serde_json::from_str(&s).unwrap();
            assert_eq!(back.0, v, "{s}");
        }
    }

    #[test]
    fn single_matrix_document() {
        let (m, labels) = parse_matrix(r#"{"matrix": [[1, "1/3"], [3, 1]]}"#, 1e-6).unwrap();
        assert_eq!(m.get(1, 0), 3.0);
        assert_eq!(labels, vec!["A1", "A2"]);
        assert!(parse_matrix(r#"{"matrix": [[1, 2], [2, 1]]}"#, 1e-6)
            .unwrap_err()
            .is_validation_error());
    }
}
