//! Pairwise comparison matrices, rating vectors and rankings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::max_algebra::{TropicalMatrix, TropicalVector};

/// Default relative tolerance on `a_ij * a_ji = 1`.
pub const RECIPROCITY_TOLERANCE: f64 = 1e-6;

/// Default relative tolerance for grouping ratings into ties.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Positive square matrix with `a_ij = 1/a_ji` and unit diagonal.
///
/// Entry `a_ij` says how many times item `i` is preferred to item `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseComparisonMatrix {
    matrix: TropicalMatrix,
}

impl PairwiseComparisonMatrix {
    /// Validates a square positive matrix against the reciprocity condition
    /// and forces the diagonal to exactly 1.
    pub fn validate(rows: &[Vec<f64>], tol: f64) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Shape("pairwise comparison matrix is empty".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "pairwise comparison matrix must be square: row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &value) in row.iter().enumerate() {
                if !(value.is_finite() && value > 0.0) {
                    return Err(Error::NonPositiveEntry { row: i, col: j, value });
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                let product = rows[i][j] * rows[j][i];
                if (product - 1.0).abs() > tol {
                    return Err(Error::Reciprocity {
                        row: i,
                        col: j,
                        product,
                        tol,
                    });
                }
            }
        }
        let mut data: Vec<f64> = rows.iter().flatten().copied().collect();
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Ok(Self {
            matrix: TropicalMatrix::from_vec(n, n, data)?,
        })
    }

    pub fn from_tropical(matrix: &TropicalMatrix, tol: f64) -> Result<Self> {
        Self::validate(&matrix.to_rows(), tol)
    }

    /// The rank-one consistent matrix `x_i / x_j`.
    pub fn consistent_from_vector(x: &RatingVector) -> Self {
        let v = x.values();
        let n = v.len();
        let mut data = Vec::with_capacity(n * n);
        for &xi in v {
            for &xj in v {
                data.push(xi / xj);
            }
        }
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Self {
            matrix: TropicalMatrix::from_vec(n, n, data)
                .expect("ratios of positive finite values are positive"),
        }
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix.get(i, j)
    }

    pub fn as_tropical(&self) -> &TropicalMatrix {
        &self.matrix
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.matrix.to_rows()
    }

    /// Checks transitivity `a_ij = a_ik * a_kj` for every triple, relative to
    /// `a_ij`.
    pub fn is_consistent(&self, tol: f64) -> bool {
        let n = self.size();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let a = self.get(i, j);
                (0..n).all(|k| (a - self.get(i, k) * self.get(k, j)).abs() <= tol * a)
            })
        })
    }
}

impl AsRef<TropicalMatrix> for PairwiseComparisonMatrix {
    fn as_ref(&self) -> &TropicalMatrix {
        &self.matrix
    }
}

/// How a [`RatingVector`] has been scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// Largest entry is 1.
    Max,
    /// Entries sum to 1.
    Sum,
    Raw,
}

/// Strictly positive vector of ratings (or criterion weights).
///
/// Ratings are only meaningful up to a positive factor; the normalization
/// tag records which representative is held.
#[derive(Debug, Clone, PartialEq)]
pub struct RatingVector {
    values: Vec<f64>,
    normalization: Normalization,
}

/// Criterion weights share the representation of ratings.
pub type WeightVector = RatingVector;

impl RatingVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Shape("rating vector must not be empty".into()));
        }
        if let Some((i, &v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(Error::Domain(format!(
                "rating {} must be strictly positive and finite, got {v}",
                i + 1
            )));
        }
        Ok(Self {
            values,
            normalization: Normalization::Raw,
        })
    }

    pub fn from_tropical(x: &TropicalVector) -> Result<Self> {
        Self::new(x.values().to_vec())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn to_tropical(&self) -> TropicalVector {
        TropicalVector::new(self.values.clone()).expect("ratings are positive and finite")
    }

    /// Rescaled so the largest entry is exactly 1.
    pub fn max_normalized(&self) -> Self {
        let max = self.values.iter().copied().fold(0.0, f64::max);
        Self {
            values: self
                .values
                .iter()
                .map(|&v| if v == max { 1.0 } else { v / max })
                .collect(),
            normalization: Normalization::Max,
        }
    }

    /// Rescaled so the entries sum to 1.
    pub fn sum_normalized(&self) -> Self {
        let sum: f64 = self.values.iter().sum();
        Self {
            values: self.values.iter().map(|&v| v / sum).collect(),
            normalization: Normalization::Sum,
        }
    }

    pub fn hilbert_seminorm(&self) -> f64 {
        let max = self.values.iter().copied().fold(0.0, f64::max);
        let min = self.values.iter().copied().fold(f64::INFINITY, f64::min);
        max / min
    }
}

/// Ordered partition of item indices, best first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ranking {
    classes: Vec<Vec<usize>>,
}

impl Ranking {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Indices in the top equivalence class.
    pub fn leaders(&self) -> &[usize] {
        &self.classes[0]
    }

    pub fn has_ties(&self) -> bool {
        self.classes.iter().any(|c| c.len() > 1)
    }

    /// 1-based position of each item's class, indexed by item.
    pub fn positions(&self) -> Vec<usize> {
        let n = self.classes.iter().map(Vec::len).sum();
        let mut pos = vec![0; n];
        for (rank, class) in self.classes.iter().enumerate() {
            for &i in class {
                pos[i] = rank + 1;
            }
        }
        pos
    }

    /// Renders the ranking as `B ≻ A ≡ C`.
    pub fn render<S: AsRef<str>>(&self, labels: &[S]) -> String {
        self.classes
            .iter()
            .map(|class| {
                class
                    .iter()
                    .map(|&i| labels[i].as_ref())
                    .collect::<Vec<_>>()
                    .join(" ≡ ")
            })
            .collect::<Vec<_>>()
            .join(" ≻ ")
    }

    pub fn labelled<S: AsRef<str>>(&self, labels: &[S]) -> Vec<Vec<String>> {
        self.classes
            .iter()
            .map(|c| c.iter().map(|&i| labels[i].as_ref().to_string()).collect())
            .collect()
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (1..=self.positions().len()).map(|i| i.to_string()).collect();
        f.write_str(&self.render(&labels))
    }
}

/// Sorts items by descending rating and groups ratings within `tie_tol`
/// (relative to the class leader) into one equivalence class.
pub fn rank_alternatives(x: &RatingVector, tie_tol: f64) -> Ranking {
    let v = x.values();
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[b].total_cmp(&v[a]).then(a.cmp(&b)));

    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in order {
        match classes.last_mut() {
            Some(class) if (v[class[0]] - v[i]) <= tie_tol * v[class[0]] => class.push(i),
            _ => classes.push(vec![i]),
        }
    }
    for class in &mut classes {
        class.sort_unstable();
    }
    Ranking { classes }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> Vec<Vec<f64>> {
        vec![
            vec![1.0, 1.0 / 3.0, 0.5],
            vec![3.0, 1.0, 3.0],
            vec![2.0, 1.0 / 3.0, 1.0],
        ]
    }

    #[test]
    fn accepts_school_matrix() {
        let a = PairwiseComparisonMatrix::validate(&a1(), RECIPROCITY_TOLERANCE).unwrap();
        assert_eq!(a.size(), 3);
    }

    #[test]
    fn rejects_non_reciprocal() {
        let err = PairwiseComparisonMatrix::validate(
            &[vec![1.0, 2.0], vec![3.0, 1.0]],
            1e-6,
        )
        .unwrap_err();
        assert!(err.to_string().contains("(1,2)"), "{err}");
        match err {
            Error::Reciprocity { row, col, product, .. } => {
                assert_eq!((row, col), (0, 1));
                assert_eq!(product, 6.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn accepts_exact_reciprocals() {
        PairwiseComparisonMatrix::validate(&[vec![1.0, 0.5], vec![2.0, 1.0]], 1e-6).unwrap();
    }

    #[test]
    fn rejects_nonpositive_and_nonsquare() {
        let err = PairwiseComparisonMatrix::validate(&[vec![1.0, 0.0], vec![2.0, 1.0]], 1e-6)
            .unwrap_err();
        assert!(matches!(err, Error::NonPositiveEntry { row: 0, col: 1, .. }));
        let err = PairwiseComparisonMatrix::validate(&[vec![1.0, 1.0]], 1e-6).unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
    }

    #[test]
    fn diagonal_forced_to_one() {
        let a = PairwiseComparisonMatrix::validate(
            &[vec![1.0 + 1e-9, 0.5], vec![2.0, 1.0 - 1e-9]],
            1e-6,
        )
        .unwrap();
        assert_eq!(a.get(0, 0), 1.0);
        assert_eq!(a.get(1, 1), 1.0);
    }

    #[test]
    fn consistent_matrices() {
        let ones = RatingVector::new(vec![1.0; 3]).unwrap();
        let m = PairwiseComparisonMatrix::consistent_from_vector(&ones);
        assert!(m.as_tropical().entries().iter().all(|&v| v == 1.0));

        let x = RatingVector::new(vec![2.0, 1.0]).unwrap();
        let m = PairwiseComparisonMatrix::consistent_from_vector(&x);
        assert_eq!(m.to_rows(), vec![vec![1.0, 2.0], vec![0.5, 1.0]]);

        let scaled = RatingVector::new(vec![8.0, 4.0]).unwrap();
        assert_eq!(PairwiseComparisonMatrix::consistent_from_vector(&scaled), m);
    }

    #[test]
    fn consistency_check() {
        let x = RatingVector::new(vec![3.0, 2.0, 1.0]).unwrap();
        assert!(PairwiseComparisonMatrix::consistent_from_vector(&x).is_consistent(1e-9));
        let a = PairwiseComparisonMatrix::validate(&a1(), 1e-6).unwrap();
        assert!(!a.is_consistent(1e-9));
        let two = PairwiseComparisonMatrix::validate(&[vec![1.0, 7.0], vec![1.0 / 7.0, 1.0]], 1e-6)
            .unwrap();
        assert!(two.is_consistent(1e-9));
    }

    #[test]
    fn rankings() {
        let labels = ["A", "B", "C"];
        let r = rank_alternatives(&RatingVector::new(vec![0.9705, 1.0, 0.6715]).unwrap(), 1e-9);
        assert_eq!(r.render(&labels), "B ≻ A ≻ C");
        let r = rank_alternatives(&RatingVector::new(vec![1.0, 0.8787, 1.0]).unwrap(), 1e-9);
        assert_eq!(r.render(&labels), "A ≡ C ≻ B");
        assert_eq!(r.positions(), vec![1, 2, 1]);
        assert!(r.has_ties());
        let r = rank_alternatives(&RatingVector::new(vec![0.4; 3]).unwrap(), 1e-9);
        assert_eq!(r.classes().len(), 1);
        assert_eq!(r.render(&labels), "A ≡ B ≡ C");
    }

    #[test]
    fn normalizations() {
        let x = RatingVector::new(vec![2.0, 1.0, 1.0]).unwrap();
        assert_eq!(x.max_normalized().values(), &[1.0, 0.5, 0.5]);
        assert_eq!(x.sum_normalized().values(), &[0.5, 0.25, 0.25]);
        assert_eq!(x.max_normalized().normalization(), Normalization::Max);
        assert!(RatingVector::new(vec![1.0, 0.0]).is_err());
    }
}
