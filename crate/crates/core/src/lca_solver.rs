//! Log-Chebyshev approximation of a single pairwise comparison matrix.
//!
//! Minimising `max_ij |log a_ij - log(x_i/x_j)|` over positive `x` is the
//! same as minimising `x^- ⊗ A ⊗ x = max_ij a_ij x_j / x_i`. The optimum is
//! the spectral radius `λ` of `A`, and every optimal vector has the form
//! `B ⊗ u` with `B = (λ^{-1} A)^*` and `u > 0`.
//!
//! Among the optimal vectors two representatives are extracted: the *best
//! differentiating* ones, which maximise the spread `max x / min x`, and the
//! *worst differentiating* one, which minimises it.

use crate::error::{Error, Result};
use crate::max_algebra::{TropicalMatrix, TropicalVector};
use crate::pairwise::RatingVector;

/// Relative tolerance for argmax ties, duplicate columns and dominance tests.
pub const SELECTION_TOLERANCE: f64 = 1e-9;

/// Generating matrix `B = (λ^{-1} A)^*` of the optimal solution set, together
/// with the optimal objective value `λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingMatrix {
    matrix: TropicalMatrix,
    lambda: f64,
}

impl GeneratingMatrix {
    pub fn matrix(&self) -> &TropicalMatrix {
        &self.matrix
    }

    /// The minimum of the log-Chebyshev objective.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Maximum relative approximation error of any optimal solution.
    pub fn approximation_error(&self) -> f64 {
        self.lambda - 1.0
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// The optimal vector `B ⊗ u`.
    pub fn solution(&self, u: &TropicalVector) -> Result<TropicalVector> {
        self.matrix.mul_vec(u)
    }
}

/// Best and worst differentiating solutions of one approximation problem.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferentiatingResult {
    /// Componentwise-minimal best vectors, in column order; usually one.
    pub best: Vec<RatingVector>,
    /// Generating-matrix column each best vector came from.
    pub best_columns: Vec<usize>,
    pub best_seminorm: f64,
    pub worst: RatingVector,
    pub worst_seminorm: f64,
    /// False when `(1^T B)^-` did not already have unit max-norm and was
    /// rescaled.
    pub worst_unit_norm: bool,
}

impl DifferentiatingResult {
    /// More than one best vector survived the minimality filter.
    pub fn tie_flag(&self) -> bool {
        self.best.len() > 1
    }
}

/// Evaluates `x^- ⊗ A ⊗ x`, i.e. `max_ij a_ij x_j / x_i`.
pub fn lc_objective(a: &TropicalMatrix, x: &RatingVector) -> Result<f64> {
    if !a.is_square() || a.rows() != x.len() {
        return Err(Error::Shape(format!(
            "cannot evaluate {}x{} matrix at vector of length {}",
            a.rows(),
            a.cols(),
            x.len()
        )));
    }
    let x = x.to_tropical();
    x.conjugate()?.dot(&a.mul_vec(&x)?)
}

/// Solves the log-Chebyshev problem for a positive square matrix.
///
/// The matrix need not be reciprocal: weighted maxima of several comparison
/// matrices are passed through here as well.
pub fn solve_single(a: &TropicalMatrix) -> Result<GeneratingMatrix> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "log-Chebyshev approximation needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let value = a.get(i, j);
            if value <= 0.0 {
                return Err(Error::NonPositiveEntry { row: i, col: j, value });
            }
        }
    }
    let lambda = a.spectral_radius()?;
    let matrix = a.scale(1.0 / lambda)?.kleene_star()?;
    Ok(GeneratingMatrix { matrix, lambda })
}

fn approx_eq(a: &[f64], b: &[f64]) -> bool {
    a.iter()
        .zip(b)
        .all(|(x, y)| (x - y).abs() <= SELECTION_TOLERANCE * x.abs().max(y.abs()))
}

/// `lhs` is below `rhs` componentwise and strictly below somewhere.
fn dominated_by(rhs: &[f64], lhs: &[f64]) -> bool {
    let le = lhs
        .iter()
        .zip(rhs)
        .all(|(l, r)| *l <= r + SELECTION_TOLERANCE * r.abs());
    let lt = lhs
        .iter()
        .zip(rhs)
        .any(|(l, r)| *l < r - SELECTION_TOLERANCE * r.abs());
    le && lt
}

/// Best differentiating vectors: max-normalized columns `b_k / ‖b_k‖` with
/// the largest `‖b_k‖ ‖b_k^-‖`, reduced to those not componentwise above
/// another candidate.
///
/// Returns the vectors, their source columns and the attained seminorm.
pub fn best_differentiating(g: &GeneratingMatrix) -> (Vec<RatingVector>, Vec<usize>, f64) {
    let b = g.matrix();
    let columns: Vec<TropicalVector> = (0..b.cols()).map(|j| b.column(j)).collect();
    let scores: Vec<f64> = columns
        .iter()
        .map(|c| c.norm() * c.conjugate().map_or(0.0, |cc| cc.norm()))
        .collect();
    let best_score = scores.iter().copied().fold(0.0, f64::max);

    let mut candidates: Vec<(usize, RatingVector)> = Vec::new();
    for (j, column) in columns.iter().enumerate() {
        if scores[j] < best_score * (1.0 - SELECTION_TOLERANCE) {
            continue;
        }
        let v = RatingVector::from_tropical(column)
            .expect("columns of a generating matrix are positive")
            .max_normalized();
        if !candidates
            .iter()
            .any(|(_, seen)| approx_eq(seen.values(), v.values()))
        {
            candidates.push((j, v));
        }
    }

    let minimal: Vec<(usize, RatingVector)> = candidates
        .iter()
        .filter(|(_, v)| {
            !candidates
                .iter()
                .any(|(_, u)| dominated_by(v.values(), u.values()))
        })
        .cloned()
        .collect();

    let (cols, vectors) = minimal.into_iter().unzip();
    (vectors, cols, best_score)
}

/// Worst differentiating vector `(1^T B)^-`: entry `j` is the reciprocal of
/// the largest entry in column `j`.
pub fn worst_differentiating(g: &GeneratingMatrix) -> RatingVector {
    let maxima = g.matrix().column_maxima();
    let values = maxima.values().iter().map(|&m| 1.0 / m).collect();
    RatingVector::new(values).expect("columns of a generating matrix are positive")
}

/// The worst differentiating vector rescaled to unit max-norm, and whether
/// it already had unit max-norm before rescaling.
pub fn worst_normalized(g: &GeneratingMatrix) -> (RatingVector, bool) {
    let raw = worst_differentiating(g);
    let norm = raw.values().iter().copied().fold(0.0, f64::max);
    let unit = (norm - 1.0).abs() <= SELECTION_TOLERANCE;
    (raw.max_normalized(), unit)
}

/// Extracts both best and worst differentiating solutions.
pub fn differentiate(g: &GeneratingMatrix) -> DifferentiatingResult {
    let (best, best_columns, best_seminorm) = best_differentiating(g);
    let (worst, worst_unit_norm) = worst_normalized(g);
    let worst_seminorm = worst.hilbert_seminorm();
    DifferentiatingResult {
        best,
        best_columns,
        best_seminorm,
        worst,
        worst_seminorm,
        worst_unit_norm,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairwise::PairwiseComparisonMatrix;

    fn pcm(rows: &[&[f64]]) -> TropicalMatrix {
        let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        PairwiseComparisonMatrix::validate(&rows, 1e-6)
            .unwrap()
            .as_tropical()
            .clone()
    }

    fn a1() -> TropicalMatrix {
        pcm(&[
            &[1.0, 1.0 / 3.0, 0.5],
            &[3.0, 1.0, 3.0],
            &[2.0, 1.0 / 3.0, 1.0],
        ])
    }

    fn consistent(x: &[f64]) -> TropicalMatrix {
        PairwiseComparisonMatrix::consistent_from_vector(&RatingVector::new(x.to_vec()).unwrap())
            .as_tropical()
            .clone()
    }

    #[test]
    fn objective_of_consistent_fit_is_one() {
        let x = RatingVector::new(vec![3.0, 2.0, 1.0]).unwrap();
        let a = consistent(x.values());
        assert!((lc_objective(&a, &x).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn objective_at_uniform_vector_is_max_entry() {
        let x = RatingVector::new(vec![1.0; 3]).unwrap();
        assert_eq!(lc_objective(&a1(), &x).unwrap(), 3.0);
        let short = RatingVector::new(vec![1.0; 2]).unwrap();
        assert!(matches!(lc_objective(&a1(), &short), Err(Error::Shape(_))));
    }

    #[test]
    fn consistent_input_generates_single_ray() {
        let g = solve_single(&consistent(&[3.0, 2.0, 1.0])).unwrap();
        assert!((g.lambda() - 1.0).abs() < 1e-15);
        for j in 0..3 {
            let c = g.matrix().column(j);
            let ratio = c.get(0) / 3.0;
            for (k, want) in [3.0, 2.0, 1.0].iter().enumerate() {
                assert!((c.get(k) - want * ratio).abs() < 1e-12);
            }
        }
        let r = differentiate(&g);
        assert_eq!(r.best.len(), 1);
        let want = [1.0, 2.0 / 3.0, 1.0 / 3.0];
        assert!(approx_eq(r.best[0].values(), &want));
        assert!(approx_eq(r.worst.values(), &want));
        assert!(r.worst_unit_norm);
    }

    #[test]
    fn generating_columns_are_optimal() {
        let a = a1();
        let g = solve_single(&a).unwrap();
        for j in 0..3 {
            let b = RatingVector::from_tropical(&g.matrix().column(j)).unwrap();
            let obj = lc_objective(&a, &b).unwrap();
            assert!((obj - g.lambda()).abs() <= 1e-9 * g.lambda());
        }
        for i in 0..3 {
            assert!((g.matrix().get(i, i) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn best_keeps_only_minimal_candidates() {
        let b = TropicalMatrix::from_rows(&[
            [1.0, 0.5, 0.25],
            [0.5, 1.0, 0.25],
            [0.25, 0.25, 1.0],
        ])
        .unwrap();
        let g = GeneratingMatrix {
            matrix: b,
            lambda: 1.0,
        };
        let (vectors, cols, score) = best_differentiating(&g);
        // All three columns score 4 and are pairwise incomparable.
        assert_eq!(score, 4.0);
        assert_eq!(cols, vec![0, 1, 2]);
        assert_eq!(vectors.len(), 3);
    }

    #[test]
    fn best_drops_dominating_candidate() {
        let b = TropicalMatrix::from_rows(&[[1.0, 1.0], [0.5, 0.5 + 1e-3]]).unwrap();
        let g = GeneratingMatrix {
            matrix: b,
            lambda: 1.0,
        };
        let (vectors, cols, _) = best_differentiating(&g);
        assert_eq!(cols, vec![0]);
        assert_eq!(vectors[0].values(), &[1.0, 0.5]);
    }

    #[test]
    fn duplicate_columns_are_merged() {
        let b = TropicalMatrix::from_rows(&[[1.0, 2.0], [0.5, 1.0]]).unwrap();
        let g = GeneratingMatrix {
            matrix: b,
            lambda: 1.0,
        };
        let (vectors, cols, _) = best_differentiating(&g);
        assert_eq!(vectors.len(), 1);
        assert_eq!(cols, vec![0]);
    }

    #[test]
    fn solve_single_rejects_bad_input() {
        let wide = TropicalMatrix::from_rows(&[[1.0, 2.0]]).unwrap();
        assert!(matches!(solve_single(&wide), Err(Error::Shape(_))));
        let zero = TropicalMatrix::from_rows(&[[1.0, 0.0], [1.0, 1.0]]).unwrap();
        assert!(matches!(
            solve_single(&zero),
            Err(Error::NonPositiveEntry { row: 0, col: 1, .. })
        ));
    }
}
