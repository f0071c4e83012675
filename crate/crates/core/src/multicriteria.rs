//! Multicriteria rating: the log-Chebyshev (LCA) pipeline and the two
//! classical baselines, AHP and weighted geometric means (WGM).
//!
//! A [`DecisionProblem`] holds an `m×m` criteria comparison matrix `C` and one
//! `n×n` alternatives comparison matrix per criterion.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lca_solver::{best_differentiating, solve_single, worst_normalized, GeneratingMatrix};
use crate::max_algebra::TropicalMatrix;
use crate::pairwise::{
    rank_alternatives, PairwiseComparisonMatrix, Ranking, RatingVector, WeightVector,
    TIE_TOLERANCE,
};

/// Power iteration stops once successive iterates differ by less than this
/// in max-norm.
pub const EIGEN_STEP_TOLERANCE: f64 = 1e-12;
pub const EIGEN_MAX_ITERATIONS: usize = 10_000;
/// Accepted residual `‖Av − λv‖∞ / (λ ‖v‖∞)` at convergence.
pub const EIGEN_RESIDUAL_TOLERANCE: f64 = 1e-10;

/// Criteria matrix plus one alternatives matrix per criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionProblem {
    criteria: PairwiseComparisonMatrix,
    alternatives: Vec<PairwiseComparisonMatrix>,
    criterion_labels: Vec<String>,
    alternative_labels: Vec<String>,
}

fn default_labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl DecisionProblem {
    /// Builds a problem, defaulting labels to `C1..Cm` and `A1..An`.
    pub fn new(
        criteria: PairwiseComparisonMatrix,
        alternatives: Vec<PairwiseComparisonMatrix>,
        criterion_labels: Option<Vec<String>>,
        alternative_labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let m = criteria.size();
        if alternatives.len() != m {
            return Err(Error::Shape(format!(
                "criteria matrix is {m}x{m} but {} alternative matrices were given",
                alternatives.len()
            )));
        }
        let n = alternatives[0].size();
        if let Some((k, a)) = alternatives.iter().enumerate().find(|(_, a)| a.size() != n) {
            return Err(Error::Shape(format!(
                "alternative matrix {} is {}x{}, expected {n}x{n}",
                k + 1,
                a.size(),
                a.size()
            )));
        }
        let criterion_labels = criterion_labels.unwrap_or_else(|| default_labels("C", m));
        let alternative_labels = alternative_labels.unwrap_or_else(|| default_labels("A", n));
        if criterion_labels.len() != m {
            return Err(Error::Shape(format!(
                "{} criterion labels for {m} criteria",
                criterion_labels.len()
            )));
        }
        if alternative_labels.len() != n {
            return Err(Error::Shape(format!(
                "{} alternative labels for {n} alternatives",
                alternative_labels.len()
            )));
        }
        Ok(Self {
            criteria,
            alternatives,
            criterion_labels,
            alternative_labels,
        })
    }

    pub fn criteria(&self) -> &PairwiseComparisonMatrix {
        &self.criteria
    }

    pub fn alternatives(&self) -> &[PairwiseComparisonMatrix] {
        &self.alternatives
    }

    pub fn criterion_labels(&self) -> &[String] {
        &self.criterion_labels
    }

    pub fn alternative_labels(&self) -> &[String] {
        &self.alternative_labels
    }

    pub fn criterion_count(&self) -> usize {
        self.criteria.size()
    }

    pub fn alternative_count(&self) -> usize {
        self.alternatives[0].size()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub tie_tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tie_tol: TIE_TOLERANCE,
        }
    }
}

/// `⊕_k w_k A_k`.
fn weighted_maximum(weights: &WeightVector, matrices: &[PairwiseComparisonMatrix]) -> Result<TropicalMatrix> {
    let mut acc = matrices[0].as_tropical().scale(weights.values()[0])?;
    for (w, a) in weights.values().iter().zip(matrices).skip(1) {
        acc = acc.tropical_add(&a.as_tropical().scale(*w)?)?;
    }
    Ok(acc)
}

/// Rating stage driven by one best differentiating weight vector.
#[derive(Debug, Clone, PartialEq)]
pub struct BestRatingStage {
    /// `w`, max-normalized.
    pub weights: WeightVector,
    /// Weighted maximum `P = ⊕_k w_k A_k`.
    pub weighted: TropicalMatrix,
    /// `Q = (μ^{-1} P)^*` and `μ`.
    pub generating: GeneratingMatrix,
    /// Best differentiating ratings from `Q`.
    pub ratings: Vec<RatingVector>,
    pub ranking: Ranking,
}

/// Rating stage driven by the worst differentiating weight vector.
#[derive(Debug, Clone, PartialEq)]
pub struct WorstRatingStage {
    /// `v`, max-normalized.
    pub weights: WeightVector,
    /// `R = ⊕_k v_k A_k`.
    pub weighted: TropicalMatrix,
    /// `S = (ν^{-1} R)^*` and `ν`.
    pub generating: GeneratingMatrix,
    pub ratings: RatingVector,
    pub ranking: Ranking,
    /// Whether `(1^T S)^-` already had unit max-norm.
    pub unit_norm: bool,
}

/// Output of the log-Chebyshev pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct LcaSolution {
    /// `D = (λ^{-1} C)^*` and `λ`.
    pub criteria_generating: GeneratingMatrix,
    /// All best differentiating weight vectors, in generating-column order.
    pub weights_best: Vec<WeightVector>,
    pub weights_worst: WeightVector,
    /// One stage per entry of `weights_best`; the first is the headline.
    pub best_stages: Vec<BestRatingStage>,
    pub worst_stage: WorstRatingStage,
    pub worst_weights_unit_norm: bool,
}

impl LcaSolution {
    pub fn lambda(&self) -> f64 {
        self.criteria_generating.lambda()
    }

    pub fn mu(&self) -> f64 {
        self.headline().generating.lambda()
    }

    pub fn nu(&self) -> f64 {
        self.worst_stage.generating.lambda()
    }

    pub fn headline(&self) -> &BestRatingStage {
        &self.best_stages[0]
    }

    pub fn ratings_best(&self) -> &[RatingVector] {
        &self.headline().ratings
    }

    pub fn ratings_worst(&self) -> &RatingVector {
        &self.worst_stage.ratings
    }
}

/// Runs the weighted-maximum log-Chebyshev procedure.
pub fn lca_solve(problem: &DecisionProblem, opts: &SolveOptions) -> Result<LcaSolution> {
    let criteria_generating = solve_single(problem.criteria().as_tropical())?;
    let (weights_best, _, _) = best_differentiating(&criteria_generating);
    let (weights_worst, worst_weights_unit_norm) = worst_normalized(&criteria_generating);

    let best_stages = weights_best
        .iter()
        .map(|w| {
            let weighted = weighted_maximum(w, problem.alternatives())?;
            let generating = solve_single(&weighted)?;
            let (ratings, _, _) = best_differentiating(&generating);
            let ranking = rank_alternatives(&ratings[0], opts.tie_tol);
            Ok(BestRatingStage {
                weights: w.clone(),
                weighted,
                generating,
                ratings,
                ranking,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let weighted = weighted_maximum(&weights_worst, problem.alternatives())?;
    let generating = solve_single(&weighted)?;
    let (ratings, unit_norm) = worst_normalized(&generating);
    let ranking = rank_alternatives(&ratings, opts.tie_tol);
    let worst_stage = WorstRatingStage {
        weights: weights_worst.clone(),
        weighted,
        generating,
        ratings,
        ranking,
        unit_norm,
    };

    Ok(LcaSolution {
        criteria_generating,
        weights_best,
        weights_worst,
        best_stages,
        worst_stage,
        worst_weights_unit_norm,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassicalMethod {
    Ahp,
    Wgm,
}

/// Result of AHP or WGM.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalSolution {
    pub method: ClassicalMethod,
    /// Sum-normalized criterion weights.
    pub criterion_weights: WeightVector,
    /// AHP: sum-normalized eigenvectors. WGM: raw row geometric means.
    pub per_criterion_vectors: Vec<RatingVector>,
    /// Sum-normalized ratings.
    pub ratings: RatingVector,
    pub ratings_max: RatingVector,
    /// AHP only: principal eigenvalue of `C` followed by those of `A_1..A_m`.
    pub principal_eigenvalues: Vec<f64>,
    pub ranking: Ranking,
}

fn matvec(a: &TropicalMatrix, v: &[f64]) -> Vec<f64> {
    (0..a.rows())
        .map(|i| a.row(i).iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Perron eigenvector (sum-normalized) and eigenvalue of a positive square
/// matrix, by power iteration from the uniform vector.
pub fn principal_eigenvector(a: &TropicalMatrix) -> Result<(RatingVector, f64)> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "eigenvector needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut v = vec![1.0 / n as f64; n];
    let mut step = f64::INFINITY;
    let mut iterations = 0;
    while iterations < EIGEN_MAX_ITERATIONS {
        iterations += 1;
        let mut next = matvec(a, &v);
        let sum: f64 = next.iter().sum();
        if !(sum.is_finite() && sum > 0.0) {
            break;
        }
        next.iter_mut().for_each(|x| *x /= sum);
        step = next
            .iter()
            .zip(&v)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        v = next;
        if step < EIGEN_STEP_TOLERANCE {
            break;
        }
    }

    let av = matvec(a, &v);
    let lambda: f64 = av.iter().sum();
    let vmax = v.iter().copied().fold(0.0, f64::max);
    let residual = av
        .iter()
        .zip(&v)
        .map(|(x, y)| (x - lambda * y).abs())
        .fold(0.0, f64::max)
        / (lambda * vmax);
    if step >= EIGEN_STEP_TOLERANCE || residual.is_nan() || residual > EIGEN_RESIDUAL_TOLERANCE {
        return Err(Error::Numerical {
            iterations,
            step,
            residual,
        });
    }
    let vector = RatingVector::new(v).map_err(|_| Error::Numerical {
        iterations,
        step,
        residual,
    })?;
    Ok((vector.sum_normalized(), lambda))
}

/// Row geometric means `(Π_j a_ij)^{1/n}`.
pub fn geometric_mean_vector(a: &TropicalMatrix) -> Result<RatingVector> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "geometric means need a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.cols() as f64;
    let values = (0..a.rows())
        .map(|i| (a.row(i).iter().map(|x| x.ln()).sum::<f64>() / n).exp())
        .collect();
    RatingVector::new(values)
}

/// AHP: eigenvector weights aggregated by a weighted arithmetic sum.
pub fn ahp_solve(problem: &DecisionProblem, opts: &SolveOptions) -> Result<ClassicalSolution> {
    let (weights, criteria_eigenvalue) = principal_eigenvector(problem.criteria().as_tropical())?;
    let mut principal_eigenvalues = vec![criteria_eigenvalue];
    let mut per_criterion_vectors = Vec::with_capacity(problem.criterion_count());
    for a in problem.alternatives() {
        let (x, ev) = principal_eigenvector(a.as_tropical())?;
        per_criterion_vectors.push(x);
        principal_eigenvalues.push(ev);
    }
    let n = problem.alternative_count();
    let mut sum = vec![0.0; n];
    for (w, x) in weights.values().iter().zip(&per_criterion_vectors) {
        for (acc, xi) in sum.iter_mut().zip(x.values()) {
            *acc += w * xi;
        }
    }
    let ratings = RatingVector::new(sum)?.sum_normalized();
    let ratings_max = ratings.max_normalized();
    let ranking = rank_alternatives(&ratings_max, opts.tie_tol);
    Ok(ClassicalSolution {
        method: ClassicalMethod::Ahp,
        criterion_weights: weights,
        per_criterion_vectors,
        ratings,
        ratings_max,
        principal_eigenvalues,
        ranking,
    })
}

/// WGM with an explicit free scale `u`; normalized views do not depend on it.
pub fn wgm_solve_scaled(
    problem: &DecisionProblem,
    opts: &SolveOptions,
    scale: f64,
) -> Result<ClassicalSolution> {
    let weights = geometric_mean_vector(problem.criteria().as_tropical())?.sum_normalized();
    let per_criterion_vectors = problem
        .alternatives()
        .iter()
        .map(|a| geometric_mean_vector(a.as_tropical()))
        .collect::<Result<Vec<_>>>()?;
    let n = problem.alternative_count();
    let mut log_ratings = vec![0.0; n];
    for (w, g) in weights.values().iter().zip(&per_criterion_vectors) {
        for (acc, gi) in log_ratings.iter_mut().zip(g.values()) {
            *acc += w * gi.ln();
        }
    }
    let raw = RatingVector::new(log_ratings.iter().map(|l| l.exp() * scale).collect())?;
    let ratings = raw.sum_normalized();
    let ratings_max = raw.max_normalized();
    let ranking = rank_alternatives(&ratings_max, opts.tie_tol);
    Ok(ClassicalSolution {
        method: ClassicalMethod::Wgm,
        criterion_weights: weights,
        per_criterion_vectors,
        ratings,
        ratings_max,
        principal_eigenvalues: Vec::new(),
        ranking,
    })
}

/// WGM: geometric-mean weights as exponents on row geometric means.
pub fn wgm_solve(problem: &DecisionProblem, opts: &SolveOptions) -> Result<ClassicalSolution> {
    wgm_solve_scaled(problem, opts, 1.0)
}
