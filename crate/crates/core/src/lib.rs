//! Absolute ratings of alternatives from pairwise comparison matrices.
//!
//! The main method is log-Chebyshev approximation solved in max-times
//! (tropical) algebra: for every criterion matrix the set of optimal
//! consistent approximations is generated by a Kleene star, and the best and
//! worst differentiating rating vectors are picked from it. The analytic
//! hierarchy process (principal eigenvectors) and weighted geometric means
//! are provided as baselines.
//!
//! ```
//! use tropical_rating::max_algebra::TropicalMatrix;
//! use tropical_rating::lca_solver::{solve_single, differentiate};
//!
//! let a = TropicalMatrix::from_rows(&[[1.0, 2.0], [0.5, 1.0]]).unwrap();
//! let g = solve_single(&a).unwrap();
//! assert!((g.lambda() - 1.0).abs() < 1e-12);
//! let r = differentiate(&g);
//! assert_eq!(r.best[0].values(), &[1.0, 0.5]);
//! ```

pub mod document;
pub mod error;
pub mod lca_solver;
pub mod max_algebra;
pub mod multicriteria;
pub mod pairwise;
pub mod report;

pub use error::{Error, Result};
pub use lca_solver::{GeneratingMatrix, DifferentiatingResult};
pub use max_algebra::{TropicalMatrix, TropicalVector};
pub use multicriteria::{ClassicalSolution, DecisionProblem, LcaSolution, SolveOptions};
pub use pairwise::{PairwiseComparisonMatrix, Ranking, RatingVector, WeightVector};

/// Crate version, echoed in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
