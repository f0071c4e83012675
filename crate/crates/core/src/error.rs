use thiserror::Error;

/// Errors produced by the library.
///
/// Matrix positions are stored zero-based and displayed one-based, so
/// `row: 0, col: 1` renders as `(1,2)`.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("entry ({},{}) must be strictly positive and finite, got {value}", .row + 1, .col + 1)]
    NonPositiveEntry { row: usize, col: usize, value: f64 },

    #[error(
        "reciprocity violated at entry ({},{}): a_ij * a_ji = {product} (tolerance {tol})",
        .row + 1, .col + 1
    )]
    Reciprocity {
        row: usize,
        col: usize,
        product: f64,
        tol: f64,
    },

    #[error("Kleene star undefined: spectral radius {radius} exceeds 1")]
    Divergence { radius: f64 },

    #[error("power iteration did not converge after {iterations} iterations (last step {step:e}, residual {residual:e})")]
    Numerical {
        iterations: usize,
        step: f64,
        residual: f64,
    },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid document: {0}")]
    Document(String),

    #[error("matrix `{name}`: {source}")]
    InMatrix {
        name: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn in_matrix(self, name: impl Into<String>) -> Self {
        Error::InMatrix {
            name: name.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, looking through [`Error::InMatrix`] wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::InMatrix { source, .. } => source.root(),
            other => other,
        }
    }

    /// True for errors caused by document syntax or structure, as opposed to
    /// judgment values that fail validation.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self.root(),
            Error::Syntax { .. } | Error::Document(_) | Error::Shape(_)
        )
    }

    /// True for positivity and reciprocity violations in input data.
    pub fn is_validation_error(&self) -> bool {
        matches!(
            self.root(),
            Error::NonPositiveEntry { .. } | Error::Reciprocity { .. } | Error::Domain(_)
        )
    }

    pub fn is_numerical_error(&self) -> bool {
        matches!(self.root(), Error::Numerical { .. } | Error::Divergence { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
