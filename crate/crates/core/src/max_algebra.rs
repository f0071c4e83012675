//! Dense matrices and vectors over the max-times semiring.
//!
//! Entries are nonnegative reals. Addition is `max`, multiplication is the
//! ordinary product, the zero is `0` and the unit is `1`. Everything here is a
//! pure function of its inputs.

use std::fmt;

use crate::error::{Error, Result};

/// Tolerance on the spectral radius accepted by [`TropicalMatrix::kleene_star`].
pub const STAR_TOLERANCE: f64 = 1e-9;

fn check_entry(row: usize, col: usize, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "entry ({},{}) must be finite and nonnegative, got {value}",
            row + 1,
            col + 1
        )))
    }
}

/// Column vector with nonnegative finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct TropicalVector {
    values: Vec<f64>,
}

impl TropicalVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Shape("vector must have at least one entry".into()));
        }
        for (i, &v) in values.iter().enumerate() {
            check_entry(i, 0, v)?;
        }
        Ok(Self { values })
    }

    /// The all-ones vector.
    pub fn ones(len: usize) -> Self {
        Self {
            values: vec![1.0; len.max(1)],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// Multiplicative conjugate transpose: `1/x_j` for nonzero entries, zero
    /// stays zero. The result is returned as a vector holding the row's
    /// entries.
    pub fn conjugate(&self) -> Result<Self> {
        if self.values.iter().all(|&v| v == 0.0) {
            return Err(Error::Domain(
                "conjugate of the zero vector is undefined".into(),
            ));
        }
        Ok(Self {
            values: self
                .values
                .iter()
                .map(|&v| if v == 0.0 { 0.0 } else { 1.0 / v })
                .collect(),
        })
    }

    /// Tropical norm: the largest entry.
    pub fn norm(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Ratio of the largest to the smallest entry.
    pub fn hilbert_seminorm(&self) -> Result<f64> {
        if let Some(i) = self.values.iter().position(|&v| v == 0.0) {
            return Err(Error::Domain(format!(
                "Hilbert seminorm needs a strictly positive vector, entry {} is zero",
                i + 1
            )));
        }
        // ‖x‖ ‖x^-‖ = max / min
        let min = self.values.iter().copied().fold(f64::INFINITY, f64::min);
        Ok(self.norm() / min)
    }

    pub fn scale(&self, s: f64) -> Result<Self> {
        if !(s.is_finite() && s >= 0.0) {
            return Err(Error::Domain(format!(
                "scalar must be finite and nonnegative, got {s}"
            )));
        }
        Ok(Self {
            values: self.values.iter().map(|&v| v * s).collect(),
        })
    }

    /// Tropical inner product `self^T ⊗ other`, i.e. `max_i self_i * other_i`.
    pub fn dot(&self, other: &TropicalVector) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::Shape(format!(
                "vector lengths differ: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .fold(0.0, f64::max))
    }
}

/// Dense row-major matrix with nonnegative finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct TropicalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl TropicalMatrix {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape("matrix must have at least one row and column".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        for (k, &v) in data.iter().enumerate() {
            check_entry(k / cols, k % cols, v)?;
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != ncols {
                return Err(Error::Shape(format!(
                    "row {} has {} entries, expected {ncols}",
                    i + 1,
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::from_vec(nrows, ncols, data)
    }

    pub fn identity(n: usize) -> Self {
        let n = n.max(1);
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Self {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        let (rows, cols) = (rows.max(1), cols.max(1));
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> TropicalVector {
        TropicalVector {
            values: (0..self.rows).map(|i| self.get(i, j)).collect(),
        }
    }

    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn require_square(&self, what: &str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::Shape(format!(
                "{what} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    /// Entrywise maximum `self ⊕ other`.
    pub fn tropical_add(&self, other: &TropicalMatrix) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{} matrices",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.max(*b))
                .collect(),
        })
    }

    /// Max-times product `self ⊗ other`.
    pub fn tropical_mul(&self, other: &TropicalMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = vec![0.0; self.rows * other.cols];
        for i in 0..self.rows {
            let lhs = self.row(i);
            for j in 0..other.cols {
                data[i * other.cols + j] = lhs
                    .iter()
                    .enumerate()
                    .map(|(k, a)| a * other.get(k, j))
                    .fold(0.0, f64::max);
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Max-times matrix-vector product `self ⊗ x`.
    pub fn mul_vec(&self, x: &TropicalVector) -> Result<TropicalVector> {
        if self.cols != x.len() {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} matrix by vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok(TropicalVector {
            values: (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(x.values())
                        .map(|(a, b)| a * b)
                        .fold(0.0, f64::max)
                })
                .collect(),
        })
    }

    pub fn scale(&self, s: f64) -> Result<Self> {
        if !(s.is_finite() && s >= 0.0) {
            return Err(Error::Domain(format!(
                "scalar must be finite and nonnegative, got {s}"
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| v * s).collect(),
        })
    }

    /// Multiplicative conjugate transpose: entry `(i,j)` is `1/a_ji`, with
    /// zeros kept as zeros.
    pub fn conjugate(&self) -> Result<Self> {
        if self.data.iter().all(|&v| v == 0.0) {
            return Err(Error::Domain(
                "conjugate of the zero matrix is undefined".into(),
            ));
        }
        let mut data = vec![0.0; self.rows * self.cols];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                data[j * self.rows + i] = if v == 0.0 { 0.0 } else { 1.0 / v };
            }
        }
        Ok(Self {
            rows: self.cols,
            cols: self.rows,
            data,
        })
    }

    /// `A^p` with `A^0 = I`.
    pub fn power(&self, p: u32) -> Result<Self> {
        let n = self.require_square("matrix power")?;
        let mut acc = Self::identity(n);
        for _ in 0..p {
            acc = acc.tropical_mul(self)?;
        }
        Ok(acc)
    }

    /// Largest diagonal entry.
    pub fn trace(&self) -> Result<f64> {
        let n = self.require_square("trace")?;
        Ok((0..n).map(|i| self.get(i, i)).fold(0.0, f64::max))
    }

    /// `max_{k=1..n} tr(A^k)^{1/k}`, the maximum geometric cycle mean.
    pub fn spectral_radius(&self) -> Result<f64> {
        let n = self.require_square("spectral radius")?;
        let mut power = self.clone();
        let mut radius = power.trace()?;
        for k in 2..=n {
            power = power.tropical_mul(self)?;
            radius = radius.max(power.trace()?.powf(1.0 / k as f64));
        }
        Ok(radius)
    }

    /// Kleene star `I ⊕ A ⊕ ... ⊕ A^{n-1}`, defined when the spectral radius
    /// is at most one (up to [`STAR_TOLERANCE`]).
    pub fn kleene_star(&self) -> Result<Self> {
        self.kleene_star_with_tolerance(STAR_TOLERANCE)
    }

    pub fn kleene_star_with_tolerance(&self, tol: f64) -> Result<Self> {
        let n = self.require_square("Kleene star")?;
        let radius = self.spectral_radius()?;
        if radius > 1.0 + tol {
            return Err(Error::Divergence { radius });
        }
        let mut star = Self::identity(n);
        let mut power = Self::identity(n);
        for _ in 1..n {
            power = power.tropical_mul(self)?;
            star = star.tropical_add(&power)?;
        }
        Ok(star)
    }

    /// Tropical norm: the largest entry.
    pub fn norm(&self) -> f64 {
        self.data.iter().copied().fold(0.0, f64::max)
    }

    /// The row vector `1^T ⊗ A`, i.e. the maximum of each column.
    pub fn column_maxima(&self) -> TropicalVector {
        TropicalVector {
            values: (0..self.cols)
                .map(|j| (0..self.rows).map(|i| self.get(i, j)).fold(0.0, f64::max))
                .collect(),
        }
    }
}

impl fmt::Display for TropicalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let precision = f.precision().unwrap_or(4);
        for i in 0..self.rows {
            let cells: Vec<String> = self
                .row(i)
                .iter()
                .map(|v| format!("{v:.precision$}"))
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
