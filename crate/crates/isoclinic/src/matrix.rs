//! Dense complex matrices and the tolerance policy used everywhere else.
//!
//! [`ComplexMatrix`] is the universal carrier: codes, error operators,
//! projections and coefficient matrices are all plain dense matrices over
//! `Complex<f64>`. Values are immutable after construction and every
//! operation is a pure function, so everything here is safe to share
//! across threads.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Comparison policy: an absolute epsilon, optionally scaled by
/// `max(1, ‖tested object‖_F)` so that thresholds track the magnitude of
/// what is being compared.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    abs_eps: f64,
    rel: bool,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_eps: 1e-9,
            rel: true,
        }
    }
}

impl Tolerance {
    /// Relative tolerance: thresholds scale with `max(1, norm)`.
    pub fn new(abs_eps: f64) -> Result<Self> {
        if !abs_eps.is_finite() || abs_eps < 0.0 {
            return Err(Error::domain(format!(
                "tolerance must be a nonnegative finite number, got {abs_eps}"
            )));
        }
        Ok(Tolerance { abs_eps, rel: true })
    }

    /// Absolute tolerance: thresholds ignore the scale of the tested object.
    pub fn absolute(abs_eps: f64) -> Result<Self> {
        Ok(Tolerance {
            rel: false,
            ..Tolerance::new(abs_eps)?
        })
    }

    pub fn abs_eps(&self) -> f64 {
        self.abs_eps
    }

    pub fn is_relative(&self) -> bool {
        self.rel
    }

    /// Threshold for comparing an object of the given Frobenius norm.
    pub fn threshold(&self, scale_norm: f64) -> f64 {
        if self.rel {
            self.abs_eps * scale_norm.max(1.0)
        } else {
            self.abs_eps
        }
    }

    /// Numerical-rank cutoff: singular values at or below
    /// `abs_eps · max(1, σ_max)` are treated as zero.
    pub fn rank_cutoff(&self, sigma_max: f64) -> f64 {
        self.abs_eps * sigma_max.max(1.0)
    }
}

/// Dense complex matrix with finite entries and at least one row and column.
///
/// Arithmetic operators (`+`, `-`, `*`) panic on shape mismatch, like any
/// linear algebra library; boundary code validates shapes first and reports
/// [`Error::Domain`]. The checked [`ComplexMatrix::matmul`] is available
/// where a recoverable error is wanted.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<Complex64>,
}

impl ComplexMatrix {
    /// Builds from row-major entries.
    pub fn from_rows(rows: usize, cols: usize, entries: &[Complex64]) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::domain(
                "matrix must have at least one row and column",
            ));
        }
        if entries.len() != rows * cols {
            return Err(Error::domain(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let inner = DMatrix::from_row_slice(rows, cols, entries);
        Self::from_inner(inner)
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Complex64,
    ) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::domain(
                "matrix must have at least one row and column",
            ));
        }
        Self::from_inner(DMatrix::from_fn(rows, cols, &mut f))
    }

    /// Builds from real row-major entries.
    pub fn from_real_rows(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        let complex: Vec<Complex64> = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_rows(rows, cols, &complex)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "zero-dimensional matrix");
        ComplexMatrix {
            inner: DMatrix::zeros(rows, cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "zero-dimensional identity");
        ComplexMatrix {
            inner: DMatrix::identity(n, n),
        }
    }

    pub fn diagonal(values: &[Complex64]) -> Result<Self> {
        let n = values.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                values[i]
            } else {
                Complex64::default()
            }
        })
    }

    pub fn real_diagonal(values: &[f64]) -> Result<Self> {
        let complex: Vec<Complex64> = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::diagonal(&complex)
    }

    pub(crate) fn from_inner(inner: DMatrix<Complex64>) -> Result<Self> {
        if inner.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::domain("matrix entries must be finite"));
        }
        Ok(ComplexMatrix { inner })
    }

    pub(crate) fn inner(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn cols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.inner[(i, j)]
    }

    /// Entries in row-major order.
    pub fn row_major_entries(&self) -> Vec<Complex64> {
        let (r, c) = (self.rows(), self.cols());
        let mut out = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                out.push(self.inner[(i, j)]);
            }
        }
        out
    }

    /// Checked product, for callers at a trust boundary.
    pub fn matmul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols() != rhs.rows() {
            return Err(Error::domain(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                rhs.rows(),
                rhs.cols()
            )));
        }
        Ok(self * rhs)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix {
            inner: self.inner.adjoint(),
        }
    }

    /// Sum of diagonal entries. Panics on non-square input.
    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows()).map(|i| self.inner[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.norm()
    }

    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            inner: &self.inner * s,
        }
    }

    pub fn scale_real(&self, s: f64) -> ComplexMatrix {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Tensor (Kronecker) product.
    pub fn kron(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            inner: self.inner.kronecker(&rhs.inner),
        }
    }

    pub fn is_hermitian(&self, tol: Tolerance) -> bool {
        if !self.is_square() {
            return false;
        }
        let dev = (self - &self.adjoint()).frobenius_norm();
        dev <= tol.threshold(self.frobenius_norm())
    }

    /// Column `j` as an owned matrix (n×1).
    pub fn column(&self, j: usize) -> ComplexMatrix {
        ComplexMatrix {
            inner: DMatrix::from_column_slice(self.rows(), 1, self.inner.column(j).as_slice()),
        }
    }

    /// Horizontal stack of a contiguous column range `[from, to)`.
    pub fn columns(&self, from: usize, to: usize) -> ComplexMatrix {
        assert!(from < to && to <= self.cols(), "column range out of bounds");
        ComplexMatrix {
            inner: self.inner.columns(from, to - from).into_owned(),
        }
    }

    /// Vertical stack `[self; bottom]`. Panics when column counts differ.
    pub fn vstack(&self, bottom: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols(), bottom.cols(), "vstack column mismatch");
        let rows = self.rows() + bottom.rows();
        let m = DMatrix::from_fn(rows, self.cols(), |i, j| {
            if i < self.rows() {
                self.inner[(i, j)]
            } else {
                bottom.inner[(i - self.rows(), j)]
            }
        });
        ComplexMatrix { inner: m }
    }
}

/// Best scalar fit of `b ≈ α·p` for a projection `p` of the given rank:
/// the least-squares optimum `α = trace(b)/rank` together with the
/// Frobenius residual `‖b − α·p‖_F`.
pub fn projection_scalar_fit(
    b: &ComplexMatrix,
    projection: &ComplexMatrix,
    rank: usize,
) -> Result<(Complex64, f64)> {
    if !b.is_square() || b.rows() != projection.rows() || !projection.is_square() {
        return Err(Error::domain(format!(
            "scalar test needs equal square shapes, got {}x{} and {}x{}",
            b.rows(),
            b.cols(),
            projection.rows(),
            projection.cols()
        )));
    }
    if rank == 0 {
        return Err(Error::domain("scalar test against a rank-0 projection"));
    }
    let alpha = b.trace() / (rank as f64);
    let residual = (b - &projection.scale(alpha)).frobenius_norm();
    Ok((alpha, residual))
}

/// Decides whether `b` is a scalar multiple of the projection `p` within
/// tolerance, returning the unique candidate `α = trace(b)/rank` on success.
pub fn is_scalar_multiple_of(
    b: &ComplexMatrix,
    projection: &ComplexMatrix,
    rank: usize,
    tol: Tolerance,
) -> Result<Option<Complex64>> {
    let (alpha, residual) = projection_scalar_fit(b, projection, rank)?;
    if residual <= tol.threshold(b.frobenius_norm()) {
        Ok(Some(alpha))
    } else {
        Ok(None)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix({}x{})", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            write!(f, "\n  [")?;
            for j in 0..self.cols() {
                let c = self.get(i, j);
                write!(f, " {:.4}{:+.4}i", c.re, c.im)?;
            }
            write!(f, " ]")?;
        }
        Ok(())
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            inner: &self.inner * &rhs.inner,
        }
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            inner: &self.inner + &rhs.inner,
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix {
            inner: &self.inner - &rhs.inner,
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix {
            inner: -&self.inner,
        }
    }
}
