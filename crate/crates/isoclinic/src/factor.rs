//! Factorizations: SVD, Hermitian eigendecomposition, polar partial
//! isometries, and rank-revealing orthonormalization.
//!
//! The SVD and eigensolver are backed by `nalgebra`; everything downstream
//! consumes them only through the contracts here (descending order,
//! orthonormal factors, explicit convergence errors).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, Tolerance};

const MAX_ITER: usize = 2000;

/// Singular value decomposition `a = left · diag(σ) · right*`.
///
/// `left` (m×k) and `right` (n×k) have orthonormal columns and the
/// singular values are nonnegative and descending, k = min(m, n).
/// Reconstruction holds to 1e-12·max(1, ‖a‖_F) for well-scaled input;
/// entries spread across many orders of magnitude within one matrix
/// degrade the backward error of the underlying solver.
#[derive(Debug, Clone)]
pub struct Svd {
    pub left: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub right: ComplexMatrix,
}

pub fn svd(a: &ComplexMatrix) -> Result<Svd> {
    let decomp = a
        .inner()
        .clone()
        .try_svd(true, true, f64::EPSILON, MAX_ITER)
        .ok_or_else(|| {
            Error::Factorization("singular value decomposition did not converge".into())
        })?;
    let left = decomp
        .u
        .ok_or_else(|| Error::Factorization("svd returned no left factor".into()))?;
    let v_t = decomp
        .v_t
        .ok_or_else(|| Error::Factorization("svd returned no right factor".into()))?;
    let singular_values: Vec<f64> = decomp.singular_values.iter().copied().collect();
    debug_assert!(singular_values.windows(2).all(|w| w[0] >= w[1] - 1e-13));
    Ok(Svd {
        left: ComplexMatrix::from_inner(left)?,
        singular_values,
        right: ComplexMatrix::from_inner(v_t.adjoint())?,
    })
}

/// Eigendecomposition `a = Q · diag(λ) · Q*` of a Hermitian matrix, with
/// real eigenvalues sorted descending and unitary `Q`.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

pub fn hermitian_eig(a: &ComplexMatrix, tol: Tolerance) -> Result<HermitianEig> {
    if !a.is_square() {
        return Err(Error::domain(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if !a.is_hermitian(tol) {
        return Err(Error::domain("matrix is not Hermitian within tolerance"));
    }
    // Symmetrize to remove roundoff skew before handing to the solver.
    let h = (a + &a.adjoint()).scale_real(0.5);
    let eig = nalgebra::SymmetricEigen::try_new(h.inner().clone(), f64::EPSILON, MAX_ITER)
        .ok_or_else(|| Error::Factorization("Hermitian eigensolver did not converge".into()))?;
    let n = a.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].partial_cmp(&eig.eigenvalues[i]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(HermitianEig {
        eigenvalues,
        eigenvectors: ComplexMatrix::from_inner(vectors)?,
    })
}

/// Partial isometry `U` from the polar decomposition `a = U·|a|`, built
/// from the SVD by discarding singular values at or below the rank cutoff.
///
/// `U*U` projects onto the support of `a` and `UU*` onto its range. The
/// zero matrix yields the empty partial isometry `U = 0`.
pub fn polar_partial_isometry(a: &ComplexMatrix, tol: Tolerance) -> Result<ComplexMatrix> {
    let Svd {
        left,
        singular_values,
        right,
    } = svd(a)?;
    let sigma_max = singular_values.first().copied().unwrap_or(0.0);
    let cutoff = tol.rank_cutoff(sigma_max);
    let rank = singular_values.iter().take_while(|&&s| s > cutoff).count();
    if rank == 0 {
        return Ok(ComplexMatrix::zeros(a.rows(), a.cols()));
    }
    let u = left.columns(0, rank);
    let v = right.columns(0, rank);
    Ok(&u * &v.adjoint())
}

/// Orthonormal basis of the column span together with the numerical rank,
/// keeping the leading directions of the input columns (modified
/// Gram-Schmidt with reorthogonalization).
///
/// Errors when the span is numerically zero.
pub fn orthonormal_basis(a: &ComplexMatrix, tol: Tolerance) -> Result<(ComplexMatrix, usize)> {
    let n = a.rows();
    let max_col_norm = (0..a.cols())
        .map(|j| a.column(j).frobenius_norm())
        .fold(0.0f64, f64::max);
    let cutoff = tol.rank_cutoff(max_col_norm);
    let mut basis: Vec<ComplexMatrix> = Vec::new();
    for j in 0..a.cols() {
        let mut v = a.column(j);
        for _ in 0..2 {
            for q in &basis {
                let coeff = (&q.adjoint() * &v).get(0, 0);
                v = &v - &q.scale(coeff);
            }
        }
        let norm = v.frobenius_norm();
        if norm > cutoff {
            basis.push(v.scale_real(1.0 / norm));
        }
    }
    if basis.is_empty() {
        return Err(Error::domain("column span is numerically zero"));
    }
    let rank = basis.len();
    let q = ComplexMatrix::from_fn(n, rank, |i, j| basis[j].get(i, 0))?;
    Ok((q, rank))
}

/// Inverse of a Hermitian positive definite matrix through its
/// eigendecomposition, which also enforces definiteness.
pub fn hpd_inverse(a: &ComplexMatrix, tol: Tolerance) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(a, tol)?;
    let largest = eig.eigenvalues[0];
    let smallest = *eig.eigenvalues.last().unwrap();
    if smallest <= tol.rank_cutoff(largest.max(0.0)) {
        return Err(Error::domain(format!(
            "matrix is not positive definite (smallest eigenvalue {smallest:.3e})"
        )));
    }
    let inverted: Vec<Complex64> = eig
        .eigenvalues
        .iter()
        .map(|&l| Complex64::new(1.0 / l, 0.0))
        .collect();
    let d = ComplexMatrix::diagonal(&inverted)?;
    let q = &eig.eigenvectors;
    Ok(&(q * &d) * &q.adjoint())
}

/// Principal square root of a Hermitian positive semidefinite matrix.
pub fn hermitian_psd_sqrt(a: &ComplexMatrix, tol: Tolerance) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(a, tol)?;
    let floor = -tol.threshold(a.frobenius_norm());
    for &lam in &eig.eigenvalues {
        if lam < floor {
            return Err(Error::domain("matrix is not positive semidefinite"));
        }
    }
    let roots: Vec<Complex64> = eig
        .eigenvalues
        .iter()
        .map(|&l| Complex64::new(l.max(0.0).sqrt(), 0.0))
        .collect();
    let d = ComplexMatrix::diagonal(&roots)?;
    let q = &eig.eigenvectors;
    Ok(&(q * &d) * &q.adjoint())
}
