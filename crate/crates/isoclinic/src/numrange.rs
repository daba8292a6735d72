//! Rank-k numerical ranges of Hermitian matrices and the two-sided
//! compression test for projection pairs.
//!
//! For Hermitian A with eigenvalues a₁ ≥ … ≥ a_n, the rank-k numerical
//! range Λ_k(A) = {λ : R·A·R = λ·R for some rank-k projection R} is the
//! interval [a_{n−k+1}, a_k], empty when the endpoints cross. For a rank-l
//! projection P on ℂⁿ this gives Λ_k(P) = [0, 1] whenever k ≤ min{l, n−l};
//! [`projection_witness`] constructs an attaining projection for any λ in
//! that range.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::hermitian_eig;
use crate::matrix::{ComplexMatrix, Tolerance};
use crate::subspace::{sandwich_scalar_fit, OrthProjection};

/// Interval form of a rank-k numerical range of a Hermitian matrix.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NumRangeInterval {
    pub k: usize,
    pub lower: f64,
    pub upper: f64,
    pub empty: bool,
}

/// Λ_k of a Hermitian matrix via its eigenvalues: [a_{n−k+1}, a_k].
pub fn hermitian_rank_k_range(
    a: &ComplexMatrix,
    k: usize,
    tol: Tolerance,
) -> Result<NumRangeInterval> {
    if !a.is_square() {
        return Err(Error::domain("numerical range needs a square matrix"));
    }
    let n = a.rows();
    if k == 0 || k > n {
        return Err(Error::domain(format!("k must lie in 1..={n}, got {k}")));
    }
    let eig = hermitian_eig(a, tol)?;
    let upper = eig.eigenvalues[k - 1];
    let lower = eig.eigenvalues[n - k];
    Ok(NumRangeInterval {
        k,
        lower,
        upper,
        empty: lower > upper,
    })
}

/// Rank-k projection R with R·P·R = λ·R, built as R = W·W* for
/// w_j = √λ·u_j + √(1−λ)·v_j with u_j in range(P) and v_j in ker(P).
pub fn projection_witness(
    p: &OrthProjection,
    k: usize,
    lambda: f64,
    tol: Tolerance,
) -> Result<OrthProjection> {
    let n = p.ambient_dim();
    let rank = p.rank();
    let limit = rank.min(n - rank);
    if k == 0 || k > limit {
        return Err(Error::domain(format!(
            "witness rank k must lie in 1..={limit} for a rank-{rank} projection on C^{n}, got {k}"
        )));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::domain(format!(
            "lambda must lie in [0, 1], got {lambda}"
        )));
    }
    let eig = hermitian_eig(p.matrix(), tol)?;
    // eigenvalues descend, so the leading columns span the range and the
    // trailing ones the kernel
    let u = eig.eigenvectors.columns(0, k);
    let v = eig.eigenvectors.columns(rank, rank + k);
    let w = &u.scale_real(lambda.sqrt()) + &v.scale_real((1.0 - lambda).sqrt());
    OrthProjection::new(&w * &w.adjoint(), tol)
}

/// Two-sided compression report for a pair of same-rank projections.
///
/// `mu` is the shared least-squares scalar trace(P·Q·P)/rank, which by
/// trace cyclicity equals the fit for Q·P·Q. The pair of subspaces is
/// isoclinic exactly when either one-sided test holds, so `pqp_holds` and
/// `qpq_holds` must agree; `agree` records that.
#[derive(Debug, Clone, Serialize)]
pub struct PairSymmetryReport {
    pub mu: f64,
    pub pqp_holds: bool,
    pub qpq_holds: bool,
    pub pqp_residual: f64,
    pub qpq_residual: f64,
    pub agree: bool,
    pub isoclinic: bool,
}

pub fn pair_symmetry_check(
    p: &OrthProjection,
    q: &OrthProjection,
    tol: Tolerance,
) -> Result<PairSymmetryReport> {
    if p.ambient_dim() != q.ambient_dim() {
        return Err(Error::domain("projections act on different spaces"));
    }
    if p.rank() != q.rank() {
        return Err(Error::domain(format!(
            "projections have different ranks: {} vs {}",
            p.rank(),
            q.rank()
        )));
    }
    let (mu_p, pqp_residual) = sandwich_scalar_fit(p, q)?;
    let (mu_q, qpq_residual) = sandwich_scalar_fit(q, p)?;
    debug_assert!((mu_p - mu_q).norm() < 1e-10);
    let pqp = &(p.matrix() * q.matrix()) * p.matrix();
    let qpq = &(q.matrix() * p.matrix()) * q.matrix();
    let pqp_holds = pqp_residual <= tol.threshold(pqp.frobenius_norm());
    let qpq_holds = qpq_residual <= tol.threshold(qpq.frobenius_norm());
    Ok(PairSymmetryReport {
        mu: mu_p.re,
        pqp_holds,
        qpq_holds,
        pqp_residual,
        qpq_residual,
        agree: pqp_holds == qpq_holds,
        isoclinic: pqp_holds && qpq_holds,
    })
}
