//! Knill-Laflamme verification and the isoclinic family induced by a
//! correctable code.
//!
//! A code subspace 𝒞 is correctable for an error model {E_i} exactly when
//! P·E_i*·E_j·P = α_ij·P for all i, j, with P the projection onto 𝒞. For a
//! correctable, non-degenerate model the ranges 𝒱_i of the restricted
//! operators E_i|_𝒞 form a family of pairwise isoclinic subspaces, with
//! pairwise parameters |λ_ij|² for λ_ij = α_ij/√(α_ii·α_jj).
//! [`extract_isoclinic_family`] materializes that family through the polar
//! decompositions of the E_i·P.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{hermitian_eig, polar_partial_isometry};
use crate::matrix::{projection_scalar_fit, ComplexMatrix, Tolerance};
use crate::subspace::{family_isoclinic_check, isoclinic_check, OrthProjection, Subspace};

/// Ordered Kraus operators E_i with Σ E_i*·E_i ≤ I (trace non-increasing).
#[derive(Debug, Clone)]
pub struct ErrorModel {
    kraus: Vec<ComplexMatrix>,
}

impl ErrorModel {
    pub fn new(kraus: Vec<ComplexMatrix>, tol: Tolerance) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::domain("error model needs at least one operator"))?;
        if !first.is_square() {
            return Err(Error::domain("error operators must be square"));
        }
        let dim = first.rows();
        for (i, op) in kraus.iter().enumerate() {
            if op.rows() != dim || op.cols() != dim {
                return Err(Error::domain(format!(
                    "operator {i} is {}x{}, expected {dim}x{dim}",
                    op.rows(),
                    op.cols()
                )));
            }
        }
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for op in &kraus {
            sum = &sum + &(&op.adjoint() * op);
        }
        let eig = hermitian_eig(&sum, tol)?;
        let largest = eig.eigenvalues[0];
        if largest > 1.0 + tol.threshold(1.0) {
            return Err(Error::domain(format!(
                "sum of E_i*E_i exceeds the identity (largest eigenvalue {largest:.6})"
            )));
        }
        Ok(ErrorModel { kraus })
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn len(&self) -> usize {
        self.kraus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kraus.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.kraus[0].rows()
    }
}

/// Outcome of [`kl_check`].
///
/// `alpha` always carries the least-squares coefficients
/// trace(P·E_i*·E_j·P)/rank, so the report is diagnostic even when the
/// scalar tests fail. `gram_spectrum` holds the eigenvalues of the Gram
/// matrix of the vectorized restricted operators E_i·P; the model is
/// non-degenerate when that spectrum has full numerical rank.
#[derive(Debug, Clone, Serialize)]
pub struct KLReport {
    pub correctable: bool,
    pub alpha: ComplexMatrix,
    pub residuals: Vec<Vec<f64>>,
    pub nondegenerate: bool,
    pub gram_spectrum: Vec<f64>,
}

pub fn kl_check(code: &Subspace, model: &ErrorModel, tol: Tolerance) -> Result<KLReport> {
    if code.ambient_dim() != model.dim() {
        return Err(Error::domain(format!(
            "code lives in C^{} but the operators act on C^{}",
            code.ambient_dim(),
            model.dim()
        )));
    }
    let projection = code.projection();
    let p = projection.matrix();
    let rank = projection.rank();
    let k = model.len();

    let restricted: Vec<ComplexMatrix> = model.operators().iter().map(|e| e * p).collect();

    let mut alpha_entries = vec![Complex64::default(); k * k];
    let mut residuals = vec![vec![0.0f64; k]; k];
    let mut gram_entries = vec![Complex64::default(); k * k];
    let mut correctable = true;
    for i in 0..k {
        for j in 0..k {
            let block = &restricted[i].adjoint() * &restricted[j];
            let (alpha, residual) = projection_scalar_fit(&block, p, rank)?;
            alpha_entries[i * k + j] = alpha;
            residuals[i][j] = residual;
            gram_entries[i * k + j] = block.trace();
            if residual > tol.threshold(block.frobenius_norm()) {
                correctable = false;
            }
        }
    }
    let alpha = ComplexMatrix::from_rows(k, k, &alpha_entries)?;
    let gram = ComplexMatrix::from_rows(k, k, &gram_entries)?;
    let gram_eig = hermitian_eig(&gram, tol)?;
    let largest = gram_eig.eigenvalues[0];
    let smallest = *gram_eig.eigenvalues.last().unwrap();
    let nondegenerate = largest > 0.0 && smallest > tol.abs_eps() * largest;
    Ok(KLReport {
        correctable,
        alpha,
        residuals,
        nondegenerate,
        gram_spectrum: gram_eig.eigenvalues,
    })
}

/// The isoclinic family induced by a correctable non-degenerate code.
#[derive(Debug, Clone)]
pub struct ExtractionResult {
    /// 𝒱_i = Range(E_i|_𝒞), one subspace per operator.
    pub subspaces: Vec<Subspace>,
    /// Partial isometries U_i with E_i·P = √α_ii·U_i·P.
    pub partial_isometries: Vec<ComplexMatrix>,
    /// λ_ij = α_ij/√(α_ii·α_jj); unit diagonal, conjugate-symmetric.
    pub lambda_matrix: ComplexMatrix,
    /// |λ_ij|², the isoclinic parameter of the pair (𝒱_i, 𝒱_j).
    pub pairwise_lambda: Vec<Vec<f64>>,
    pub family_isoclinic: bool,
}

pub fn extract_isoclinic_family(
    code: &Subspace,
    model: &ErrorModel,
    tol: Tolerance,
) -> Result<ExtractionResult> {
    let kl = kl_check(code, model, tol)?;
    if !kl.correctable {
        return Err(Error::Precondition(
            "code is not correctable for the error model".into(),
        ));
    }
    let k = model.len();
    let mut diag = Vec::with_capacity(k);
    for i in 0..k {
        let a = kl.alpha.get(i, i).re;
        if a <= tol.abs_eps() {
            return Err(Error::Degenerate(format!(
                "alpha[{i}][{i}] = {a:.3e} vanishes at tolerance"
            )));
        }
        diag.push(a);
    }
    if !kl.nondegenerate {
        return Err(Error::Degenerate(
            "restricted error operators are linearly dependent".into(),
        ));
    }

    let p = code.projection();
    let mut subspaces = Vec::with_capacity(k);
    let mut partial_isometries = Vec::with_capacity(k);
    for e in model.operators() {
        let restricted = e * p.matrix();
        partial_isometries.push(polar_partial_isometry(&restricted, tol)?);
        // Range of E_i|_C: the columns of E_i·Q are orthogonal of norm
        // √α_ii when the code is correctable, so the span has dimension m.
        let image = e * code.basis();
        subspaces.push(Subspace::from_columns(&image, tol)?);
    }

    let mut lambda_entries = vec![Complex64::default(); k * k];
    let mut pairwise = vec![vec![0.0f64; k]; k];
    for i in 0..k {
        for j in 0..k {
            let lam = kl.alpha.get(i, j) / (diag[i] * diag[j]).sqrt();
            lambda_entries[i * k + j] = lam;
            pairwise[i][j] = lam.norm_sqr();
        }
    }
    let lambda_matrix = ComplexMatrix::from_rows(k, k, &lambda_entries)?;

    // The projections must compress onto each other with exactly the
    // pairwise parameters; a violation signals broken numerics upstream.
    for i in 0..k {
        let pi = subspaces[i].projection();
        for j in 0..k {
            if i == j {
                continue;
            }
            let pj = subspaces[j].projection();
            let sandwich = &(pi.matrix() * pj.matrix()) * pi.matrix();
            let dev = (&sandwich - &pi.matrix().scale_real(pairwise[i][j])).frobenius_norm();
            if dev > tol.threshold(sandwich.frobenius_norm()) {
                return Err(Error::Factorization(format!(
                    "projection identity violated for pair ({i}, {j}): residual {dev:.3e}"
                )));
            }
        }
    }

    let family = family_isoclinic_check(&subspaces, tol)?;
    Ok(ExtractionResult {
        subspaces,
        partial_isometries,
        lambda_matrix,
        pairwise_lambda: pairwise,
        family_isoclinic: family.family_isoclinic,
    })
}

/// Replaces a two-operator model {E₁, E₂} by the rotated pair
/// F₁ = cos φ·E₁ + sin φ·E₂ and F₂ = −sin φ·E₁ + cos φ·E₂.
pub fn rotate_model(model: &ErrorModel, phi: f64) -> Result<ErrorModel> {
    if model.len() != 2 {
        return Err(Error::domain(format!(
            "rotation needs exactly 2 operators, got {}",
            model.len()
        )));
    }
    let (c, s) = (phi.cos(), phi.sin());
    let e1 = &model.operators()[0];
    let e2 = &model.operators()[1];
    let f1 = &e1.scale_real(c) + &e2.scale_real(s);
    let f2 = &e1.scale_real(-s) + &e2.scale_real(c);
    ErrorModel::new(vec![f1, f2], Tolerance::default())
}

/// Correctability of two isoclinic ranges for the model {P₁/√2, P₂/√2}:
/// runs [`kl_check`] with each range as the code and returns both reports.
pub fn converse_check(
    p1: &OrthProjection,
    p2: &OrthProjection,
    tol: Tolerance,
) -> Result<(KLReport, KLReport)> {
    if p1.ambient_dim() != p2.ambient_dim() {
        return Err(Error::domain("projections act on different spaces"));
    }
    if p1.rank() != p2.rank() {
        return Err(Error::domain(format!(
            "projections have different ranks: {} vs {}",
            p1.rank(),
            p2.rank()
        )));
    }
    let v = p1.range(tol)?;
    let w = p2.range(tol)?;
    let report = isoclinic_check(&v, &w, tol)?;
    if !report.isoclinic {
        return Err(Error::Precondition(format!(
            "subspaces are not isoclinic (cosine spread {:.3e})",
            report.spread
        )));
    }
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let model = ErrorModel::new(
        vec![p1.matrix().scale_real(half), p2.matrix().scale_real(half)],
        tol,
    )?;
    Ok((kl_check(&v, &model, tol)?, kl_check(&w, &model, tol)?))
}
