//! Subspaces of ℂⁿ, canonical angles, and the isoclinic property.
//!
//! A [`Subspace`] is carried by an n×m isometry whose columns are an
//! orthonormal basis; the corresponding [`OrthProjection`] is the Hermitian
//! idempotent Q·Q*. The cosines of the canonical angles between two
//! subspaces are the singular values of Q_V*·Q_W (Bjorck–Golub), and a
//! pair of equal-dimensional subspaces is isoclinic when all its canonical
//! angles coincide. Equivalently:
//!
//! * Q_V*·Q_W is a scalar multiple of a unitary,
//! * P_V·P_W·P_V = λ·P_V and P_W·P_V·P_W = λ·P_W for some λ ∈ [0, 1],
//! * ‖P_W x‖/‖x‖ is constant over nonzero x ∈ V (and symmetrically).
//!
//! [`isoclinic_check`] evaluates all of these and reports the residuals;
//! the scalar λ equals the squared common cosine. Note the two angle
//! conventions: `canonical_angle` is arccos of the common singular value σ
//! while `lambda_angle` is arccos of λ = σ². They agree only at λ ∈ {0, 1}.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{orthonormal_basis, svd};
use crate::matrix::{is_scalar_multiple_of, projection_scalar_fit, ComplexMatrix, Tolerance};

/// An m-dimensional subspace of ℂⁿ, stored as an n×m isometry.
#[derive(Debug, Clone)]
pub struct Subspace {
    basis: ComplexMatrix,
}

impl Subspace {
    /// Orthonormalizes the columns of `raw` and wraps the result.
    ///
    /// Errors when the columns are not linearly independent at the
    /// tolerance, naming the numerical rank found.
    pub fn from_columns(raw: &ComplexMatrix, tol: Tolerance) -> Result<Self> {
        let (basis, rank) = orthonormal_basis(raw, tol)?;
        if rank < raw.cols() {
            return Err(Error::RankDeficient {
                rank,
                cols: raw.cols(),
            });
        }
        Ok(Subspace { basis })
    }

    /// Wraps columns that are already orthonormal, verifying Q*Q = I.
    pub fn from_orthonormal(basis: ComplexMatrix, tol: Tolerance) -> Result<Self> {
        let m = basis.cols();
        if m > basis.rows() {
            return Err(Error::domain(format!(
                "{} basis columns cannot span a subspace of dimension {}",
                m,
                basis.rows()
            )));
        }
        let gram = &basis.adjoint() * &basis;
        let dev = (&gram - &ComplexMatrix::identity(m)).frobenius_norm();
        if dev > tol.threshold(1.0) {
            return Err(Error::domain(format!(
                "basis columns are not orthonormal (deviation {dev:.3e})"
            )));
        }
        Ok(Subspace { basis })
    }

    pub(crate) fn from_orthonormal_unchecked(basis: ComplexMatrix) -> Self {
        debug_assert!({
            let gram = &basis.adjoint() * &basis;
            (&gram - &ComplexMatrix::identity(basis.cols())).frobenius_norm() < 1e-10
        });
        Subspace { basis }
    }

    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// The orthogonal projection Q·Q* onto this subspace.
    pub fn projection(&self) -> OrthProjection {
        OrthProjection {
            matrix: &self.basis * &self.basis.adjoint(),
            rank: self.dim(),
        }
    }
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.basis.serialize(serializer)
    }
}

/// Hermitian idempotent with its rank.
#[derive(Debug, Clone, Serialize)]
pub struct OrthProjection {
    matrix: ComplexMatrix,
    rank: usize,
}

impl OrthProjection {
    /// Validates that `matrix` is Hermitian, idempotent, and has integer
    /// trace equal to its rank, all within tolerance.
    pub fn new(matrix: ComplexMatrix, tol: Tolerance) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::domain("projection matrix must be square"));
        }
        let scale = matrix.frobenius_norm();
        if !matrix.is_hermitian(tol) {
            return Err(Error::domain(
                "projection matrix is not Hermitian within tolerance",
            ));
        }
        let idem = (&(&matrix * &matrix) - &matrix).frobenius_norm();
        if idem > tol.threshold(scale) {
            return Err(Error::domain(format!(
                "projection matrix is not idempotent (residual {idem:.3e})"
            )));
        }
        let tr = matrix.trace();
        let rank = tr.re.round();
        if (tr.re - rank).abs() > tol.threshold(scale)
            || tr.im.abs() > tol.threshold(scale)
            || rank < 0.0
        {
            return Err(Error::domain(format!(
                "projection trace {:.6} is not a nonnegative integer",
                tr.re
            )));
        }
        Ok(OrthProjection {
            matrix,
            rank: rank as usize,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Orthonormal basis of the range as a [`Subspace`].
    pub fn range(&self, tol: Tolerance) -> Result<Subspace> {
        if self.rank == 0 {
            return Err(Error::domain("rank-0 projection has no range subspace"));
        }
        let (basis, rank) = orthonormal_basis(&self.matrix, tol)?;
        if rank != self.rank {
            return Err(Error::Factorization(format!(
                "projection of rank {} produced a range basis of rank {}",
                self.rank, rank
            )));
        }
        Ok(Subspace { basis })
    }

    /// Tests `b ≈ α·P`, returning the scalar when it holds.
    pub fn scalar_multiple(&self, b: &ComplexMatrix, tol: Tolerance) -> Result<Option<Complex64>> {
        is_scalar_multiple_of(b, &self.matrix, self.rank, tol)
    }
}

/// Canonical angles θ₁ ≤ … ≤ θ_l between two subspaces, with their
/// cosines σ_k listed descending so that cos(angles\[k\]) = cosines\[k\].
#[derive(Debug, Clone, Serialize)]
pub struct CanonicalAngles {
    pub angles: Vec<f64>,
    pub cosines: Vec<f64>,
}

/// Cosines are the singular values of Q_V*·Q_W, clamped into [0, 1]
/// before taking arccos.
pub fn canonical_angles(v: &Subspace, w: &Subspace) -> Result<CanonicalAngles> {
    if v.ambient_dim() != w.ambient_dim() {
        return Err(Error::domain(format!(
            "ambient dimensions differ: {} vs {}",
            v.ambient_dim(),
            w.ambient_dim()
        )));
    }
    let prod = &v.basis().adjoint() * w.basis();
    let factored = svd(&prod)?;
    let cosines: Vec<f64> = factored
        .singular_values
        .iter()
        .map(|&s| s.clamp(0.0, 1.0))
        .collect();
    let angles: Vec<f64> = cosines.iter().map(|&c| c.acos()).collect();
    Ok(CanonicalAngles { angles, cosines })
}

/// Frobenius residuals of the isoclinic conditions.
#[derive(Debug, Clone, Serialize)]
pub struct IsoclinicResiduals {
    /// ‖(Q_V*Q_W)(Q_V*Q_W)* − λI‖_F — the scalar-multiple-of-a-unitary test.
    pub unitarity: f64,
    /// ‖P_V·P_W·P_V − λ·P_V‖_F.
    pub projection_v: f64,
    /// ‖P_W·P_V·P_W − λ·P_W‖_F.
    pub projection_w: f64,
}

/// Verdict of [`isoclinic_check`].
///
/// `lambda` is the least-squares scalar trace(P_V·P_W·P_V)/m, carried even
/// for non-isoclinic pairs. Both angle conventions are reported:
/// `canonical_angle = arccos(σ̄)` for the mean cosine σ̄, and
/// `lambda_angle = arccos(λ)` for the convention where the cosine is λ itself.
#[derive(Debug, Clone, Serialize)]
pub struct IsoclinicReport {
    pub isoclinic: bool,
    pub lambda: f64,
    pub canonical_angle: f64,
    pub lambda_angle: f64,
    /// σ_max − σ_min over the canonical-angle cosines.
    pub spread: f64,
    pub residuals: IsoclinicResiduals,
}

pub fn isoclinic_check(v: &Subspace, w: &Subspace, tol: Tolerance) -> Result<IsoclinicReport> {
    if v.dim() != w.dim() {
        return Err(Error::domain(format!(
            "isoclinic pairs must have equal dimension, got {} and {}",
            v.dim(),
            w.dim()
        )));
    }
    let angles = canonical_angles(v, w)?;
    let m = v.dim();
    let sigma_max = angles.cosines[0];
    let sigma_min = angles.cosines[m - 1];
    let spread = sigma_max - sigma_min;

    let prod = &v.basis().adjoint() * w.basis();
    let overlap = &prod * &prod.adjoint();
    let lambda = overlap.trace().re / m as f64;
    let unitarity = (&overlap - &ComplexMatrix::identity(m).scale_real(lambda)).frobenius_norm();

    let pv = v.projection();
    let pw = w.projection();
    let pvwv = &(pv.matrix() * pw.matrix()) * pv.matrix();
    let pwvw = &(pw.matrix() * pv.matrix()) * pw.matrix();
    let projection_v = (&pvwv - &pv.matrix().scale_real(lambda)).frobenius_norm();
    let projection_w = (&pwvw - &pw.matrix().scale_real(lambda)).frobenius_norm();

    let isoclinic = spread <= tol.threshold(1.0)
        && unitarity <= tol.threshold(overlap.frobenius_norm())
        && projection_v <= tol.threshold(pvwv.frobenius_norm())
        && projection_w <= tol.threshold(pwvw.frobenius_norm());

    let mean_cosine = angles.cosines.iter().sum::<f64>() / m as f64;
    Ok(IsoclinicReport {
        isoclinic,
        lambda,
        canonical_angle: mean_cosine.clamp(0.0, 1.0).acos(),
        lambda_angle: lambda.clamp(0.0, 1.0).acos(),
        spread,
        residuals: IsoclinicResiduals {
            unitarity,
            projection_v,
            projection_w,
        },
    })
}

/// Extremes of ‖P_W x‖/‖x‖ over random unit vectors x ∈ V.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RatioProbe {
    pub min_ratio: f64,
    pub max_ratio: f64,
}

/// Samples `samples` random vectors of V (complex Gaussian coordinates in
/// the basis, seeded) and reports the extreme projection ratios onto W.
/// For an isoclinic pair both extremes equal √λ.
pub fn ratio_probe(v: &Subspace, w: &Subspace, samples: usize, seed: u64) -> Result<RatioProbe> {
    if samples == 0 {
        return Err(Error::domain("ratio probe needs at least one sample"));
    }
    if v.ambient_dim() != w.ambient_dim() {
        return Err(Error::domain("ambient dimensions differ"));
    }
    let mut rng = sampling::seeded_rng(seed);
    let mut min_ratio = f64::INFINITY;
    let mut max_ratio = f64::NEG_INFINITY;
    for _ in 0..samples {
        let coeffs = loop {
            let g = sampling::gaussian_matrix(v.dim(), 1, &mut rng);
            if g.frobenius_norm() > 1e-12 {
                break g;
            }
        };
        let x = v.basis() * &coeffs;
        // ‖P_W x‖ = ‖Q_W* x‖ because Q_W is an isometry.
        let ratio = (&w.basis().adjoint() * &x).frobenius_norm() / x.frobenius_norm();
        min_ratio = min_ratio.min(ratio);
        max_ratio = max_ratio.max(ratio);
    }
    Ok(RatioProbe {
        min_ratio,
        max_ratio,
    })
}

/// Test-fixture generator: a pair of m-dimensional subspaces of ℂⁿ that is
/// isoclinic with parameter `lambda` by construction, namely
/// V = span{u_j} and W = span{√λ·u_j + √(1−λ)·v_j} for a random
/// orthonormal set {u_j} ∪ {v_j}.
pub fn make_isoclinic_pair(
    ambient_dim: usize,
    dim: usize,
    lambda: f64,
    seed: u64,
) -> Result<(Subspace, Subspace)> {
    if dim == 0 {
        return Err(Error::domain("subspace dimension must be at least 1"));
    }
    if 2 * dim > ambient_dim {
        return Err(Error::domain(format!(
            "need 2m <= n for an isoclinic pair, got m = {dim}, n = {ambient_dim}"
        )));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::domain(format!(
            "lambda must lie in [0, 1], got {lambda}"
        )));
    }
    let mut rng = sampling::seeded_rng(seed);
    let raw = sampling::gaussian_matrix(ambient_dim, 2 * dim, &mut rng);
    let (q, rank) = orthonormal_basis(&raw, Tolerance::default())?;
    if rank != 2 * dim {
        return Err(Error::Factorization(
            "random frame was numerically rank deficient; try another seed".into(),
        ));
    }
    let u = q.columns(0, dim);
    let v = q.columns(dim, 2 * dim);
    let w = &u.scale_real(lambda.sqrt()) + &v.scale_real((1.0 - lambda).sqrt());
    Ok((
        Subspace::from_orthonormal_unchecked(u),
        Subspace::from_orthonormal_unchecked(w),
    ))
}

/// Pairwise isoclinic report over a collection of subspaces.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub family_isoclinic: bool,
    pub pairs: Vec<FamilyPair>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyPair {
    pub i: usize,
    pub j: usize,
    pub report: IsoclinicReport,
}

/// Applies [`isoclinic_check`] to every unordered pair; the family flag is
/// the conjunction. A singleton family is vacuously isoclinic.
pub fn family_isoclinic_check(subspaces: &[Subspace], tol: Tolerance) -> Result<FamilyReport> {
    if subspaces.is_empty() {
        return Err(Error::domain("family check needs at least one subspace"));
    }
    let mut pairs = Vec::new();
    let mut family_isoclinic = true;
    for i in 0..subspaces.len() {
        for j in (i + 1)..subspaces.len() {
            let report = isoclinic_check(&subspaces[i], &subspaces[j], tol)?;
            family_isoclinic &= report.isoclinic;
            pairs.push(FamilyPair { i, j, report });
        }
    }
    Ok(FamilyReport {
        family_isoclinic,
        pairs,
    })
}

/// Compression of P_W to V: the m×m Hermitian matrix Q_V*·P_W·Q_V whose
/// eigenvalues are the squared canonical-angle cosines (padded with zeros
/// when dim W < dim V). Used as an independent oracle for the SVD route.
pub fn compression_to(v: &Subspace, w: &Subspace) -> Result<ComplexMatrix> {
    if v.ambient_dim() != w.ambient_dim() {
        return Err(Error::domain("ambient dimensions differ"));
    }
    let pw = w.projection();
    Ok(&(&v.basis().adjoint() * pw.matrix()) * v.basis())
}

/// Least-squares fit of P·Q·P against P for two projections; see
/// [`projection_scalar_fit`].
pub fn sandwich_scalar_fit(p: &OrthProjection, q: &OrthProjection) -> Result<(Complex64, f64)> {
    let pqp = &(p.matrix() * q.matrix()) * p.matrix();
    projection_scalar_fit(&pqp, p.matrix(), p.rank())
}

/// Seeded random sampling helpers shared by the probe, fixture generators,
/// and the test suites.
pub mod sampling {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    /// Matrix with independent standard complex Gaussian entries.
    pub fn gaussian_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        })
        .expect("gaussian entries are finite")
    }

    /// Haar-like random subspace: orthonormalized Gaussian frame.
    pub fn random_subspace(ambient_dim: usize, dim: usize, seed: u64) -> Result<Subspace> {
        if dim == 0 || dim > ambient_dim {
            return Err(Error::domain(format!(
                "cannot sample a {dim}-dimensional subspace of C^{ambient_dim}"
            )));
        }
        let mut rng = seeded_rng(seed);
        let raw = gaussian_matrix(ambient_dim, dim, &mut rng);
        Subspace::from_columns(&raw, Tolerance::default())
    }

    /// Random unitary from the orthonormalized columns of a Gaussian matrix.
    pub fn random_unitary(n: usize, seed: u64) -> ComplexMatrix {
        let mut rng = seeded_rng(seed);
        loop {
            let raw = gaussian_matrix(n, n, &mut rng);
            if let Ok((q, rank)) = orthonormal_basis(&raw, Tolerance::default()) {
                if rank == n {
                    return q;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn span_of_axes(ambient: usize, axes: &[usize]) -> Subspace {
        let raw = ComplexMatrix::from_fn(ambient, axes.len(), |i, j| {
            if i == axes[j] {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::default()
            }
        })
        .unwrap();
        Subspace::from_columns(&raw, tol()).unwrap()
    }

    #[test]
    fn from_columns_keeps_standard_basis() {
        let s = span_of_axes(4, &[0, 1]);
        assert_eq!(s.dim(), 2);
        assert!((s.basis().get(0, 0).re - 1.0).abs() < 1e-15);
        assert!((s.basis().get(1, 1).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn from_columns_normalizes() {
        let raw = ComplexMatrix::from_real_rows(4, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, -1.0])
            .unwrap();
        let s = Subspace::from_columns(&raw, tol()).unwrap();
        let expected = 1.0 / 2.0f64.sqrt();
        assert!((s.basis().get(0, 0).re - expected).abs() < 1e-14);
    }

    #[test]
    fn from_columns_rejects_proportional_columns() {
        let raw = ComplexMatrix::from_real_rows(3, 2, &[1.0, 2.0, 0.0, 0.0, 1.0, 2.0]).unwrap();
        match Subspace::from_columns(&raw, tol()) {
            Err(Error::RankDeficient { rank, cols }) => {
                assert_eq!(rank, 1);
                assert_eq!(cols, 2);
            }
            other => panic!("expected rank deficiency, got {other:?}"),
        }
    }

    #[test]
    fn angles_of_identical_subspaces_vanish() {
        let s = sampling::random_subspace(6, 3, 42).unwrap();
        let angles = canonical_angles(&s, &s).unwrap();
        assert!(angles.angles.iter().all(|&a| a.abs() < 1e-7));
    }

    #[test]
    fn orthogonal_lines_meet_at_right_angle() {
        let v = span_of_axes(3, &[0]);
        let w = span_of_axes(3, &[1]);
        let angles = canonical_angles(&v, &w).unwrap();
        assert!((angles.angles[0] - FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn diagonal_line_meets_axis_at_quarter_turn() {
        let v = span_of_axes(2, &[0]);
        let raw = ComplexMatrix::from_real_rows(2, 1, &[1.0, 1.0]).unwrap();
        let w = Subspace::from_columns(&raw, tol()).unwrap();
        let angles = canonical_angles(&v, &w).unwrap();
        assert!((angles.angles[0] - FRAC_PI_4).abs() < 1e-14);
    }

    #[test]
    fn angles_ascend_and_match_cosines() {
        let v = sampling::random_subspace(8, 3, 1).unwrap();
        let w = sampling::random_subspace(8, 3, 2).unwrap();
        let ca = canonical_angles(&v, &w).unwrap();
        for k in 0..ca.angles.len() {
            assert!((ca.angles[k].cos() - ca.cosines[k]).abs() < 1e-12);
            if k > 0 {
                assert!(ca.angles[k] >= ca.angles[k - 1] - 1e-12);
            }
        }
    }

    #[test]
    fn ambient_mismatch_is_domain_error() {
        let v = span_of_axes(3, &[0]);
        let w = span_of_axes(4, &[0]);
        assert!(matches!(canonical_angles(&v, &w), Err(Error::Domain(_))));
    }

    #[test]
    fn self_pair_is_isoclinic_with_unit_lambda() {
        let v = sampling::random_subspace(6, 2, 7).unwrap();
        let report = isoclinic_check(&v, &v, tol()).unwrap();
        assert!(report.isoclinic);
        assert!((report.lambda - 1.0).abs() < 1e-10);
        assert!(report.canonical_angle.abs() < 1e-7);
    }

    #[test]
    fn orthogonal_pair_is_isoclinic_at_right_angle() {
        let v = span_of_axes(4, &[0, 1]);
        let w = span_of_axes(4, &[2, 3]);
        let report = isoclinic_check(&v, &w, tol()).unwrap();
        assert!(report.isoclinic);
        assert!(report.lambda.abs() < 1e-14);
        assert!((report.lambda_angle - FRAC_PI_2).abs() < 1e-14);
        assert!((report.canonical_angle - FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn shared_line_pair_is_not_isoclinic() {
        let v = span_of_axes(4, &[0, 1]);
        let w = span_of_axes(4, &[0, 2]);
        let report = isoclinic_check(&v, &w, tol()).unwrap();
        assert!(!report.isoclinic);
        assert!(
            (report.spread - 1.0).abs() < 1e-12,
            "sigma = 1, 0 so spread 1"
        );
    }

    #[test]
    fn dimension_mismatch_is_domain_error() {
        let v = span_of_axes(4, &[0, 1]);
        let w = span_of_axes(4, &[2]);
        assert!(matches!(
            isoclinic_check(&v, &w, tol()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn ratio_probe_extremes() {
        let v = sampling::random_subspace(6, 2, 3).unwrap();
        let same = ratio_probe(&v, &v, 25, 9).unwrap();
        assert!((same.min_ratio - 1.0).abs() < 1e-10);
        assert!((same.max_ratio - 1.0).abs() < 1e-10);

        let a = span_of_axes(4, &[0, 1]);
        let b = span_of_axes(4, &[2, 3]);
        let orth = ratio_probe(&a, &b, 25, 9).unwrap();
        assert!(orth.max_ratio < 1e-10);

        let c = span_of_axes(4, &[0, 2]);
        let mixed = ratio_probe(&a, &c, 200, 9).unwrap();
        assert!(mixed.max_ratio - mixed.min_ratio > 0.5);
    }

    #[test]
    fn make_pair_hits_requested_lambda() {
        let (v, w) = make_isoclinic_pair(6, 2, 0.5, 13).unwrap();
        let report = isoclinic_check(&v, &w, tol()).unwrap();
        assert!(report.isoclinic);
        assert!((report.lambda - 0.5).abs() < 1e-10);

        let (v, w) = make_isoclinic_pair(6, 2, 1.0, 13).unwrap();
        let ca = canonical_angles(&v, &w).unwrap();
        assert!(ca.angles.iter().all(|&a| a < 1e-7));

        let (v, w) = make_isoclinic_pair(6, 2, 0.0, 13).unwrap();
        let report = isoclinic_check(&v, &w, tol()).unwrap();
        assert!(report.isoclinic && report.lambda.abs() < 1e-12);

        assert!(make_isoclinic_pair(3, 2, 0.5, 0).is_err());
    }

    #[test]
    fn lambda_is_symmetric_in_the_pair() {
        let v = sampling::random_subspace(7, 3, 21).unwrap();
        let w = sampling::random_subspace(7, 3, 22).unwrap();
        let vw = isoclinic_check(&v, &w, tol()).unwrap();
        let wv = isoclinic_check(&w, &v, tol()).unwrap();
        assert!((vw.lambda - wv.lambda).abs() < 1e-12);
    }

    #[test]
    fn family_check_basics() {
        let single = vec![sampling::random_subspace(4, 2, 5).unwrap()];
        let report = family_isoclinic_check(&single, tol()).unwrap();
        assert!(report.family_isoclinic);
        assert!(report.pairs.is_empty());

        let pair = vec![span_of_axes(4, &[0, 1]), span_of_axes(4, &[2, 3])];
        let report = family_isoclinic_check(&pair, tol()).unwrap();
        assert!(report.family_isoclinic);
        assert_eq!(report.pairs.len(), 1);
        assert!(report.pairs[0].report.lambda.abs() < 1e-14);
    }

    #[test]
    fn compression_eigenvalues_match_squared_cosines() {
        use crate::factor::hermitian_eig;
        for seed in 0..8u64 {
            let n = 5 + (seed as usize % 8);
            let m = 1 + (seed as usize % 3);
            let v = sampling::random_subspace(n, m, 100 + seed).unwrap();
            let w = sampling::random_subspace(n, m, 200 + seed).unwrap();
            let ca = canonical_angles(&v, &w).unwrap();
            let comp = compression_to(&v, &w).unwrap();
            let eig = hermitian_eig(&comp, tol()).unwrap();
            for (k, &c) in ca.cosines.iter().enumerate() {
                assert!(
                    (c * c - eig.eigenvalues[k]).abs() < 1e-10,
                    "seed {seed}: cos^2 {} vs eigenvalue {}",
                    c * c,
                    eig.eigenvalues[k]
                );
            }
        }
    }

    #[test]
    fn angles_are_unitarily_invariant() {
        let v = sampling::random_subspace(6, 2, 31).unwrap();
        let w = sampling::random_subspace(6, 2, 32).unwrap();
        let g = sampling::random_unitary(6, 33);
        let gv = Subspace::from_columns(&(&g * v.basis()), tol()).unwrap();
        let gw = Subspace::from_columns(&(&g * w.basis()), tol()).unwrap();
        let before = canonical_angles(&v, &w).unwrap();
        let after = canonical_angles(&gv, &gw).unwrap();
        for (a, b) in before.angles.iter().zip(after.angles.iter()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn angles_do_not_depend_on_basis_choice() {
        let v = sampling::random_subspace(6, 3, 41).unwrap();
        let w = sampling::random_subspace(6, 3, 42).unwrap();
        let mixer = sampling::random_unitary(3, 43);
        let remixed = Subspace::from_orthonormal(v.basis() * &mixer, tol()).unwrap();
        let before = canonical_angles(&v, &w).unwrap();
        let after = canonical_angles(&remixed, &w).unwrap();
        for (a, b) in before.angles.iter().zip(after.angles.iter()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn projection_validation() {
        let p = ComplexMatrix::real_diagonal(&[1.0, 1.0, 0.0]).unwrap();
        let proj = OrthProjection::new(p, tol()).unwrap();
        assert_eq!(proj.rank(), 2);
        let range = proj.range(tol()).unwrap();
        assert_eq!(range.dim(), 2);

        let not_idem = ComplexMatrix::real_diagonal(&[0.5, 0.0]).unwrap();
        assert!(OrthProjection::new(not_idem, tol()).is_err());
    }
}
