//! Worked examples: the two-qubit bit-flip model with its rotated variant
//! and θ(p, φ) surface, and Wong's graph-subspace construction in ℂ⁴.
//!
//! Basis ordering for the two-qubit space is fixed to |00⟩,|01⟩,|10⟩,|11⟩,
//! so the flip on the first qubit is X⊗I₂ and on the second I₂⊗X.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{hermitian_psd_sqrt, hpd_inverse};
use crate::matrix::{ComplexMatrix, Tolerance};
use crate::qec::ErrorModel;
use crate::subspace::{isoclinic_check, IsoclinicReport, OrthProjection, Subspace};

/// Parameters of the rotated bit-flip model: flip probability p ∈ (0, 1)
/// and rotation angle φ, stored reduced into [0, 2π).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BitFlipParams {
    pub p: f64,
    pub phi: f64,
}

impl BitFlipParams {
    pub fn new(p: f64, phi: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::domain(format!(
                "flip probability must lie in (0, 1), got {p}"
            )));
        }
        if !phi.is_finite() {
            return Err(Error::domain("rotation angle must be finite"));
        }
        Ok(BitFlipParams {
            p,
            phi: phi.rem_euclid(2.0 * std::f64::consts::PI),
        })
    }
}

fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
}

/// Flip on the first qubit of a two-qubit register: X ⊗ I₂.
pub fn first_qubit_flip() -> ComplexMatrix {
    pauli_x().kron(&ComplexMatrix::identity(2))
}

/// Flip on the second qubit: I₂ ⊗ X.
pub fn second_qubit_flip() -> ComplexMatrix {
    ComplexMatrix::identity(2).kron(&pauli_x())
}

/// Bit flip on the first qubit with probability p:
/// operators √(1−p)·I₄ and √p·(X⊗I₂).
pub fn bitflip_model(p: f64) -> Result<ErrorModel> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!(
            "flip probability must lie in (0, 1), got {p}"
        )));
    }
    let e1 = ComplexMatrix::identity(4).scale_real((1.0 - p).sqrt());
    let e2 = first_qubit_flip().scale_real(p.sqrt());
    ErrorModel::new(vec![e1, e2], Tolerance::default())
}

fn span_of_axes(axes: &[usize]) -> Subspace {
    let raw = ComplexMatrix::from_fn(4, axes.len(), |i, j| {
        if i == axes[j] {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::default()
        }
    })
    .unwrap();
    Subspace::from_columns(&raw, Tolerance::default()).unwrap()
}

/// span{|00⟩, |11⟩} — the even-parity code subspace.
pub fn even_parity_code() -> Subspace {
    span_of_axes(&[0, 3])
}

/// span{|10⟩, |01⟩} — the odd-parity subspace, the image of the even one
/// under the first-qubit flip.
pub fn odd_parity_code() -> Subspace {
    span_of_axes(&[2, 1])
}

/// Closed form for the isoclinic angle of the two ranges extracted from
/// the rotated bit-flip model on the even-parity code, under the
/// convention cos θ = |λ₁₂|²:
///
/// θ = arccos( |c·s·(2p−1)|² / ((c²(1−p)+s²p)(s²(1−p)+c²p)) )
pub fn theta_formula(params: &BitFlipParams) -> f64 {
    let (c, s) = (params.phi.cos(), params.phi.sin());
    let p = params.p;
    let numerator = (c * s * (2.0 * p - 1.0)).powi(2);
    let denominator = (c * c * (1.0 - p) + s * s * p) * (s * s * (1.0 - p) + c * c * p);
    (numerator / denominator).clamp(0.0, 1.0).acos()
}

/// One sample of the θ surface.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SurfacePoint {
    pub p: f64,
    pub phi: f64,
    pub theta: f64,
}

/// Uniform grid over (0, 1) × [0, 2π): p at the cell midpoints
/// (i + ½)/p_steps and φ at 2πj/phi_steps, row-major with p outermost.
pub fn theta_surface(p_steps: usize, phi_steps: usize) -> Result<Vec<SurfacePoint>> {
    if p_steps == 0 || phi_steps == 0 {
        return Err(Error::domain("surface needs at least one step per axis"));
    }
    let mut grid = Vec::with_capacity(p_steps * phi_steps);
    for i in 0..p_steps {
        let p = (i as f64 + 0.5) / p_steps as f64;
        for j in 0..phi_steps {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / phi_steps as f64;
            let params = BitFlipParams::new(p, phi)?;
            grid.push(SurfacePoint {
                p,
                phi,
                theta: theta_formula(&params),
            });
        }
    }
    Ok(grid)
}

/// CSV rendering of the surface, header included.
pub fn surface_to_csv(grid: &[SurfacePoint]) -> String {
    let mut out = String::from("p,phi,theta\n");
    for point in grid {
        out.push_str(&format!("{},{},{}\n", point.p, point.phi, point.theta));
    }
    out
}

/// A 2×2 operator M defining the graph subspace {(x, Mx)} ⊂ ℂ⁴.
#[derive(Debug, Clone)]
pub struct GraphOperator {
    matrix: ComplexMatrix,
}

impl GraphOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if matrix.rows() != 2 || matrix.cols() != 2 {
            return Err(Error::domain(format!(
                "graph operator must be 2x2, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(GraphOperator { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// The stacked frame [I; M] whose column span is the graph.
    fn frame(&self) -> ComplexMatrix {
        ComplexMatrix::identity(2).vstack(&self.matrix)
    }
}

/// Orthonormalized basis of the graph of M.
pub fn graph_subspace(op: &GraphOperator) -> Subspace {
    Subspace::from_columns(&op.frame(), Tolerance::default())
        .expect("the stacked frame [I; M] always has full column rank")
}

/// Orthogonal projection onto the graph via the block formula
/// P_M = [I; M]·(I + M*M)⁻¹·[I  M*].
pub fn graph_projection(op: &GraphOperator) -> OrthProjection {
    let frame = op.frame();
    let gram = &ComplexMatrix::identity(2) + &(&op.matrix.adjoint() * &op.matrix);
    let inv =
        hpd_inverse(&gram, Tolerance::default()).expect("I + M*M is Hermitian positive definite");
    let p = &(&frame * &inv) * &frame.adjoint();
    OrthProjection::new(p, Tolerance::default()).expect("block formula yields a projection")
}

/// Verdict on the graph-pair equation
/// (I + A*B)·(I + B*B)⁻¹·(I + B*A) = λ·(I + A*A).
///
/// `lambda_bestfit` and `residual` are computed in the metric of the
/// graph projections — λ = trace(K⁻¹L)/2 and residual
/// ‖K^{-1/2}(L − λK)K^{-1/2}‖_F for L the left side and K = I + A*A —
/// which makes them equal to the least-squares fit of P_A·P_B·P_A ≈ λ·P_A.
/// The isoclinic check on the two graphs is run as a cross-check;
/// `crosscheck_agrees` records whether its verdict matches `holds`.
#[derive(Debug, Clone, Serialize)]
pub struct WongReport {
    pub lambda_bestfit: f64,
    pub residual: f64,
    pub holds: bool,
    pub crosscheck_agrees: bool,
    pub crosscheck: IsoclinicReport,
}

pub fn wong_equation_check(a: &GraphOperator, b: &GraphOperator, tol: Tolerance) -> WongReport {
    let eye = ComplexMatrix::identity(2);
    let a_m = &a.matrix;
    let b_m = &b.matrix;
    let lhs_left = &eye + &(&a_m.adjoint() * b_m);
    let middle =
        hpd_inverse(&(&eye + &(&b_m.adjoint() * b_m)), tol).expect("I + B*B is positive definite");
    let lhs = &(&lhs_left * &middle) * &lhs_left.adjoint();
    let k = &eye + &(&a_m.adjoint() * a_m);
    let k_inv = hpd_inverse(&k, tol).expect("I + A*A is positive definite");

    let lambda_bestfit = (&k_inv * &lhs).trace().re / 2.0;
    let k_inv_sqrt =
        hermitian_psd_sqrt(&k_inv, tol).expect("inverse Gram matrix is positive definite");
    let deviation = &lhs - &k.scale_real(lambda_bestfit);
    let weighted = &(&k_inv_sqrt * &deviation) * &k_inv_sqrt;
    let residual = weighted.frobenius_norm();
    let scale = (&(&k_inv_sqrt * &lhs) * &k_inv_sqrt).frobenius_norm();
    let holds = residual <= tol.threshold(scale);

    let crosscheck = isoclinic_check(&graph_subspace(a), &graph_subspace(b), tol)
        .expect("graph subspaces share ambient dimension and rank");
    WongReport {
        lambda_bestfit,
        residual,
        holds,
        crosscheck_agrees: holds == crosscheck.isoclinic,
        crosscheck,
    }
}

/// The printed pair from Wong's monograph: A = diag(1, −1) and
/// B = diag((√3+1)/(√3−1), 0).
pub fn wong_printed_pair() -> (GraphOperator, GraphOperator) {
    let root3 = 3.0f64.sqrt();
    let a = GraphOperator::new(ComplexMatrix::real_diagonal(&[1.0, -1.0]).unwrap()).unwrap();
    let b = GraphOperator::new(
        ComplexMatrix::real_diagonal(&[(root3 + 1.0) / (root3 - 1.0), 0.0]).unwrap(),
    )
    .unwrap();
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qec::{kl_check, rotate_model};
    use crate::subspace::{canonical_angles, sampling};
    use std::f64::consts::FRAC_PI_2;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn bitflip_operators_at_even_odds() {
        let model = bitflip_model(0.5).unwrap();
        let expected = 2.0f64.sqrt();
        for op in model.operators() {
            assert!((op.frobenius_norm() - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn bitflip_model_is_trace_preserving() {
        let model = bitflip_model(0.3).unwrap();
        let mut sum = ComplexMatrix::zeros(4, 4);
        for op in model.operators() {
            sum = &sum + &(&op.adjoint() * op);
        }
        assert!((&sum - &ComplexMatrix::identity(4)).frobenius_norm() < 1e-15);
    }

    #[test]
    fn flip_sends_00_to_10() {
        let p: f64 = 0.3;
        let model = bitflip_model(p).unwrap();
        let e00 = ComplexMatrix::from_real_rows(4, 1, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let image = &model.operators()[1] * &e00;
        assert!((image.get(2, 0).re - p.sqrt()).abs() < 1e-15);
        assert!(image.get(0, 0).norm() < 1e-15);
        assert!(bitflip_model(0.0).is_err());
        assert!(bitflip_model(1.0).is_err());
    }

    #[test]
    fn parity_codes_are_orthogonal_complements() {
        let even = even_parity_code();
        let odd = odd_parity_code();
        assert_eq!(even.dim(), 2);
        assert_eq!(odd.dim(), 2);
        let p1 = even.projection();
        let p2 = odd.projection();
        assert!((p1.matrix() * p2.matrix()).frobenius_norm() < 1e-15);
        let sum = &(p1.matrix() + p2.matrix()) - &ComplexMatrix::identity(4);
        assert!(sum.frobenius_norm() < 1e-15);
    }

    #[test]
    fn theta_degenerates_to_right_angle() {
        let at_half = BitFlipParams::new(0.5, 0.7).unwrap();
        assert!((theta_formula(&at_half) - FRAC_PI_2).abs() < 1e-14);
        let no_rotation = BitFlipParams::new(0.3, 0.0).unwrap();
        assert!((theta_formula(&no_rotation) - FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn theta_matches_full_pipeline_at_a_point() {
        let params = BitFlipParams::new(0.3, 0.7).unwrap();
        let rotated = rotate_model(&bitflip_model(params.p).unwrap(), params.phi).unwrap();
        let kl = kl_check(&even_parity_code(), &rotated, tol()).unwrap();
        let a01 = kl.alpha.get(0, 1);
        let lam = a01.norm_sqr() / (kl.alpha.get(0, 0).re * kl.alpha.get(1, 1).re);
        assert!((theta_formula(&params).cos() - lam).abs() < 1e-12);
    }

    #[test]
    fn surface_grid_matches_pointwise_formula() {
        let grid = theta_surface(5, 8).unwrap();
        assert_eq!(grid.len(), 40);
        for point in &grid {
            let params = BitFlipParams::new(point.p, point.phi).unwrap();
            assert_eq!(point.theta, theta_formula(&params));
        }
    }

    #[test]
    fn surface_symmetries() {
        for &(p, phi) in &[(0.2, 0.4), (0.7, 2.2), (0.45, 5.0)] {
            let base = theta_formula(&BitFlipParams::new(p, phi).unwrap());
            let shifted =
                theta_formula(&BitFlipParams::new(p, phi + std::f64::consts::PI).unwrap());
            assert!((base - shifted).abs() < 1e-12, "phi shift at ({p}, {phi})");
            let mirrored = theta_formula(&BitFlipParams::new(1.0 - p, phi).unwrap());
            assert!((base - mirrored).abs() < 1e-12, "p mirror at ({p}, {phi})");
        }
    }

    #[test]
    fn surface_csv_shape() {
        let grid = theta_surface(3, 4).unwrap();
        let csv = surface_to_csv(&grid);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 13);
        assert_eq!(lines[0], "p,phi,theta");
    }

    #[test]
    fn zero_graph_is_the_coordinate_plane() {
        let zero = GraphOperator::new(ComplexMatrix::zeros(2, 2)).unwrap();
        let s = graph_subspace(&zero);
        assert_eq!(s.dim(), 2);
        let p = graph_projection(&zero);
        let expected = ComplexMatrix::real_diagonal(&[1.0, 1.0, 0.0, 0.0]).unwrap();
        assert!((p.matrix() - &expected).frobenius_norm() < 1e-14);
    }

    #[test]
    fn graph_complement_is_graph_of_negated_adjoint_inverse() {
        // V_M^perp = {(-M* y, y)}: its inner products against (x, Mx) vanish.
        let mut rng = sampling::seeded_rng(7);
        let m = sampling::gaussian_matrix(2, 2, &mut rng);
        let op = GraphOperator::new(m.clone()).unwrap();
        let graph = graph_subspace(&op);
        let anti = (-&m.adjoint()).vstack(&ComplexMatrix::identity(2));
        let overlap = &graph.basis().adjoint() * &anti;
        assert!(overlap.frobenius_norm() < 1e-13);
    }

    #[test]
    fn unit_graph_projection_pattern() {
        let one = GraphOperator::new(ComplexMatrix::identity(2)).unwrap();
        let p = graph_projection(&one);
        // halves on the (e0,e2) and (e1,e3) planes
        for (i, j) in [
            (0, 0),
            (0, 2),
            (2, 0),
            (2, 2),
            (1, 1),
            (1, 3),
            (3, 1),
            (3, 3),
        ] {
            assert!(
                (p.matrix().get(i, j).re - 0.5).abs() < 1e-14,
                "entry ({i},{j})"
            );
        }
        assert!(p.matrix().get(0, 1).norm() < 1e-14);
    }

    #[test]
    fn block_formula_matches_orthonormalized_projection() {
        let mut rng = sampling::seeded_rng(19);
        for _ in 0..200 {
            let m = sampling::gaussian_matrix(2, 2, &mut rng);
            let op = GraphOperator::new(m).unwrap();
            let via_formula = graph_projection(&op);
            let via_basis = graph_subspace(&op).projection();
            let dev = (via_formula.matrix() - via_basis.matrix()).frobenius_norm();
            assert!(dev <= 1e-10, "deviation {dev}");
        }
    }

    #[test]
    fn block_formula_satisfies_projection_laws() {
        let mut rng = sampling::seeded_rng(23);
        for _ in 0..50 {
            let m = sampling::gaussian_matrix(2, 2, &mut rng);
            let p = graph_projection(&GraphOperator::new(m).unwrap());
            let mat = p.matrix();
            assert!((mat - &mat.adjoint()).frobenius_norm() <= 1e-12);
            assert!((&(mat * mat) - mat).frobenius_norm() <= 1e-12);
            assert_eq!(p.rank(), 2);
        }
    }

    #[test]
    fn equal_zero_graphs_satisfy_the_equation() {
        let zero = GraphOperator::new(ComplexMatrix::zeros(2, 2)).unwrap();
        let report = wong_equation_check(&zero, &zero.clone(), tol());
        assert!(report.holds);
        assert!((report.lambda_bestfit - 1.0).abs() < 1e-14);
        assert!(report.residual < 1e-14);
        assert!(report.crosscheck_agrees);
    }

    #[test]
    fn complementary_graphs_are_orthogonal() {
        // graph(M) and graph(-(M*)^{-1}) are orthogonal complements
        let m = ComplexMatrix::identity(2);
        let a = GraphOperator::new(m).unwrap();
        let b = GraphOperator::new(ComplexMatrix::identity(2).scale_real(-1.0)).unwrap();
        let report = wong_equation_check(&a, &b, tol());
        assert!(report.holds);
        assert!(report.lambda_bestfit.abs() < 1e-14);
        assert!(report.crosscheck.isoclinic);
        assert!((report.crosscheck.lambda_angle - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn printed_pair_angles_from_compression_oracle() {
        // Desk evaluation: the graphs of the printed pair meet at two
        // distinct canonical angles, arccos(sqrt(3)/2) and arccos(1/sqrt(2)).
        let (a, b) = wong_printed_pair();
        let ca = canonical_angles(&graph_subspace(&a), &graph_subspace(&b)).unwrap();
        assert!((ca.cosines[0] - 0.75f64.sqrt()).abs() < 1e-12);
        assert!((ca.cosines[1] - 0.5f64.sqrt()).abs() < 1e-12);
    }
}
