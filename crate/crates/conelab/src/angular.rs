//! Finite-volume discretization of the weighted eigenvalue problem on
//! axisymmetric spherical domains.
//!
//! In the polar angle the Laplace-Beltrami operator reduces to the
//! Sturm-Liouville form -(sin^{N-2} u')' / sin^{N-2}, discretized here with
//! a vertex-centered finite-volume scheme on a uniform grid.  Control cells
//! straddle each node; fluxes are evaluated at cell faces with the exact
//! face weight, and the cell measure is the exact integral of the weight
//! over the cell (times the measure of the orbit sphere, so that discrete
//! norms approximate integrals over the full angular domain, not just the
//! polar interval).
//!
//! Poles are genuine nodes with half cells.  The face weight at a pole
//! vanishes, so no flux crosses it: this encodes the regularity condition
//! satisfied by any function with finite energy there.  A nominal boundary
//! point at a pole is treated the same way, since a single point carries no
//! capacity and cannot support a Dirichlet condition in the energy space.
//! Proper (non-pole) boundary angles get homogeneous Dirichlet treatment:
//! the boundary value enters the adjacent flux as zero.

use crate::linalg::SymTridiag;
use crate::quad::gauss5;
use crate::sphere::{sphere_area, AngularDomain, POLE_TOL};
use crate::{Error, Result};
use serde::Serialize;
use std::f64::consts::PI;

/// Minimum admissible node count for an angular mesh.
pub const MIN_NODES: usize = 16;

/// Zeroth-order coefficient subtracted from the angular operator.
///
/// The spectral problem solved is `-lap(phi) - V phi = lambda phi`, so a
/// nonnegative potential lowers eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub enum AngularPotential {
    /// No potential: the pure Laplace-Beltrami eigenproblem.
    Zero,
    /// `eps` times the indicator of a subdomain.
    Indicator { region: AngularDomain, eps: f64 },
    /// Arbitrary nodal values; the length must match the mesh.
    Tabulated(Vec<f64>),
}

impl AngularPotential {
    fn validate(&self, mesh: &AngularMesh) -> Result<()> {
        match self {
            AngularPotential::Zero => Ok(()),
            AngularPotential::Indicator { region, eps } => {
                if !eps.is_finite() || *eps < 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "indicator strength must be finite and nonnegative, got {eps}"
                    )));
                }
                if region.dimension != mesh.domain.dimension {
                    return Err(Error::InvalidParameter(format!(
                        "indicator region lives in dimension {}, mesh in {}",
                        region.dimension, mesh.domain.dimension
                    )));
                }
                Ok(())
            }
            AngularPotential::Tabulated(values) => {
                if values.len() != mesh.len() {
                    return Err(Error::InvalidParameter(format!(
                        "tabulated potential has {} values for a mesh with {} nodes",
                        values.len(),
                        mesh.len()
                    )));
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::InvalidParameter(
                        "tabulated potential contains non-finite values".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    fn values_on(&self, mesh: &AngularMesh) -> Vec<f64> {
        match self {
            AngularPotential::Zero => vec![0.0; mesh.len()],
            AngularPotential::Indicator { region, eps } => mesh
                .thetas
                .iter()
                .map(|&t| if region.contains(t) { *eps } else { 0.0 })
                .collect(),
            AngularPotential::Tabulated(values) => values.clone(),
        }
    }

    /// Short description used in report artifacts.
    pub fn tag(&self) -> String {
        match self {
            AngularPotential::Zero => "zero".to_string(),
            AngularPotential::Indicator { region, eps } => {
                format!("indicator(eps={eps}, region={})", region.label())
            }
            AngularPotential::Tabulated(_) => "tabulated".to_string(),
        }
    }
}

/// Uniform vertex-centered mesh on the polar interval of a domain.
#[derive(Debug, Clone)]
pub struct AngularMesh {
    /// The domain being meshed.
    pub domain: AngularDomain,
    /// Node angles, strictly increasing.
    pub thetas: Vec<f64>,
    /// Uniform spacing between adjacent nodes (and to Dirichlet boundaries).
    pub h: f64,
    /// Cell measures: orbit area times the cell integral of sin^{N-2}.
    pub cell_measure: Vec<f64>,
    /// Face weights sin^{N-2} scaled by orbit area; entry `i` is the lower
    /// face of node `i`, entry `n` the upper face of the last node.
    face_weight: Vec<f64>,
    lo_dirichlet: bool,
    hi_dirichlet: bool,
}

impl AngularMesh {
    /// Build a mesh with `n` nodes.
    ///
    /// A Dirichlet boundary sits one spacing beyond its adjacent node; a
    /// pole is itself a node with a half cell.
    pub fn new(domain: &AngularDomain, n: usize) -> Result<Self> {
        if n < MIN_NODES {
            return Err(Error::MeshTooCoarse(format!(
                "{n} nodes requested, minimum is {MIN_NODES}"
            )));
        }
        let (lo, hi) = domain.theta_range();
        let lo_dirichlet = !domain.lo_is_pole();
        let hi_dirichlet = !domain.hi_is_pole();
        let spacings = n - 1 + usize::from(lo_dirichlet) + usize::from(hi_dirichlet);
        let h = (hi - lo) / spacings as f64;
        let first = lo + if lo_dirichlet { h } else { 0.0 };
        let thetas: Vec<f64> = (0..n).map(|i| first + i as f64 * h).collect();
        let nu = domain.dimension - 2;
        let sigma = sphere_area(nu);
        let weight = move |t: f64| {
            if t <= POLE_TOL || t >= PI - POLE_TOL {
                0.0
            } else {
                t.sin().powi(nu as i32)
            }
        };
        let mut face_pos = Vec::with_capacity(n + 1);
        face_pos.push(if lo_dirichlet { lo + 0.5 * h } else { lo });
        for i in 0..n - 1 {
            face_pos.push(0.5 * (thetas[i] + thetas[i + 1]));
        }
        face_pos.push(if hi_dirichlet { hi - 0.5 * h } else { hi });
        let face_weight: Vec<f64> = face_pos.iter().map(|&t| sigma * weight(t)).collect();
        let cell_measure: Vec<f64> = (0..n)
            .map(|i| sigma * gauss5(|t| t.sin().powi(nu as i32), face_pos[i], face_pos[i + 1]))
            .collect();
        Ok(AngularMesh {
            domain: *domain,
            thetas,
            h,
            cell_measure,
            face_weight,
            lo_dirichlet,
            hi_dirichlet,
        })
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    /// Whether the mesh has no nodes (never true for a valid mesh).
    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    /// Total measure covered by the cells.
    pub fn covered_measure(&self) -> f64 {
        self.cell_measure.iter().sum()
    }

    /// Whether the lower end of the interval is a Dirichlet boundary.
    pub fn lo_dirichlet(&self) -> bool {
        self.lo_dirichlet
    }

    /// Whether the upper end of the interval is a Dirichlet boundary.
    pub fn hi_dirichlet(&self) -> bool {
        self.hi_dirichlet
    }
}

/// Assembled discrete angular operator together with its mass matrix.
#[derive(Debug, Clone)]
pub struct AngularOperator {
    /// The underlying mesh.
    pub mesh: AngularMesh,
    /// Nodal potential values used in the assembly.
    pub potential_values: Vec<f64>,
    potential_tag: String,
    /// Stiffness diagonal (flux part only, no potential).
    stiff_diag: Vec<f64>,
    /// Stiffness off-diagonal (negative of face conductances).
    stiff_off: Vec<f64>,
    /// Symmetrized standard-form matrix whose eigenvalues are the
    /// generalized eigenvalues of (stiffness - potential, mass).
    standard: SymTridiag,
}

/// Assemble the discrete operator for a domain, mesh size, and potential.
pub fn assemble(
    domain: &AngularDomain,
    n: usize,
    potential: &AngularPotential,
) -> Result<AngularOperator> {
    let mesh = AngularMesh::new(domain, n)?;
    potential.validate(&mesh)?;
    let v = potential.values_on(&mesh);
    let h = mesh.h;
    let m = mesh.len();
    let mut stiff_diag = vec![0.0; m];
    let mut stiff_off = vec![0.0; m - 1];
    for (d, w) in stiff_diag.iter_mut().zip(mesh.face_weight.windows(2)) {
        *d = (w[0] + w[1]) / h;
    }
    for (o, &w) in stiff_off.iter_mut().zip(&mesh.face_weight[1..]) {
        *o = -w / h;
    }
    let mut diag = vec![0.0; m];
    let mut off = vec![0.0; m - 1];
    for i in 0..m {
        diag[i] = (stiff_diag[i] - v[i] * mesh.cell_measure[i]) / mesh.cell_measure[i];
    }
    for i in 0..m - 1 {
        off[i] = stiff_off[i] / (mesh.cell_measure[i] * mesh.cell_measure[i + 1]).sqrt();
    }
    Ok(AngularOperator {
        mesh,
        potential_values: v,
        potential_tag: potential.tag(),
        stiff_diag,
        stiff_off,
        standard: SymTridiag { diag, off },
    })
}

impl AngularOperator {
    /// Number of mesh nodes.
    pub fn len(&self) -> usize {
        self.mesh.len()
    }

    /// Whether the operator is empty (never true for a valid assembly).
    pub fn is_empty(&self) -> bool {
        self.mesh.is_empty()
    }

    /// Tag describing the potential, for reports.
    pub fn potential_tag(&self) -> &str {
        &self.potential_tag
    }

    /// Smallest eigenvalue and its mass-normalized, sign-fixed eigenvector.
    pub fn principal_eigenpair(&self) -> (f64, Vec<f64>) {
        let (lambda, x) = self.standard.eigenpair(0, &[]);
        (lambda, self.to_physical(&x))
    }

    /// First `k` eigenpairs, eigenvalues ascending.
    pub fn eigen_basis(&self, k: usize) -> Result<SpectralDecomposition> {
        if k == 0 || k > self.len() / 4 {
            return Err(Error::KTooLarge(format!(
                "{k} modes requested on a mesh with {} nodes (limit is nodes/4)",
                self.len()
            )));
        }
        let mut lambdas = Vec::with_capacity(k);
        let mut standard_vecs: Vec<Vec<f64>> = Vec::with_capacity(k);
        let mut phis = Vec::with_capacity(k);
        for idx in 0..k {
            let (lambda, x) = self.standard.eigenpair(idx, &standard_vecs);
            lambdas.push(lambda);
            phis.push(self.to_physical(&x));
            standard_vecs.push(x);
        }
        Ok(SpectralDecomposition { op: self.clone(), lambdas, phis })
    }

    /// Flux stiffness pieces `(diagonal, off-diagonal)` without the
    /// potential, for tensor-product assemblies.
    pub(crate) fn stiffness_parts(&self) -> (&[f64], &[f64]) {
        (&self.stiff_diag, &self.stiff_off)
    }

    /// Symmetrized standard-form matrix.
    pub(crate) fn standard_matrix(&self) -> &SymTridiag {
        &self.standard
    }

    /// Complete eigendecomposition of the standard form, eigenvalues
    /// ascending and eigenvectors orthonormal.
    ///
    /// Unlike [`AngularOperator::eigen_basis`] this imposes no mode cap:
    /// trailing modes are not spectrally converged approximations of the
    /// continuum problem, but together they diagonalize the discrete
    /// operator exactly, which is what tensor-product solves need.
    pub(crate) fn full_standard_basis(&self) -> (Vec<f64>, Vec<Vec<f64>>) {
        let n = self.len();
        let mut lambdas = Vec::with_capacity(n);
        let mut vecs: Vec<Vec<f64>> = Vec::with_capacity(n);
        for k in 0..n {
            let (lambda, x) = self.standard.eigenpair(k, &vecs);
            lambdas.push(lambda);
            vecs.push(x);
        }
        (lambdas, vecs)
    }

    /// Quadratic form of the flux (stiffness) part alone: the discrete
    /// Dirichlet energy of nodal values `u` extended by zero.
    pub fn stiffness_energy(&self, u: &[f64]) -> f64 {
        assert_eq!(u.len(), self.len());
        let mut e = 0.0;
        for (&ui, &di) in u.iter().zip(&self.stiff_diag) {
            e += di * ui * ui;
        }
        for (w, &oi) in u.windows(2).zip(&self.stiff_off) {
            e += 2.0 * oi * w[0] * w[1];
        }
        e
    }

    /// Apply the full operator (flux minus potential) to nodal values,
    /// returning the residual of the strong form at each node.
    pub fn apply(&self, u: &[f64]) -> Vec<f64> {
        assert_eq!(u.len(), self.len());
        let n = u.len();
        let mut out = vec![0.0; n];
        for i in 0..n {
            let mut acc = self.stiff_diag[i] * u[i];
            if i > 0 {
                acc += self.stiff_off[i - 1] * u[i - 1];
            }
            if i + 1 < n {
                acc += self.stiff_off[i] * u[i + 1];
            }
            out[i] = acc / self.mesh.cell_measure[i] - self.potential_values[i] * u[i];
        }
        out
    }

    /// Convert a unit standard-form vector to nodal values normalized in the
    /// mass inner product, with the largest-magnitude entry positive.
    fn to_physical(&self, x: &[f64]) -> Vec<f64> {
        let mut phi: Vec<f64> = x
            .iter()
            .zip(&self.mesh.cell_measure)
            .map(|(xi, m)| xi / m.sqrt())
            .collect();
        let mut idx = 0;
        for (i, p) in phi.iter().enumerate() {
            if p.abs() > phi[idx].abs() {
                idx = i;
            }
        }
        if phi[idx] < 0.0 {
            for p in &mut phi {
                *p = -*p;
            }
        }
        phi
    }

    /// Mass inner product of two nodal functions.
    pub fn mass_inner(&self, u: &[f64], v: &[f64]) -> f64 {
        u.iter()
            .zip(v)
            .zip(&self.mesh.cell_measure)
            .map(|((a, b), m)| a * b * m)
            .sum()
    }
}

/// Leading eigenpairs of an assembled angular operator.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// The operator the decomposition was computed from.
    pub op: AngularOperator,
    /// Eigenvalues in ascending order.
    pub lambdas: Vec<f64>,
    /// Mass-normalized eigenvectors, one per eigenvalue.
    pub phis: Vec<Vec<f64>>,
}

/// Serializable view of a decomposition.
#[derive(Serialize)]
struct DecompositionArtifact<'a> {
    schema: u32,
    domain: &'a AngularDomain,
    potential: &'a str,
    nodes: usize,
    modes: usize,
    theta: &'a [f64],
    lambda: &'a [f64],
    phi: &'a [Vec<f64>],
}

impl SpectralDecomposition {
    /// Number of modes.
    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    /// Whether the decomposition holds no modes.
    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    /// JSON artifact with mesh angles, eigenvalues, and eigenvectors.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DecompositionArtifact {
            schema: 1,
            domain: &self.op.mesh.domain,
            potential: self.op.potential_tag(),
            nodes: self.op.len(),
            modes: self.len(),
            theta: &self.op.mesh.thetas,
            lambda: &self.lambdas,
            phi: &self.phis,
        })
        .expect("decomposition serialization cannot fail")
    }

    /// Expansion coefficients of nodal values against the eigenbasis.
    ///
    /// The input must effectively vanish near Dirichlet boundaries: a value
    /// at a boundary-adjacent node exceeding sqrt(h) times the maximum is
    /// rejected, since such data cannot come from a function supported in
    /// the open domain sampled on this mesh.
    pub fn project(&self, psi: &[f64]) -> Result<Vec<f64>> {
        let n = self.op.len();
        if psi.len() != n {
            return Err(Error::InvalidParameter(format!(
                "projection input has {} values for a mesh with {n} nodes",
                psi.len()
            )));
        }
        let maxabs = psi.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let tol = self.op.mesh.h.sqrt() * maxabs;
        if maxabs > 0.0 {
            if self.op.mesh.lo_dirichlet() && psi[0].abs() > tol {
                return Err(Error::SupportViolation(format!(
                    "value {} at boundary-adjacent angle {}",
                    psi[0], self.op.mesh.thetas[0]
                )));
            }
            if self.op.mesh.hi_dirichlet() && psi[n - 1].abs() > tol {
                return Err(Error::SupportViolation(format!(
                    "value {} at boundary-adjacent angle {}",
                    psi[n - 1],
                    self.op.mesh.thetas[n - 1]
                )));
            }
        }
        Ok(self.phis.iter().map(|phi| self.op.mass_inner(psi, phi)).collect())
    }
}

/// Mesh-refinement estimate of the principal eigenvalue.
#[derive(Debug, Clone, Serialize)]
pub struct EigenEstimate {
    /// Nodes in the coarse mesh.
    pub n_coarse: usize,
    /// Nodes in the fine mesh (twice the coarse count).
    pub n_fine: usize,
    /// Principal eigenvalue on the coarse mesh.
    pub lambda_coarse: f64,
    /// Principal eigenvalue on the fine mesh.
    pub lambda_fine: f64,
    /// Richardson extrapolation of the two values.
    pub lambda: f64,
    /// Gap between the two mesh levels, an error indicator.
    pub diff: f64,
}

/// Principal eigenvalue with Richardson extrapolation over meshes of
/// `n` and `2n` nodes, assuming second-order convergence.
pub fn refined_lambda1(
    domain: &AngularDomain,
    potential: &AngularPotential,
    n: usize,
) -> Result<EigenEstimate> {
    let needs_nodes = |k: usize| -> Result<f64> {
        let pot = match potential {
            AngularPotential::Tabulated(_) => {
                return Err(Error::InvalidParameter(
                    "tabulated potentials cannot be refined across meshes".into(),
                ))
            }
            other => other.clone(),
        };
        let op = assemble(domain, k, &pot)?;
        Ok(op.principal_eigenpair().0)
    };
    let lambda_coarse = needs_nodes(n)?;
    let lambda_fine = needs_nodes(2 * n)?;
    let lambda = (4.0 * lambda_fine - lambda_coarse) / 3.0;
    Ok(EigenEstimate {
        n_coarse: n,
        n_fine: 2 * n,
        lambda_coarse,
        lambda_fine,
        lambda,
        diff: (lambda_fine - lambda_coarse).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::AngularDomain;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn hemisphere() -> AngularDomain {
        AngularDomain::cap(3, FRAC_PI_2).unwrap()
    }

    #[test]
    fn hemisphere_principal_eigenvalue_converges_to_two() {
        let est = refined_lambda1(&hemisphere(), &AngularPotential::Zero, 512).unwrap();
        assert_abs_diff_eq!(est.lambda, 2.0, epsilon = 1e-8);
        assert!(est.diff < 1e-4);
    }

    #[test]
    fn full_sphere_ground_state_is_constant_with_zero_eigenvalue() {
        let domain = AngularDomain::full_sphere(3).unwrap();
        let op = assemble(&domain, 201, &AngularPotential::Zero).unwrap();
        let (lambda, phi) = op.principal_eigenpair();
        assert!(lambda.abs() < 1e-10, "lambda1 = {lambda}");
        let mean: f64 = phi.iter().sum::<f64>() / phi.len() as f64;
        for p in &phi {
            assert_abs_diff_eq!(*p, mean, epsilon = 1e-8 * mean.abs());
        }
    }

    #[test]
    fn full_sphere_spectrum_matches_axisymmetric_harmonics() {
        let domain = AngularDomain::full_sphere(3).unwrap();
        let est1 = refined_lambda1(&domain, &AngularPotential::Zero, 400).unwrap();
        assert!(est1.lambda.abs() < 1e-10);
        let op = assemble(&domain, 1601, &AngularPotential::Zero).unwrap();
        let basis = op.eigen_basis(4).unwrap();
        let exact = [0.0, 2.0, 6.0, 12.0];
        for (got, want) in basis.lambdas.iter().zip(exact) {
            assert_abs_diff_eq!(*got, want, epsilon = 2e-4f64.max(want * 1e-5));
        }
    }

    #[test]
    fn cap_of_angle_pi_matches_full_sphere_exactly() {
        let cap = AngularDomain::cap(3, PI).unwrap();
        let sphere = AngularDomain::full_sphere(3).unwrap();
        let op_cap = assemble(&cap, 301, &AngularPotential::Zero).unwrap();
        let op_sph = assemble(&sphere, 301, &AngularPotential::Zero).unwrap();
        let (l_cap, phi_cap) = op_cap.principal_eigenpair();
        let (l_sph, phi_sph) = op_sph.principal_eigenpair();
        assert_eq!(l_cap, l_sph);
        assert_eq!(phi_cap, phi_sph);
    }

    #[test]
    fn eigenvectors_are_mass_orthonormal() {
        let domain = AngularDomain::band(4, 0.4, 2.4).unwrap();
        let op = assemble(&domain, 257, &AngularPotential::Zero).unwrap();
        let basis = op.eigen_basis(6).unwrap();
        for j in 0..basis.len() {
            for k in 0..basis.len() {
                let want = if j == k { 1.0 } else { 0.0 };
                let got = op.mass_inner(&basis.phis[j], &basis.phis[k]);
                assert_abs_diff_eq!(got, want, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn eigenvalue_error_decays_at_second_order() {
        let domain = hemisphere();
        let lambda = |n: usize| {
            assemble(&domain, n, &AngularPotential::Zero)
                .unwrap()
                .principal_eigenpair()
                .0
        };
        let e1 = (lambda(64) - 2.0).abs();
        let e2 = (lambda(128) - 2.0).abs();
        let e3 = (lambda(256) - 2.0).abs();
        let r1 = e1 / e2;
        let r2 = e2 / e3;
        assert!((3.0..5.0).contains(&r1), "ratio {r1}");
        assert!((3.0..5.0).contains(&r2), "ratio {r2}");
    }

    #[test]
    fn indicator_potential_lowers_principal_eigenvalue_to_first_order() {
        let domain = hemisphere();
        let eps = 1e-3;
        let region = AngularDomain::cap(3, 0.7).unwrap();
        let plain = assemble(&domain, 1024, &AngularPotential::Zero).unwrap();
        let (l0, phi) = plain.principal_eigenpair();
        let shifted = assemble(
            &domain,
            1024,
            &AngularPotential::Indicator { region, eps },
        )
        .unwrap();
        let (l1, _) = shifted.principal_eigenpair();
        let chi: Vec<f64> = plain
            .mesh
            .thetas
            .iter()
            .zip(&phi)
            .map(|(&t, &p)| if region.contains(t) { p * p } else { 0.0 })
            .collect();
        let ones = vec![1.0; chi.len()];
        let first_order = eps * plain.mass_inner(&chi, &ones);
        assert_abs_diff_eq!(l0 - l1, first_order, epsilon = eps * eps * 10.0);
    }

    #[test]
    fn projection_recovers_synthetic_coefficients() {
        let domain = hemisphere();
        let op = assemble(&domain, 400, &AngularPotential::Zero).unwrap();
        let basis = op.eigen_basis(5).unwrap();
        let coeffs = [0.8, -0.3, 0.0, 0.11, -0.02];
        let mut psi = vec![0.0; op.len()];
        for (c, phi) in coeffs.iter().zip(&basis.phis) {
            for (p, v) in psi.iter_mut().zip(phi) {
                *p += c * v;
            }
        }
        let got = basis.project(&psi).unwrap();
        for (g, w) in got.iter().zip(coeffs) {
            assert_abs_diff_eq!(*g, w, epsilon = 1e-10);
        }
    }

    #[test]
    fn projection_rejects_data_supported_up_to_the_boundary() {
        let domain = hemisphere();
        let op = assemble(&domain, 256, &AngularPotential::Zero).unwrap();
        let basis = op.eigen_basis(3).unwrap();
        let psi = vec![1.0; op.len()];
        let err = basis.project(&psi).unwrap_err();
        assert!(matches!(err, Error::SupportViolation(_)));
    }

    #[test]
    fn coarse_meshes_and_oversized_bases_are_rejected() {
        let domain = hemisphere();
        assert!(matches!(
            AngularMesh::new(&domain, 8),
            Err(Error::MeshTooCoarse(_))
        ));
        let op = assemble(&domain, 64, &AngularPotential::Zero).unwrap();
        assert!(matches!(op.eigen_basis(17), Err(Error::KTooLarge(_))));
        assert!(op.eigen_basis(16).is_ok());
    }

    #[test]
    fn band_ground_state_is_symmetric_about_the_midline() {
        let domain = AngularDomain::band(3, PI / 4.0, 3.0 * PI / 4.0).unwrap();
        let op = assemble(&domain, 301, &AngularPotential::Zero).unwrap();
        let (_, phi) = op.principal_eigenpair();
        let n = phi.len();
        for i in 0..n / 2 {
            assert_abs_diff_eq!(phi[i], phi[n - 1 - i], epsilon = 1e-9);
        }
    }
}
