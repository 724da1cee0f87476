//! Finite-volume discretization of axisymmetric cone sections.
//!
//! A cone section is the set of points whose radius lies in `(r0, r1)` and
//! whose direction lies in an [`AngularDomain`].  In the logarithmic radius
//! `s = log r` the Dirichlet energy of an axisymmetric function `u(s, theta)`
//! under a radial-angular matrix field with angular factor `g(r)` is
//!
//! ```text
//! E(u) = integral [ (du/ds)^2 + g(e^s) |grad_omega u|^2 ] e^{(N-2)s} ds domega,
//! ```
//!
//! with mass `integral u^2 e^{Ns} ds domega`.  Both split into tensor
//! products of one-dimensional pieces, so the discrete operator is a sum of
//! Kronecker products of tridiagonal matrices.  Solves diagonalize the
//! angular factor once and then reduce to independent tridiagonal systems
//! per angular mode, which keeps large sections cheap.
//!
//! Boundary conditions: homogeneous Dirichlet on the lateral boundary
//! (where the angular domain has one), inhomogeneous Dirichlet data on the
//! inner and outer spherical caps via [`ConeBoundary`].

use crate::angular::{assemble, AngularOperator, AngularPotential};
use crate::linalg::{FactoredTridiag, SymTridiag};
use crate::quad::gauss5;
use crate::radial::RadialCoefficient;
use crate::sphere::AngularDomain;
use crate::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::cell::OnceCell;

/// Coefficient matrix fields for the divergence-form operator.
///
/// Every member is radially symmetric and block-diagonal in polar
/// coordinates: the radial direction carries coefficient one, the angular
/// block carries a scalar factor `g(r)`.
#[derive(Debug, Clone)]
pub enum MatrixGallery {
    /// The Laplacian: `g = 1`.
    Identity,
    /// Angular factor `g(r) = d(r) / lambda_ref`, so that the combination
    /// of this matrix with an angular eigenvalue `lambda_ref` produces the
    /// radial law `d(r)` in separated solutions.
    RadialAngular {
        coefficient: RadialCoefficient,
        lambda_ref: f64,
    },
}

impl MatrixGallery {
    /// The identity matrix field.
    pub fn identity() -> Self {
        MatrixGallery::Identity
    }

    /// Radial-angular field normalized against a reference angular
    /// eigenvalue, which must be positive.
    pub fn radial_angular(coefficient: RadialCoefficient, lambda_ref: f64) -> Result<Self> {
        if !(lambda_ref.is_finite() && lambda_ref > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "radial-angular matrix needs a positive reference eigenvalue, got {lambda_ref}"
            )));
        }
        Ok(MatrixGallery::RadialAngular {
            coefficient,
            lambda_ref,
        })
    }

    /// Angular factor at `s = log r`.
    pub fn g_log(&self, s: f64) -> f64 {
        match self {
            MatrixGallery::Identity => 1.0,
            MatrixGallery::RadialAngular {
                coefficient,
                lambda_ref,
            } => coefficient.d_log(s) / lambda_ref,
        }
    }

    /// Angular factor at radius `r`.
    pub fn g(&self, r: f64) -> f64 {
        self.g_log(r.ln())
    }

    /// Smallest radius at which the field is defined.
    pub fn min_radius(&self) -> f64 {
        match self {
            MatrixGallery::Identity => 0.0,
            MatrixGallery::RadialAngular { coefficient, .. } => coefficient.min_radius(),
        }
    }

    /// Short description used in report artifacts.
    pub fn tag(&self) -> String {
        match self {
            MatrixGallery::Identity => "identity".into(),
            MatrixGallery::RadialAngular {
                coefficient,
                lambda_ref,
            } => format!("radial_angular({}, lambda_ref={lambda_ref})", coefficient.tag()),
        }
    }
}

/// Nodal values on the tensor grid of a cone section, stored row-major with
/// the radial index outermost: entry `j * n_theta + i` holds the value at
/// radial node `j` and angular node `i`.
#[derive(Debug, Clone, Serialize)]
pub struct DiscreteField {
    /// Number of interior radial layers.
    pub n_s: usize,
    /// Number of angular nodes per layer.
    pub n_theta: usize,
    /// Nodal values.
    pub values: Vec<f64>,
}

impl DiscreteField {
    /// The zero field.
    pub fn zeros(n_s: usize, n_theta: usize) -> Self {
        DiscreteField {
            n_s,
            n_theta,
            values: vec![0.0; n_s * n_theta],
        }
    }

    /// Build a field from a function of `(radial index, angular index)`.
    pub fn from_fn(n_s: usize, n_theta: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut values = Vec::with_capacity(n_s * n_theta);
        for j in 0..n_s {
            for i in 0..n_theta {
                values.push(f(j, i));
            }
        }
        DiscreteField {
            n_s,
            n_theta,
            values,
        }
    }

    /// Value at radial node `j`, angular node `i`.
    pub fn get(&self, j: usize, i: usize) -> f64 {
        self.values[j * self.n_theta + i]
    }

    /// Set the value at radial node `j`, angular node `i`.
    pub fn set(&mut self, j: usize, i: usize, v: f64) {
        self.values[j * self.n_theta + i] = v;
    }

    /// Largest value.
    pub fn max(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Smallest value.
    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Supremum norm.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Elementwise map.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        DiscreteField {
            n_s: self.n_s,
            n_theta: self.n_theta,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }
}

/// Dirichlet data on the two spherical caps bounding a cone section; the
/// lateral boundary always carries homogeneous data.
#[derive(Debug, Clone, Serialize)]
pub struct ConeBoundary {
    /// Values on the inner cap, one per angular node.
    pub inner: Vec<f64>,
    /// Values on the outer cap, one per angular node.
    pub outer: Vec<f64>,
}

impl ConeBoundary {
    /// Homogeneous data.
    pub fn zero(n_theta: usize) -> Self {
        ConeBoundary {
            inner: vec![0.0; n_theta],
            outer: vec![0.0; n_theta],
        }
    }

    /// Whether every datum is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.inner.iter().chain(self.outer.iter()).all(|&v| v >= 0.0)
    }
}

/// Discretized divergence-form operator on a cone section.
#[derive(Debug)]
pub struct ConeOperator {
    /// Angular cross-section.
    pub domain: AngularDomain,
    /// Inner radius of the section.
    pub r_inner: f64,
    /// Outer radius of the section.
    pub r_outer: f64,
    /// Coefficient matrix field.
    pub matrix: MatrixGallery,
    s_nodes: Vec<f64>,
    a_face: Vec<f64>,
    m_full: Vec<f64>,
    m_ang: Vec<f64>,
    g_bounds: (f64, f64),
    angular: AngularOperator,
    modes: Vec<f64>,
    basis: OnceCell<Vec<Vec<f64>>>,
}

impl ConeOperator {
    /// Assemble the operator on the section `r_inner < r < r_outer` with
    /// `nodes_per_decade` radial resolution and `n_theta` angular nodes.
    ///
    /// Fails with `NeverElliptic` when the angular factor of the matrix
    /// field is not strictly positive on the section.
    pub fn new(
        domain: &AngularDomain,
        r_inner: f64,
        r_outer: f64,
        matrix: &MatrixGallery,
        nodes_per_decade: usize,
        n_theta: usize,
    ) -> Result<Self> {
        if !(r_inner.is_finite() && r_outer.is_finite() && r_inner > 0.0 && r_outer > r_inner) {
            return Err(Error::InvalidDomain(format!(
                "cone section needs 0 < r_inner < r_outer, got [{r_inner}, {r_outer}]"
            )));
        }
        if r_inner < matrix.min_radius() {
            return Err(Error::InvalidDomain(format!(
                "matrix field {} is only defined for r >= {}, got r_inner = {r_inner}",
                matrix.tag(),
                matrix.min_radius()
            )));
        }
        if nodes_per_decade == 0 {
            return Err(Error::InvalidParameter(
                "nodes_per_decade must be positive".into(),
            ));
        }
        let angular = assemble(domain, n_theta, &AngularPotential::Zero)?;
        let n = domain.dimension as f64;
        let (s0, s1) = (r_inner.ln(), r_outer.ln());
        let decades = (s1 - s0) / std::f64::consts::LN_10;
        let segments = ((decades * nodes_per_decade as f64).round() as usize).max(8);
        let h_s = (s1 - s0) / segments as f64;
        let n_s = segments - 1;
        let s_nodes: Vec<f64> = (1..=n_s).map(|j| s0 + j as f64 * h_s).collect();
        let mut g_lo = f64::INFINITY;
        let mut g_hi = f64::NEG_INFINITY;
        let scan = 16 * segments;
        for i in 0..=scan {
            let s = s0 + (s1 - s0) * i as f64 / scan as f64;
            let g = matrix.g_log(s);
            g_lo = g_lo.min(g);
            g_hi = g_hi.max(g);
        }
        if !(g_lo.is_finite() && g_lo > 0.0) {
            return Err(Error::NeverElliptic(format!(
                "angular factor of {} reaches {g_lo} on [{r_inner}, {r_outer}]",
                matrix.tag()
            )));
        }
        let a_face: Vec<f64> = (0..=n_s)
            .map(|j| {
                let s = s0 + (j as f64 + 0.5) * h_s;
                ((n - 2.0) * s).exp() / h_s
            })
            .collect();
        let mut m_full = Vec::with_capacity(n_s);
        let mut m_ang = Vec::with_capacity(n_s);
        for j in 0..n_s {
            let lo = s0 + (j as f64 + 0.5) * h_s;
            let hi = lo + h_s;
            m_full.push(((n * hi).exp() - (n * lo).exp()) / n);
            m_ang.push(gauss5(
                |s| matrix.g_log(s) * ((n - 2.0) * s).exp(),
                lo,
                hi,
            ));
        }
        if m_full.iter().any(|&m| m < 1e-290) || a_face.iter().any(|&a| !a.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "radial range [{r_inner}, {r_outer}] is too extreme for the weight functions"
            )));
        }
        let n_nodes = angular.len();
        let standard = angular.standard_matrix();
        let modes: Vec<f64> = (0..n_nodes).map(|k| standard.eigenvalue(k)).collect();
        Ok(ConeOperator {
            domain: *domain,
            r_inner,
            r_outer,
            matrix: matrix.clone(),
            s_nodes,
            a_face,
            m_full,
            m_ang,
            g_bounds: (g_lo, g_hi),
            angular,
            modes,
            basis: OnceCell::new(),
        })
    }

    /// Number of interior radial layers.
    pub fn n_s(&self) -> usize {
        self.s_nodes.len()
    }

    /// Number of angular nodes per layer.
    pub fn n_theta(&self) -> usize {
        self.angular.len()
    }

    /// Radii of the interior radial layers.
    pub fn radii(&self) -> Vec<f64> {
        self.s_nodes.iter().map(|s| s.exp()).collect()
    }

    /// Logarithms of the interior layer radii.
    pub fn log_radii(&self) -> &[f64] {
        &self.s_nodes
    }

    /// Angular node positions.
    pub fn thetas(&self) -> &[f64] {
        &self.angular.mesh.thetas
    }

    /// The assembled angular operator (zero potential).
    pub fn angular_operator(&self) -> &AngularOperator {
        &self.angular
    }

    /// Range of the angular coefficient factor over the section.
    pub fn ellipticity_bounds(&self) -> (f64, f64) {
        self.g_bounds
    }

    /// Smallest generalized eigenvalue of the section with homogeneous
    /// Dirichlet data, with the index of the angular mode attaining it.
    ///
    /// Separation makes each angular mode `k` contribute the smallest
    /// eigenvalue of a radial tridiagonal problem; the minimum over `k` is
    /// taken with a sound truncation rule, since the mode-`k` eigenvalue is
    /// at least `lambda_k` times the worst cell ratio of angular to full
    /// mass, and the `lambda_k` are scanned in ascending order.
    pub fn principal_eigenvalue(&self) -> (f64, usize) {
        let min_ratio = self
            .m_ang
            .iter()
            .zip(self.m_full.iter())
            .map(|(a, f)| a / f)
            .fold(f64::INFINITY, f64::min);
        let mut best = f64::INFINITY;
        let mut best_mode = 0;
        for (k, &mode) in self.modes.iter().enumerate() {
            if mode * min_ratio >= best {
                break;
            }
            let lambda = self.mode_eigenvalue(mode);
            if lambda < best {
                best = lambda;
                best_mode = k;
            }
        }
        (best, best_mode)
    }

    /// Smallest radial eigenvalue for a fixed angular eigenvalue.
    fn mode_eigenvalue(&self, angular_lambda: f64) -> f64 {
        let n_s = self.n_s();
        let mut diag = Vec::with_capacity(n_s);
        let mut off = Vec::with_capacity(n_s.saturating_sub(1));
        for j in 0..n_s {
            let t = self.a_face[j] + self.a_face[j + 1] + angular_lambda * self.m_ang[j];
            diag.push(t / self.m_full[j]);
        }
        for j in 0..n_s - 1 {
            off.push(-self.a_face[j + 1] / (self.m_full[j] * self.m_full[j + 1]).sqrt());
        }
        SymTridiag { diag, off }.eigenvalue(0)
    }

    fn basis_vectors(&self) -> &Vec<Vec<f64>> {
        self.basis
            .get_or_init(|| self.angular.full_standard_basis().1)
    }

    fn sqrt_masses(&self) -> Vec<f64> {
        self.angular
            .mesh
            .cell_measure
            .iter()
            .map(|m| m.sqrt())
            .collect()
    }

    /// Expand angular nodal values in the discrete eigenbasis.
    fn analyze(&self, u: &[f64], sqrt_m: &[f64], out: &mut [f64]) {
        let basis = self.basis_vectors();
        for (k, x) in basis.iter().enumerate() {
            let mut c = 0.0;
            for i in 0..u.len() {
                c += x[i] * sqrt_m[i] * u[i];
            }
            out[k] = c;
        }
    }

    fn synthesize(&self, c: &[f64], sqrt_m: &[f64], out: &mut [f64]) {
        let basis = self.basis_vectors();
        for v in out.iter_mut() {
            *v = 0.0;
        }
        for (k, x) in basis.iter().enumerate() {
            let ck = c[k];
            for i in 0..out.len() {
                out[i] += ck * x[i];
            }
        }
        for i in 0..out.len() {
            out[i] /= sqrt_m[i];
        }
    }

    /// Factor the per-mode radial systems of `-L + shift` once, for
    /// repeated solves against many right-hand sides.
    pub(crate) fn factor_shifted(&self, shift: f64) -> Vec<FactoredTridiag> {
        let n_s = self.n_s();
        self.modes
            .iter()
            .map(|&mode| {
                let mut diag = Vec::with_capacity(n_s);
                for j in 0..n_s {
                    diag.push(
                        self.a_face[j]
                            + self.a_face[j + 1]
                            + mode * self.m_ang[j]
                            + shift * self.m_full[j],
                    );
                }
                let off: Vec<f64> = (0..n_s - 1).map(|j| -self.a_face[j + 1]).collect();
                FactoredTridiag::new(&diag, &off)
            })
            .collect()
    }

    /// Solve `(-L + shift) w = source` with Dirichlet data on the caps,
    /// reusing pre-factored per-mode systems from
    /// [`ConeOperator::factor_shifted`].
    pub(crate) fn solve_with_factors(
        &self,
        factors: &[FactoredTridiag],
        source: &DiscreteField,
        boundary: &ConeBoundary,
    ) -> Result<DiscreteField> {
        let (n_s, n_theta) = (self.n_s(), self.n_theta());
        if source.n_s != n_s || source.n_theta != n_theta {
            return Err(Error::InvalidParameter(format!(
                "source shape {}x{} does not match the {n_s}x{n_theta} grid",
                source.n_s, source.n_theta
            )));
        }
        if boundary.inner.len() != n_theta || boundary.outer.len() != n_theta {
            return Err(Error::InvalidParameter(format!(
                "boundary data must carry {n_theta} angular values per cap"
            )));
        }
        let sqrt_m = self.sqrt_masses();
        let mut f_hat = vec![0.0; n_s * n_theta];
        let mut layer = vec![0.0; n_theta];
        for j in 0..n_s {
            layer.copy_from_slice(&source.values[j * n_theta..(j + 1) * n_theta]);
            self.analyze(&layer, &sqrt_m, &mut f_hat[j * n_theta..(j + 1) * n_theta]);
        }
        let mut g_in = vec![0.0; n_theta];
        let mut g_out = vec![0.0; n_theta];
        self.analyze(&boundary.inner, &sqrt_m, &mut g_in);
        self.analyze(&boundary.outer, &sqrt_m, &mut g_out);
        let mut w_hat = vec![0.0; n_s * n_theta];
        let mut rhs = vec![0.0; n_s];
        for (k, factor) in factors.iter().enumerate() {
            for j in 0..n_s {
                rhs[j] = self.m_full[j] * f_hat[j * n_theta + k];
            }
            rhs[0] += self.a_face[0] * g_in[k];
            rhs[n_s - 1] += self.a_face[n_s] * g_out[k];
            let sol = factor.solve(&rhs);
            for j in 0..n_s {
                w_hat[j * n_theta + k] = sol[j];
            }
        }
        let mut out = DiscreteField::zeros(n_s, n_theta);
        let mut coeffs = vec![0.0; n_theta];
        for j in 0..n_s {
            coeffs.copy_from_slice(&w_hat[j * n_theta..(j + 1) * n_theta]);
            self.synthesize(
                &coeffs,
                &sqrt_m,
                &mut out.values[j * n_theta..(j + 1) * n_theta],
            );
        }
        Ok(out)
    }

    /// Solve `(-L + shift) w = source` with Dirichlet cap data.
    pub fn solve_dirichlet(
        &self,
        source: &DiscreteField,
        boundary: &ConeBoundary,
        shift: f64,
    ) -> Result<DiscreteField> {
        if !shift.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "shift must be finite, got {shift}"
            )));
        }
        let factors = self.factor_shifted(shift);
        self.solve_with_factors(&factors, source, boundary)
    }

    /// Apply the strong-form operator `-L` to interior values `w` with the
    /// given cap data, returning nodal values of `-L w`.
    pub fn apply(&self, w: &DiscreteField, boundary: &ConeBoundary) -> Result<DiscreteField> {
        let (n_s, n_theta) = (self.n_s(), self.n_theta());
        if w.n_s != n_s || w.n_theta != n_theta {
            return Err(Error::InvalidParameter(format!(
                "field shape {}x{} does not match the {n_s}x{n_theta} grid",
                w.n_s, w.n_theta
            )));
        }
        if boundary.inner.len() != n_theta || boundary.outer.len() != n_theta {
            return Err(Error::InvalidParameter(format!(
                "boundary data must carry {n_theta} angular values per cap"
            )));
        }
        let (stiff_diag, stiff_off) = self.angular.stiffness_parts();
        let masses = &self.angular.mesh.cell_measure;
        let mut out = DiscreteField::zeros(n_s, n_theta);
        for j in 0..n_s {
            for i in 0..n_theta {
                let wj = w.get(j, i);
                let below = if j == 0 { boundary.inner[i] } else { w.get(j - 1, i) };
                let above = if j + 1 == n_s {
                    boundary.outer[i]
                } else {
                    w.get(j + 1, i)
                };
                let mut v = self.a_face[j] * (wj - below) + self.a_face[j + 1] * (wj - above);
                v *= masses[i];
                let mut ang = stiff_diag[i] * wj;
                if i > 0 {
                    ang += stiff_off[i - 1] * w.get(j, i - 1);
                }
                if i + 1 < n_theta {
                    ang += stiff_off[i] * w.get(j, i + 1);
                }
                v += self.m_ang[j] * ang;
                out.set(j, i, v / (self.m_full[j] * masses[i]));
            }
        }
        Ok(out)
    }

    /// Discrete energy pairing `phi^T A u` of the stiffness form, with both
    /// fields extended by zero across the section boundary.
    ///
    /// When `phi` vanishes on the layers adjacent to the caps this equals
    /// the Dirichlet-form pairing regardless of the cap data carried by the
    /// underlying problem.
    pub fn energy_pairing(&self, phi: &DiscreteField, u: &DiscreteField) -> f64 {
        let (n_s, n_theta) = (self.n_s(), self.n_theta());
        assert_eq!(phi.values.len(), n_s * n_theta);
        assert_eq!(u.values.len(), n_s * n_theta);
        let (stiff_diag, stiff_off) = self.angular.stiffness_parts();
        let masses = &self.angular.mesh.cell_measure;
        let mut total = 0.0;
        for j in 0..n_s {
            for i in 0..n_theta {
                let uj = u.get(j, i);
                let below = if j == 0 { 0.0 } else { u.get(j - 1, i) };
                let above = if j + 1 == n_s { 0.0 } else { u.get(j + 1, i) };
                let mut v = self.a_face[j] * (uj - below) + self.a_face[j + 1] * (uj - above);
                v *= masses[i];
                let mut ang = stiff_diag[i] * uj;
                if i > 0 {
                    ang += stiff_off[i - 1] * u.get(j, i - 1);
                }
                if i + 1 < n_theta {
                    ang += stiff_off[i] * u.get(j, i + 1);
                }
                v += self.m_ang[j] * ang;
                total += phi.get(j, i) * v;
            }
        }
        total
    }

    /// Discrete mass pairing `phi^T M u`.
    pub fn mass_pairing(&self, phi: &DiscreteField, u: &DiscreteField) -> f64 {
        let (n_s, n_theta) = (self.n_s(), self.n_theta());
        assert_eq!(phi.values.len(), n_s * n_theta);
        assert_eq!(u.values.len(), n_s * n_theta);
        let masses = &self.angular.mesh.cell_measure;
        let mut total = 0.0;
        for j in 0..n_s {
            for (i, &mass) in masses.iter().enumerate().take(n_theta) {
                total += phi.get(j, i) * u.get(j, i) * self.m_full[j] * mass;
            }
        }
        total
    }

    /// Check the discrete maximum principle, structurally and by sampling.
    ///
    /// The structural part verifies the sign pattern that makes the system
    /// matrix an M-matrix: nonnegative face conductances, positive cell
    /// masses, nonpositive angular couplings.  The sampled part solves the
    /// homogeneous equation for ten random nonnegative cap data sets and
    /// checks that no interior value dips below zero beyond roundoff.
    pub fn maximum_principle_check(&self, seed: u64) -> bool {
        let structural = self.a_face.iter().all(|&a| a.is_finite() && a >= 0.0)
            && self.m_full.iter().all(|&m| m > 0.0)
            && self.m_ang.iter().all(|&m| m > 0.0)
            && self.angular.stiffness_parts().1.iter().all(|&o| o <= 0.0);
        if !structural {
            return false;
        }
        let n_theta = self.n_theta();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let factors = self.factor_shifted(0.0);
        let source = DiscreteField::zeros(self.n_s(), n_theta);
        for _ in 0..10 {
            let boundary = ConeBoundary {
                inner: (0..n_theta).map(|_| rng.gen::<f64>()).collect(),
                outer: (0..n_theta).map(|_| rng.gen::<f64>()).collect(),
            };
            let w = match self.solve_with_factors(&factors, &source, &boundary) {
                Ok(w) => w,
                Err(_) => return false,
            };
            let tol = -1e-9 * w.max().max(1.0);
            if w.min() < tol {
                return false;
            }
        }
        true
    }

    /// Flip the sign of one angular mass weight, breaking the M-matrix
    /// structure.  Exists so tests can confirm the maximum-principle check
    /// actually rejects corrupted assemblies.
    #[doc(hidden)]
    pub fn corrupt_coupling(&mut self) {
        self.m_ang[0] = -self.m_ang[0];
    }
}

/// Result of a principal-eigenvalue computation on an annular section.
#[derive(Debug, Clone, Serialize)]
pub struct AnnularEigenvalue {
    /// Inner radius.
    pub rho: f64,
    /// Ratio of outer to inner radius.
    pub factor: f64,
    /// Smallest Dirichlet eigenvalue of the section.
    pub lambda: f64,
    /// The scale-invariant combination `lambda * rho^2`.
    pub lambda_rho_sq: f64,
    /// Index of the angular mode attaining the minimum.
    pub mode: usize,
    /// Interior radial layers used.
    pub radial_nodes: usize,
    /// Angular nodes used.
    pub angular_nodes: usize,
}

/// Principal Dirichlet eigenvalue of the annular cone section
/// `rho < r < factor * rho`.
pub fn annular_eigenvalue(
    domain: &AngularDomain,
    matrix: &MatrixGallery,
    rho: f64,
    factor: f64,
    nodes_per_decade: usize,
    n_theta: usize,
) -> Result<AnnularEigenvalue> {
    if !(factor.is_finite() && factor > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "annulus factor must exceed one, got {factor}"
        )));
    }
    let op = ConeOperator::new(domain, rho, factor * rho, matrix, nodes_per_decade, n_theta)?;
    let (lambda, mode) = op.principal_eigenvalue();
    Ok(AnnularEigenvalue {
        rho,
        factor,
        lambda,
        lambda_rho_sq: lambda * rho * rho,
        mode,
        radial_nodes: op.n_s(),
        angular_nodes: op.n_theta(),
    })
}

/// Principal eigenvalues of the dyadic-style annuli `rho < r < 2 rho` for a
/// list of inner radii, exposing how `lambda * rho^2` behaves under scaling.
pub fn scaling_curve(
    domain: &AngularDomain,
    matrix: &MatrixGallery,
    rhos: &[f64],
    nodes_per_decade: usize,
    n_theta: usize,
) -> Result<Vec<AnnularEigenvalue>> {
    rhos.iter()
        .map(|&rho| annular_eigenvalue(domain, matrix, rho, 2.0, nodes_per_decade, n_theta))
        .collect()
}

/// Extremes of a positive solution over the measured subregion of a
/// Harnack-type experiment.
fn measure_ratio(
    op: &ConeOperator,
    w: &DiscreteField,
    domain_prime: &AngularDomain,
    s_max: f64,
) -> Result<f64> {
    let thetas = op.thetas();
    let mut inf = f64::INFINITY;
    let mut sup = f64::NEG_INFINITY;
    let mut hit = false;
    for (j, &s) in op.log_radii().iter().enumerate() {
        if s > s_max {
            break;
        }
        for (i, &theta) in thetas.iter().enumerate() {
            if !domain_prime.contains(theta) {
                continue;
            }
            hit = true;
            let v = w.get(j, i);
            inf = inf.min(v);
            sup = sup.max(v);
        }
    }
    if !hit {
        return Err(Error::MeshTooCoarse(
            "no grid nodes fall inside the measured subregion".into(),
        ));
    }
    if !(sup > 0.0 && inf > 0.0) {
        return Err(Error::DegenerateData(format!(
            "solution range [{inf}, {sup}] over the measured subregion is not positive"
        )));
    }
    Ok(inf / sup)
}

/// Report of a dyadic Harnack-type oscillation experiment.
#[derive(Debug, Clone, Serialize)]
pub struct HarnackReport {
    /// Base radius of the dyadic sequence.
    pub rho: f64,
    /// Number of dyadic levels.
    pub levels: usize,
    /// Random boundary-data trials per level.
    pub trials: usize,
    /// Worst observed ratio of infimum to supremum.
    pub c_s: f64,
    /// Dyadic decay exponent `log2(c_s)`.
    pub alpha: f64,
    /// Worst ratio per level.
    pub level_ratios: Vec<f64>,
}

/// Estimate the dyadic oscillation constant of nonnegative solutions.
///
/// For each level `n` the section `3 r_n / 4 < r < 7 r_n / 2` with
/// `r_n = 2^n rho` is solved with random nonnegative cap data, and the
/// ratio of infimum to supremum is measured over the inner half
/// `3 r_n / 4 < r < 7 r_n / 4` restricted to directions in `domain_prime`,
/// which must sit strictly inside `domain`.  The worst ratio `c_s` over all
/// levels and trials gives the decay exponent `alpha = log2(c_s)`.
#[allow(clippy::too_many_arguments)]
pub fn harnack_exponent(
    domain: &AngularDomain,
    domain_prime: &AngularDomain,
    matrix: &MatrixGallery,
    rho: f64,
    levels: usize,
    trials: usize,
    nodes_per_decade: usize,
    n_theta: usize,
    seed: u64,
) -> Result<HarnackReport> {
    if levels < 3 {
        return Err(Error::InvalidParameter(format!(
            "harnack experiment needs at least three levels, got {levels}"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter(
            "harnack experiment needs at least one trial".into(),
        ));
    }
    if domain_prime.dimension != domain.dimension {
        return Err(Error::InvalidDomain(format!(
            "dimension mismatch: domain N={}, subdomain N={}",
            domain.dimension, domain_prime.dimension
        )));
    }
    let (lo, hi) = domain.theta_range();
    let (lo_p, hi_p) = domain_prime.theta_range();
    let lo_ok = if domain.lo_is_pole() {
        lo_p >= lo
    } else {
        lo_p > lo + 1e-9
    };
    let hi_ok = if domain.hi_is_pole() {
        hi_p <= hi
    } else {
        hi_p < hi - 1e-9
    };
    if !(lo_ok && hi_ok) {
        return Err(Error::InvalidDomain(
            "measured subdomain must sit strictly inside the section's angular domain".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c_s = f64::INFINITY;
    let mut level_ratios = Vec::with_capacity(levels);
    for level in 0..levels {
        let r_n = rho * 2f64.powi(level as i32);
        let op = ConeOperator::new(
            domain,
            0.75 * r_n,
            3.5 * r_n,
            matrix,
            nodes_per_decade,
            n_theta,
        )?;
        let factors = op.factor_shifted(0.0);
        let source = DiscreteField::zeros(op.n_s(), op.n_theta());
        let s_max = (1.75 * r_n).ln();
        let mut worst = f64::INFINITY;
        for _ in 0..trials {
            let boundary = ConeBoundary {
                inner: (0..op.n_theta()).map(|_| rng.gen::<f64>()).collect(),
                outer: (0..op.n_theta()).map(|_| rng.gen::<f64>()).collect(),
            };
            let w = op.solve_with_factors(&factors, &source, &boundary)?;
            let ratio = measure_ratio(&op, &w, domain_prime, s_max)?;
            worst = worst.min(ratio);
        }
        level_ratios.push(worst);
        c_s = c_s.min(worst);
    }
    Ok(HarnackReport {
        rho,
        levels,
        trials,
        c_s,
        alpha: c_s.log2(),
        level_ratios,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn hemisphere() -> AngularDomain {
        AngularDomain::cap(3, std::f64::consts::FRAC_PI_2).unwrap()
    }

    #[test]
    fn full_sphere_shell_eigenvalue_is_pi_squared() {
        let domain = AngularDomain::full_sphere(3).unwrap();
        let out =
            annular_eigenvalue(&domain, &MatrixGallery::identity(), 1.0, 2.0, 600, 24).unwrap();
        let exact = std::f64::consts::PI * std::f64::consts::PI;
        assert_abs_diff_eq!(out.lambda, exact, epsilon = 2e-3);
        assert_eq!(out.mode, 0);
    }

    #[test]
    fn eigenvalue_scales_like_inverse_radius_squared() {
        let domain = hemisphere();
        let matrix = MatrixGallery::identity();
        let base = annular_eigenvalue(&domain, &matrix, 1.0, 2.0, 64, 40).unwrap();
        for rho in [2.0, 8.0] {
            let scaled = annular_eigenvalue(&domain, &matrix, rho, 2.0, 64, 40).unwrap();
            assert_abs_diff_eq!(
                scaled.lambda_rho_sq,
                base.lambda_rho_sq,
                epsilon = 1e-11 * base.lambda_rho_sq
            );
        }
    }

    #[test]
    fn truncation_never_changes_the_minimum() {
        let domain = hemisphere();
        let op = ConeOperator::new(&domain, 1.0, 3.0, &MatrixGallery::identity(), 48, 40).unwrap();
        let (fast, mode) = op.principal_eigenvalue();
        let brute = (0..op.n_theta())
            .map(|k| op.mode_eigenvalue(op.modes[k]))
            .fold(f64::INFINITY, f64::min);
        assert_eq!(fast, brute);
        assert_eq!(mode, 0);
    }

    #[test]
    fn constant_data_on_boundaryless_domain_solves_exactly() {
        let domain = AngularDomain::full_sphere(3).unwrap();
        let op = ConeOperator::new(&domain, 1.0, 2.0, &MatrixGallery::identity(), 96, 24).unwrap();
        let boundary = ConeBoundary {
            inner: vec![1.0; op.n_theta()],
            outer: vec![1.0; op.n_theta()],
        };
        let source = DiscreteField::zeros(op.n_s(), op.n_theta());
        let w = op.solve_dirichlet(&source, &boundary, 0.0).unwrap();
        for &v in &w.values {
            assert_abs_diff_eq!(v, 1.0, epsilon = 1e-11);
        }
    }

    #[test]
    fn solve_round_trips_through_apply() {
        let domain = hemisphere();
        let op = ConeOperator::new(&domain, 1.0, 4.0, &MatrixGallery::identity(), 40, 32).unwrap();
        let boundary = ConeBoundary {
            inner: (0..op.n_theta()).map(|i| 0.5 + (i as f64 * 0.3).sin().abs()).collect(),
            outer: (0..op.n_theta()).map(|i| (i as f64 * 0.7).cos().abs()).collect(),
        };
        let w = DiscreteField::from_fn(op.n_s(), op.n_theta(), |j, i| {
            ((j as f64 * 0.21).sin() + 1.5) * ((i as f64 * 0.13).cos() + 1.2)
        });
        let b = op.apply(&w, &boundary).unwrap();
        let back = op.solve_dirichlet(&b, &boundary, 0.0).unwrap();
        for (a, b) in w.values.iter().zip(back.values.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-9 * w.sup_norm());
        }
    }

    #[test]
    fn shifted_solve_round_trips() {
        let domain = hemisphere();
        let op = ConeOperator::new(&domain, 1.0, 3.0, &MatrixGallery::identity(), 32, 24).unwrap();
        let shift = 2.5;
        let boundary = ConeBoundary::zero(op.n_theta());
        let w = DiscreteField::from_fn(op.n_s(), op.n_theta(), |j, i| {
            ((j + 1) as f64 * 0.05) * ((i as f64 * 0.4).sin() + 1.1)
        });
        let lw = op.apply(&w, &boundary).unwrap();
        let source = DiscreteField::from_fn(op.n_s(), op.n_theta(), |j, i| {
            lw.get(j, i) + shift * w.get(j, i)
        });
        let back = op.solve_dirichlet(&source, &boundary, shift).unwrap();
        for (a, b) in w.values.iter().zip(back.values.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-9 * w.sup_norm().max(1.0));
        }
    }

    #[test]
    fn eigenvalue_decreases_as_the_domain_grows() {
        let matrix = MatrixGallery::identity();
        let small = AngularDomain::cap(3, 1.0).unwrap();
        let large = AngularDomain::cap(3, 2.0).unwrap();
        let a = annular_eigenvalue(&small, &matrix, 1.0, 2.0, 48, 40).unwrap();
        let b = annular_eigenvalue(&large, &matrix, 1.0, 2.0, 48, 40).unwrap();
        assert!(a.lambda > b.lambda);
        let wide = annular_eigenvalue(&small, &matrix, 1.0, 4.0, 48, 40).unwrap();
        assert!(wide.lambda < a.lambda);
    }

    #[test]
    fn radial_angular_matrix_shifts_the_spectrum() {
        let domain = hemisphere();
        let (lambda1, _) = assemble(&domain, 60, &AngularPotential::Zero)
            .unwrap()
            .principal_eigenpair();
        let coeff = RadialCoefficient::constant(3, -3.0).unwrap();
        let matrix = MatrixGallery::radial_angular(coeff, lambda1).unwrap();
        let id = annular_eigenvalue(&domain, &MatrixGallery::identity(), 1.0, 2.0, 48, 60).unwrap();
        let scaled = annular_eigenvalue(&domain, &matrix, 1.0, 2.0, 48, 60).unwrap();
        // g = alpha (alpha + 1) / lambda1 = 6 / lambda1 > 1 stiffens the
        // angular part, so the eigenvalue cannot drop.
        assert!(scaled.lambda > id.lambda);
    }

    #[test]
    fn maximum_principle_holds_and_corruption_is_caught() {
        let domain = hemisphere();
        let mut op = ConeOperator::new(&domain, 1.0, 3.0, &MatrixGallery::identity(), 24, 20).unwrap();
        assert!(op.maximum_principle_check(11));
        op.corrupt_coupling();
        assert!(!op.maximum_principle_check(11));
    }

    #[test]
    fn harnack_exponent_is_at_most_two_minus_n() {
        let domain = hemisphere();
        let inner = AngularDomain::cap(3, 1.0).unwrap();
        let report = harnack_exponent(
            &domain,
            &inner,
            &MatrixGallery::identity(),
            1.0,
            3,
            3,
            40,
            24,
            7,
        )
        .unwrap();
        assert!(report.c_s > 0.0 && report.c_s < 1.0);
        assert!(report.alpha <= -1.0, "alpha = {}", report.alpha);
        assert_eq!(report.level_ratios.len(), 3);
    }

    #[test]
    fn degenerate_measurements_are_reported() {
        let domain = hemisphere();
        let op = ConeOperator::new(&domain, 1.0, 3.0, &MatrixGallery::identity(), 24, 20).unwrap();
        let w = DiscreteField::zeros(op.n_s(), op.n_theta());
        let inner = AngularDomain::cap(3, 1.0).unwrap();
        let err = measure_ratio(&op, &w, &inner, 3.0f64.ln()).unwrap_err();
        assert!(matches!(err, Error::DegenerateData(_)));
    }

    #[test]
    fn indefinite_angular_factor_is_rejected() {
        let domain = hemisphere();
        let coeff = RadialCoefficient::tabulated(3, &[1.0, 10.0], &[1.0, -1.0]).unwrap();
        let matrix = MatrixGallery::radial_angular(coeff, 2.0).unwrap();
        let err = ConeOperator::new(&domain, 1.0, 20.0, &matrix, 24, 20).unwrap_err();
        assert!(matches!(err, Error::NeverElliptic(_)));
    }

    #[test]
    fn empty_scaling_request_gives_empty_curve() {
        let domain = hemisphere();
        let out = scaling_curve(&domain, &MatrixGallery::identity(), &[], 32, 20).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn pairings_match_dense_quadratic_forms() {
        let domain = hemisphere();
        let op = ConeOperator::new(&domain, 1.0, 2.0, &MatrixGallery::identity(), 24, 20).unwrap();
        let u = DiscreteField::from_fn(op.n_s(), op.n_theta(), |j, i| {
            ((j as f64 + 1.0) * 0.1).sin() * ((i as f64 + 2.0) * 0.2).cos()
        });
        // Energy of u against itself must be nonnegative and agree with the
        // strong-form application paired through the mass.
        let e = op.energy_pairing(&u, &u);
        assert!(e > 0.0);
        let lu = op.apply(&u, &ConeBoundary::zero(op.n_theta())).unwrap();
        let via_apply = op.mass_pairing(&u, &lu);
        assert_abs_diff_eq!(e, via_apply, epsilon = 1e-10 * e.abs());
    }
}
