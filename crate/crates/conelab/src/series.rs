//! Minimal positive solutions as spectral series.
//!
//! On the exterior cone `r > 1` the bounded positive solution of the linear
//! problem with angular data `psi` at `r = 1` expands over the angular
//! eigenbasis as
//!
//! ```text
//! v(r, theta) = sum_k psi_k r^{alpha_k} phi_k(theta),
//! ```
//!
//! where `lambda_k` are the angular eigenvalues, `alpha_k` the decaying
//! characteristic roots `-(N-2)/2 - sqrt((N-2)^2/4 + lambda_k)`, and
//! `psi_k` the mass projections of the data.  Truncating at `K` modes keeps
//! the error controlled by `|psi| r^{alpha_{K+1}}`, since later exponents
//! decay strictly faster.
//!
//! The checks in this module are the quantitative heart of the laboratory:
//! energy identities for single modes, vanishing energy cross terms, a
//! certified positive lower bound `v >= c r^{alpha_1}` on interior
//! directions, and the sup-side decay of the leading term.

use crate::angular::{assemble, AngularMesh, AngularPotential, SpectralDecomposition};
use crate::exponents::characteristic_roots;
use crate::sphere::AngularDomain;
use crate::{Error, Result};
use serde::Serialize;
use serde_json::json;

/// Default number of retained modes.
pub const DEFAULT_MODES: usize = 8;

/// Smooth nonnegative angular data compactly supported in the domain.
///
/// The profile ramps from zero with a squared cosine over a margin of 20%
/// of the angular extent on each side with lateral boundary, reaching a
/// plateau of one on the inner 60%.  Sides at a coordinate pole carry no
/// ramp since the domain has no boundary there.
pub fn default_bump(mesh: &AngularMesh) -> Vec<f64> {
    let (lo, hi) = mesh.domain.theta_range();
    let w = 0.2 * (hi - lo);
    mesh.thetas
        .iter()
        .map(|&theta| {
            let mut v = 1.0;
            if mesh.lo_dirichlet() {
                if theta <= lo + w {
                    return 0.0;
                }
                if theta < lo + 2.0 * w {
                    let arg = std::f64::consts::FRAC_PI_2 * (lo + 2.0 * w - theta) / w;
                    v *= arg.cos().powi(2);
                }
            }
            if mesh.hi_dirichlet() {
                if theta >= hi - w {
                    return 0.0;
                }
                if theta > hi - 2.0 * w {
                    let arg = std::f64::consts::FRAC_PI_2 * (theta - (hi - 2.0 * w)) / w;
                    v *= arg.cos().powi(2);
                }
            }
            v
        })
        .collect()
}

/// Truncated spectral series of the minimal positive solution.
#[derive(Debug, Clone)]
pub struct MinimalSeries {
    /// Angular domain of the cone.
    pub domain: AngularDomain,
    /// Projection coefficients of the boundary data, one per retained mode.
    pub coefficients: Vec<f64>,
    /// Decaying characteristic roots, one per retained mode, decreasing.
    pub exponents: Vec<f64>,
    /// Angular eigenvalues of the retained modes, ascending.
    pub lambdas: Vec<f64>,
    /// Exponent of the first discarded mode, controlling the tail.
    pub tail_exponent: f64,
    /// Mass norm of the boundary data.
    pub psi_norm: f64,
    /// Nodal boundary data at `r = 1`.
    pub psi: Vec<f64>,
    basis: SpectralDecomposition,
    potential_is_zero: bool,
}

/// Build the truncated series for boundary data `psi` at `r = 1`.
///
/// `psi` must be nonnegative, not identically zero, and supported away
/// from the lateral boundary; `None` selects [`default_bump`].  `modes + 1`
/// eigenpairs must be resolvable on the mesh, since the first discarded
/// exponent feeds the tail estimate.
pub fn build_series(
    domain: &AngularDomain,
    potential: &AngularPotential,
    psi: Option<&[f64]>,
    modes: usize,
    n_theta: usize,
) -> Result<MinimalSeries> {
    if modes == 0 {
        return Err(Error::InvalidParameter(
            "the series needs at least one mode".into(),
        ));
    }
    let op = assemble(domain, n_theta, potential)?;
    let potential_is_zero = matches!(potential, AngularPotential::Zero);
    let basis = op.eigen_basis(modes + 1)?;
    let psi_vec: Vec<f64> = match psi {
        Some(values) => {
            if values.len() != op.len() {
                return Err(Error::InvalidParameter(format!(
                    "boundary data carries {} values for a mesh with {} nodes",
                    values.len(),
                    op.len()
                )));
            }
            values.to_vec()
        }
        None => default_bump(&op.mesh),
    };
    if psi_vec.iter().any(|&v| !v.is_finite() || v < 0.0) {
        return Err(Error::InvalidParameter(
            "boundary data must be finite and nonnegative".into(),
        ));
    }
    if psi_vec.iter().all(|&v| v == 0.0) {
        return Err(Error::InvalidParameter(
            "boundary data must not vanish identically".into(),
        ));
    }
    let all_coeffs = basis.project(&psi_vec)?;
    if all_coeffs[0] <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "leading projection coefficient must be positive, got {}",
            all_coeffs[0]
        )));
    }
    let n = domain.dimension;
    let mut exponents = Vec::with_capacity(modes);
    for k in 0..modes {
        exponents.push(characteristic_roots(basis.lambdas[k], n)?.alpha_minus);
    }
    let tail_exponent = characteristic_roots(basis.lambdas[modes], n)?.alpha_minus;
    let psi_norm = op.mass_inner(&psi_vec, &psi_vec).sqrt();
    Ok(MinimalSeries {
        domain: *domain,
        coefficients: all_coeffs[..modes].to_vec(),
        exponents,
        lambdas: basis.lambdas[..modes].to_vec(),
        tail_exponent,
        psi_norm,
        psi: psi_vec,
        basis,
        potential_is_zero,
    })
}

/// Energy and decay diagnostics of a lower-bound scan.
#[derive(Debug, Clone, Serialize)]
pub struct LowerBoundReport {
    /// Certified constant: infimum of `v r^{-alpha_1}` over the scan.
    pub c: f64,
    /// Relative drift of the per-decade constant over the last decade.
    pub drift: f64,
    /// Ratio of the tail estimate to the leading term at the inner radius.
    pub tail_ratio: f64,
    /// Per-decade infima of `v r^{-alpha_1}`.
    pub per_decade: Vec<f64>,
}

/// Sup-side comparison of the series against its leading power.
#[derive(Debug, Clone, Serialize)]
pub struct TailBoundReport {
    /// `sup_theta v(rho, theta) * rho^{-alpha_1}`.
    pub c_at_rho: f64,
    /// The same constant one decade out.
    pub c_at_10rho: f64,
    /// Relative difference between the two.
    pub drift: f64,
}

impl MinimalSeries {
    /// Number of retained modes.
    pub fn modes(&self) -> usize {
        self.coefficients.len()
    }

    /// The angular mesh carrying the eigenbasis.
    pub fn mesh(&self) -> &AngularMesh {
        &self.basis.op.mesh
    }

    /// Interpolated value of retained eigenfunction `k` at angle `theta`,
    /// extended by zero at lateral boundaries.
    fn phi_at(&self, k: usize, theta: f64) -> f64 {
        let mesh = self.mesh();
        let phi = &self.basis.phis[k];
        let thetas = &mesh.thetas;
        let nodes = thetas.len();
        if theta <= thetas[0] {
            if mesh.lo_dirichlet() {
                let (lo, _) = mesh.domain.theta_range();
                let w = ((theta - lo) / mesh.h).clamp(0.0, 1.0);
                return w * phi[0];
            }
            return phi[0];
        }
        if theta >= thetas[nodes - 1] {
            if mesh.hi_dirichlet() {
                let (_, hi) = mesh.domain.theta_range();
                let w = ((hi - theta) / mesh.h).clamp(0.0, 1.0);
                return w * phi[nodes - 1];
            }
            return phi[nodes - 1];
        }
        let j = ((theta - thetas[0]) / mesh.h).floor() as usize;
        let j = j.min(nodes - 2);
        let w = ((theta - thetas[j]) / mesh.h).clamp(0.0, 1.0);
        phi[j] * (1.0 - w) + phi[j + 1] * w
    }

    /// Evaluate the truncated series at radius `r >= 1` and angle `theta`.
    ///
    /// Angles on the closed lateral boundary give zero; angles outside the
    /// closure are rejected.
    pub fn evaluate(&self, r: f64, theta: f64) -> Result<f64> {
        if !(r.is_finite() && r >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "the series lives on the exterior cone r >= 1, got r = {r}"
            )));
        }
        let (lo, hi) = self.domain.theta_range();
        if !(theta >= lo - 1e-12 && theta <= hi + 1e-12) {
            return Err(Error::InvalidParameter(format!(
                "angle {theta} lies outside the closed angular domain [{lo}, {hi}]"
            )));
        }
        let t = r.ln();
        let mut v = 0.0;
        for k in 0..self.modes() {
            v += self.coefficients[k] * (self.exponents[k] * t).exp() * self.phi_at(k, theta);
        }
        Ok(v)
    }

    /// Nodal values of the series at radius `r`.
    pub fn evaluate_profile(&self, r: f64) -> Result<Vec<f64>> {
        if !(r.is_finite() && r >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "the series lives on the exterior cone r >= 1, got r = {r}"
            )));
        }
        let t = r.ln();
        let nodes = self.mesh().len();
        let mut out = vec![0.0; nodes];
        for k in 0..self.modes() {
            let factor = self.coefficients[k] * (self.exponents[k] * t).exp();
            for (o, &p) in out.iter_mut().zip(self.basis.phis[k].iter()) {
                *o += factor * p;
            }
        }
        Ok(out)
    }

    /// Exterior Dirichlet energy of retained mode `k` together with its
    /// closed-form reference `|alpha_k|`.
    ///
    /// The energy of `r^{alpha} phi(theta)` over the exterior cone is
    /// `(alpha^2 + E(phi)) / (2 - N - 2 alpha)` for mass-normalized `phi`;
    /// with zero potential `E(phi) = lambda` and the quotient collapses to
    /// `|alpha|`.
    pub fn gradient_norm_check(&self, k: usize) -> Result<(f64, f64)> {
        if k >= self.modes() {
            return Err(Error::KTooLarge(format!(
                "mode {k} requested from a series with {} modes",
                self.modes()
            )));
        }
        let alpha = self.exponents[k];
        let n = self.domain.dimension as f64;
        let energy = self.basis.op.stiffness_energy(&self.basis.phis[k]);
        let denom = 2.0 - n - 2.0 * alpha;
        Ok(((alpha * alpha + energy) / denom, alpha.abs()))
    }

    /// Exterior energy pairing of two distinct retained modes, which
    /// vanishes in exact arithmetic.
    pub fn cross_gradient(&self, k: usize, l: usize) -> Result<f64> {
        if k >= self.modes() || l >= self.modes() {
            return Err(Error::KTooLarge(format!(
                "modes ({k}, {l}) requested from a series with {} modes",
                self.modes()
            )));
        }
        if k == l {
            return Err(Error::InvalidParameter(
                "cross term needs two distinct modes".into(),
            ));
        }
        let (ak, al) = (self.exponents[k], self.exponents[l]);
        let n = self.domain.dimension as f64;
        let op = &self.basis.op;
        let (phik, phil) = (&self.basis.phis[k], &self.basis.phis[l]);
        let mass = op.mass_inner(phik, phil);
        let (stiff_diag, stiff_off) = op.stiffness_parts();
        let mut stiff = 0.0;
        for i in 0..phik.len() {
            stiff += stiff_diag[i] * phik[i] * phil[i];
            if i + 1 < phik.len() {
                stiff += stiff_off[i] * (phik[i] * phil[i + 1] + phik[i + 1] * phil[i]);
            }
        }
        let denom = 2.0 - n - ak - al;
        Ok((ak * al * mass + stiff) / denom)
    }

    /// Scan `v r^{-alpha_1}` over four decades starting at `rho` on the
    /// directions of `domain_prime`, certifying a positive lower constant.
    pub fn lower_bound_check(
        &self,
        rho: f64,
        domain_prime: &AngularDomain,
    ) -> Result<LowerBoundReport> {
        if !(rho.is_finite() && rho >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "lower-bound scan must start at rho >= 1, got {rho}"
            )));
        }
        let mesh = self.mesh();
        let inside: Vec<usize> = (0..mesh.len())
            .filter(|&i| domain_prime.contains(mesh.thetas[i]))
            .collect();
        if inside.is_empty() {
            return Err(Error::MeshTooCoarse(
                "no angular nodes fall inside the measured subdomain".into(),
            ));
        }
        let alpha1 = self.exponents[0];
        let decades = 4;
        let samples_per_decade = 64;
        let mut per_decade = Vec::with_capacity(decades);
        let mut c = f64::INFINITY;
        for d in 0..decades {
            let mut local = f64::INFINITY;
            for s in 0..samples_per_decade {
                let t = rho.ln()
                    + std::f64::consts::LN_10
                        * (d as f64 + s as f64 / samples_per_decade as f64);
                let profile = self.evaluate_profile(t.exp())?;
                let scale = (-alpha1 * t).exp();
                for &i in &inside {
                    local = local.min(profile[i] * scale);
                }
            }
            per_decade.push(local);
            c = c.min(local);
        }
        if !(c > 0.0) {
            return Err(Error::DegenerateData(format!(
                "series is not positive on the scanned region, infimum {c}"
            )));
        }
        let last = per_decade[decades - 1];
        let prev = per_decade[decades - 2];
        let drift = (last / prev - 1.0).abs();
        let tail_ratio = (self.psi_norm / self.coefficients[0])
            * ((self.tail_exponent - alpha1) * rho.ln()).exp();
        Ok(LowerBoundReport {
            c,
            drift,
            tail_ratio,
            per_decade,
        })
    }

    /// Compare the sup-side constant `sup_theta v * r^{-alpha_1}` at `rho`
    /// and `10 rho`; agreement pins the leading-order decay rate.
    pub fn tail_bound_check(&self, rho: f64) -> Result<TailBoundReport> {
        if !(rho.is_finite() && rho >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "tail scan must start at rho >= 1, got {rho}"
            )));
        }
        let alpha1 = self.exponents[0];
        let sup_scaled = |r: f64| -> Result<f64> {
            let profile = self.evaluate_profile(r)?;
            let scale = (-alpha1 * r.ln()).exp();
            Ok(profile.iter().fold(0.0_f64, |m, &v| m.max(v)) * scale)
        };
        let c_at_rho = sup_scaled(rho)?;
        let c_at_10rho = sup_scaled(10.0 * rho)?;
        if !(c_at_rho > 0.0) {
            return Err(Error::DegenerateData(format!(
                "series supremum at rho = {rho} is not positive"
            )));
        }
        Ok(TailBoundReport {
            c_at_rho,
            c_at_10rho,
            drift: (c_at_10rho / c_at_rho - 1.0).abs(),
        })
    }

    /// For zero potential: check the fundamental-decay comparison, namely
    /// `alpha_1 <= 2 - N` and that `sup_theta v * r^{N-2}` is nonincreasing
    /// in radius from 10 outward.
    pub fn fundamental_upper_check(&self) -> Result<bool> {
        if !self.potential_is_zero {
            return Err(Error::InvalidParameter(
                "fundamental-decay comparison is defined for zero potential only".into(),
            ));
        }
        let n = self.domain.dimension as f64;
        let alpha1 = self.exponents[0];
        if alpha1 > 2.0 - n + 1e-12 {
            return Ok(false);
        }
        let mut prev = f64::INFINITY;
        for step in 0..=40 {
            let t = 10f64.ln() + step as f64 * (3.0 * std::f64::consts::LN_10 / 40.0);
            let profile = self.evaluate_profile(t.exp())?;
            let scaled = profile.iter().fold(0.0_f64, |m, &v| m.max(v)) * ((n - 2.0) * t).exp();
            if scaled > prev * (1.0 + 1e-9) {
                return Ok(false);
            }
            prev = scaled;
        }
        Ok(true)
    }

    /// Serializable summary of the series.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema": 1,
            "domain": self.domain,
            "potential": self.basis.op.potential_tag(),
            "modes": self.modes(),
            "angular_nodes": self.mesh().len(),
            "coefficients": self.coefficients,
            "exponents": self.exponents,
            "lambdas": self.lambdas,
            "tail_exponent": self.tail_exponent,
            "psi_norm": self.psi_norm,
        })
    }
}
