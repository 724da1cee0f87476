//! Certificates for existence and nonexistence of positive supersolutions.
//!
//! The superlinear problem `-div(a grad u) = u^p` on an exterior cone has
//! positive supersolutions exactly when `p` exceeds the critical exponent
//! of the pair (matrix field, angular domain).  Each side of the dichotomy
//! gets a checkable certificate here:
//!
//! * strong certificates evaluate the separable candidate
//!   `u = c r^beta phi_1` pointwise, where `beta = 2/(1-p)` is forced by
//!   scaling and `phi_1` is the sup-normalized principal angular
//!   eigenfunction;
//! * weak certificates test a discrete field against random nonnegative
//!   bump test functions through the assembled bilinear form;
//! * nonexistence certificates combine a power lower bound with the decay
//!   of annular principal eigenvalues until the comparison
//!   `mu(R) > Lambda_1` closes the argument at some dyadic radius;
//! * the critical exponent itself is excluded by perturbing the angular
//!   operator with a small indicator potential and rerunning the
//!   nonexistence argument with the improved decay exponent.

use crate::angular::{assemble, refined_lambda1, AngularPotential};
use crate::cone::{annular_eigenvalue, ConeOperator, DiscreteField, MatrixGallery};
use crate::exponents::{characteristic_roots, scaling_beta, spectral_floor};
use crate::quad::adaptive;
use crate::sphere::AngularDomain;
use crate::{Error, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Outcome of a pointwise supersolution check for `u = c r^beta phi_1`.
#[derive(Debug, Clone, Serialize)]
pub struct SupersolutionCertificate {
    /// Angular domain.
    pub domain: AngularDomain,
    /// Matrix field description.
    pub matrix: String,
    /// Nonlinearity exponent.
    pub p: f64,
    /// Candidate amplitude.
    pub c: f64,
    /// Radial exponent forced by scaling.
    pub beta: f64,
    /// Discrete principal angular eigenvalue.
    pub lambda1: f64,
    /// Infimum of the effective radial coefficient over large radii.
    pub coefficient_floor: f64,
    /// Linear gap `coefficient_floor - beta (beta + N - 2)`.
    pub gap: f64,
    /// Largest amplitude the gap supports, when positive.
    pub c_max: Option<f64>,
    /// Worst value of the pointwise bracket over the angular mesh.
    pub margin: f64,
    /// Whether the certificate holds.
    pub verdict: String,
}

impl SupersolutionCertificate {
    /// Whether the certificate holds.
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

/// Check `u = c r^beta phi_1` as a supersolution by evaluating the bracket
/// `c (d - beta(beta+N-2)) - c^p phi_1^{p-1}` at every angular node, with
/// the effective coefficient `d` replaced by its infimum over large radii.
///
/// For the identity matrix `d` is the principal angular eigenvalue itself;
/// for radial-angular fields it is the scaled coefficient law.  The
/// certificate passes when the worst bracket stays above `-1e-12` times the
/// natural scale of the two competing terms.
pub fn verify_supersolution_strong(
    domain: &AngularDomain,
    matrix: &MatrixGallery,
    p: f64,
    c: f64,
    n_theta: usize,
) -> Result<SupersolutionCertificate> {
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "superlinear check needs p > 1, got {p}"
        )));
    }
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "amplitude must be positive, got {c}"
        )));
    }
    let op = assemble(domain, n_theta, &AngularPotential::Zero)?;
    let (lambda1, phi1) = op.principal_eigenpair();
    let sup = phi1.iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
    let phi_hat: Vec<f64> = phi1.iter().map(|&v| v / sup).collect();
    let d_floor = match matrix {
        MatrixGallery::Identity => lambda1,
        MatrixGallery::RadialAngular {
            coefficient,
            lambda_ref,
        } => {
            let (g_lo, _) = coefficient.ellipticity_window(1.0)?;
            g_lo / lambda_ref * lambda1
        }
    };
    let beta = scaling_beta(p)?;
    let n = domain.dimension as f64;
    let q = beta * (beta + n - 2.0);
    let gap = d_floor - q;
    let c_pow = c.powf(p);
    let mut margin = f64::INFINITY;
    for &phi in &phi_hat {
        let bracket = c * gap - c_pow * phi.max(0.0).powf(p - 1.0);
        margin = margin.min(bracket);
    }
    let scale = (c * gap.abs()).max(c_pow).max(1e-30);
    let verdict = if margin >= -1e-12 * scale { "pass" } else { "fail" };
    let c_max = if gap > 0.0 {
        Some(gap.powf(1.0 / (p - 1.0)))
    } else {
        None
    };
    Ok(SupersolutionCertificate {
        domain: *domain,
        matrix: matrix.tag(),
        p,
        c,
        beta,
        lambda1,
        coefficient_floor: d_floor,
        gap,
        c_max,
        margin,
        verdict: verdict.into(),
    })
}

/// Outcome of testing a discrete field against random bump test functions.
#[derive(Debug, Clone, Serialize)]
pub struct WeakFormCertificate {
    /// Nonlinearity exponent.
    pub p: f64,
    /// Number of random test functions tried.
    pub trials: usize,
    /// Whether the pass is vacuous because no trials ran.
    pub vacuous: bool,
    /// Worst margin `phi^T A u - phi^T M u^p` over the trials.
    pub worst_margin: f64,
    /// The worst margin normalized by the size of the competing terms.
    pub worst_normalized: f64,
    /// Whether every trial stayed above the roundoff slack.
    pub verdict: String,
}

impl WeakFormCertificate {
    /// Whether the certificate holds.
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

fn random_bump(len: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut out = vec![0.0; len];
    if len < 5 {
        if len > 2 {
            out[len / 2] = 1.0;
        }
        return out;
    }
    let center = rng.gen_range(2..len - 2);
    let w_max = center.min(len - 1 - center) - 1;
    let width = rng.gen_range(1..=w_max.max(1));
    for (j, o) in out.iter_mut().enumerate() {
        let d = (j as f64 - center as f64).abs() / width as f64;
        if d < 1.0 {
            *o = (std::f64::consts::FRAC_PI_2 * d).cos().powi(2);
        }
    }
    out
}

/// Test the weak supersolution inequality for a nonnegative discrete field
/// against `trials` random tensor-product bump test functions.
///
/// Each test function vanishes near the section boundary, so the pairing
/// `phi^T A u` equals the Dirichlet-form integral regardless of the cap
/// data behind `u`.  The margin `phi^T A u - phi^T M u^p` must stay above
/// `-1e-10` times the size of the competing terms.  Zero trials pass
/// vacuously and are flagged as such.
pub fn verify_supersolution_weak(
    op: &ConeOperator,
    u: &DiscreteField,
    p: f64,
    trials: usize,
    seed: u64,
) -> Result<WeakFormCertificate> {
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "superlinear check needs p > 1, got {p}"
        )));
    }
    if u.n_s != op.n_s() || u.n_theta != op.n_theta() {
        return Err(Error::InvalidParameter(format!(
            "field shape {}x{} does not match the {}x{} grid",
            u.n_s,
            u.n_theta,
            op.n_s(),
            op.n_theta()
        )));
    }
    if u.values.iter().any(|&v| !v.is_finite() || v < 0.0) {
        return Err(Error::NonpositiveField(
            "weak supersolution check needs a nonnegative field".into(),
        ));
    }
    let u_pow = u.map(|v| v.powf(p));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::INFINITY;
    let mut worst_normalized = f64::INFINITY;
    let mut all_pass = true;
    for _ in 0..trials {
        let b_s = random_bump(op.n_s(), &mut rng);
        let b_t = random_bump(op.n_theta(), &mut rng);
        let phi = DiscreteField::from_fn(op.n_s(), op.n_theta(), |j, i| b_s[j] * b_t[i]);
        let energy = op.energy_pairing(&phi, u);
        let mass = op.mass_pairing(&phi, &u_pow);
        let margin = energy - mass;
        let scale = energy.abs() + mass.abs();
        let normalized = if scale > 0.0 { margin / scale } else { 0.0 };
        if margin < worst {
            worst = margin;
        }
        if normalized < worst_normalized {
            worst_normalized = normalized;
        }
        if normalized < -1e-10 {
            all_pass = false;
        }
    }
    let vacuous = trials == 0;
    if vacuous {
        worst = 0.0;
        worst_normalized = 0.0;
    }
    Ok(WeakFormCertificate {
        p,
        trials,
        vacuous,
        worst_margin: worst,
        worst_normalized,
        verdict: if all_pass { "pass".into() } else { "fail".into() },
    })
}

/// Transform a supersolution for exponent `p0` into one for exponent `p`
/// via the power map `v = alpha^{1/(1-p)} u^{1/alpha}` with
/// `alpha = (p - 1)/(p0 - 1)`.
///
/// At `p = p0` the map is the identity.  The field must be nonnegative.
pub fn power_lift(u: &DiscreteField, p0: f64, p: f64) -> Result<DiscreteField> {
    if !(p0.is_finite() && p0 > 1.0 && p.is_finite() && p > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "power lift needs exponents above one, got p0 = {p0}, p = {p}"
        )));
    }
    if u.values.iter().any(|&v| !v.is_finite() || v < 0.0) {
        return Err(Error::NonpositiveField(
            "power lift needs a nonnegative field".into(),
        ));
    }
    let alpha = (p - 1.0) / (p0 - 1.0);
    if alpha == 1.0 {
        return Ok(u.clone());
    }
    let amplitude = alpha.powf(1.0 / (1.0 - p));
    Ok(u.map(|v| amplitude * v.powf(1.0 / alpha)))
}

/// Certificate that no positive supersolution admits a given power lower
/// bound, obtained at a concrete dyadic radius.
#[derive(Debug, Clone, Serialize)]
pub struct NonexistenceCertificate {
    /// Angular domain of the cone.
    pub domain: AngularDomain,
    /// Shrunken subdomain carrying the comparison.
    pub domain_prime: AngularDomain,
    /// Matrix field description.
    pub matrix: String,
    /// Nonlinearity exponent.
    pub p: f64,
    /// Assumed decay exponent of the lower bound `v >= c r^alpha`.
    pub alpha: f64,
    /// Assumed constant of the lower bound.
    pub c: f64,
    /// Dyadic radius at which the comparison closes.
    pub r_star: f64,
    /// Dyadic doublings taken to reach it.
    pub doublings: usize,
    /// Potential mass `c^{p-1} (2 r_star)^{alpha (p-1)}`.
    pub mu: f64,
    /// Principal eigenvalue of the annulus at `r_star`.
    pub lambda_annulus: f64,
    /// Always "pass": failures surface as errors.
    pub verdict: String,
}

/// Close the nonexistence argument for exponent `p` given the lower bound
/// `v >= c r^alpha` on the shrunken cone.
///
/// The comparison succeeds at radius `R` once
/// `mu(R) = c^{p-1} (2R)^{alpha(p-1)}` exceeds the principal Dirichlet
/// eigenvalue of the annular section `R < r < 2R` over the shrunken
/// domain, since the eigenvalue scales like `R^{-2}` while `mu` decays
/// strictly slower when `p < 1 - 2/alpha`.  Radii double from order one up
/// to `2^60`; exhausting the range is an error.
pub fn nonexistence_certificate(
    domain: &AngularDomain,
    matrix: &MatrixGallery,
    p: f64,
    alpha: f64,
    c: f64,
    nodes_per_decade: usize,
    n_theta: usize,
) -> Result<NonexistenceCertificate> {
    if !(alpha.is_finite() && alpha < 0.0) {
        return Err(Error::InvalidParameter(format!(
            "decay exponent must be negative, got {alpha}"
        )));
    }
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "lower-bound constant must be positive, got {c}"
        )));
    }
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "superlinear check needs p > 1, got {p}"
        )));
    }
    let p_ceiling = 1.0 - 2.0 / alpha;
    if p >= p_ceiling {
        return Err(Error::Subcritical(format!(
            "p = {p} is not subcritical relative to alpha = {alpha}: \
             the comparison needs p < 1 - 2/alpha = {p_ceiling}"
        )));
    }
    let domain_prime = domain.shrink_by_fraction(0.25)?;
    let rate = alpha * (p - 1.0);
    let c_pow = c.powf(p - 1.0);
    let mut r_star = if matrix.min_radius() > 0.0 { 2.0 } else { 1.0 };
    for doubling in 0..=60usize {
        let out = annular_eigenvalue(
            &domain_prime,
            matrix,
            r_star,
            2.0,
            nodes_per_decade,
            n_theta,
        )?;
        let mu = c_pow * (2.0 * r_star).powf(rate);
        if mu > out.lambda {
            return Ok(NonexistenceCertificate {
                domain: *domain,
                domain_prime,
                matrix: matrix.tag(),
                p,
                alpha,
                c,
                r_star,
                doublings: doubling,
                mu,
                lambda_annulus: out.lambda,
                verdict: "pass".into(),
            });
        }
        r_star *= 2.0;
    }
    Err(Error::SearchExhausted(format!(
        "no dyadic radius up to 2^60 closed the comparison for p = {p}, alpha = {alpha}, c = {c}"
    )))
}

/// Certificate excluding positive supersolutions at the critical exponent.
#[derive(Debug, Clone, Serialize)]
pub struct CriticalCaseCertificate {
    /// Angular domain of the cone.
    pub domain: AngularDomain,
    /// Discrete principal angular eigenvalue.
    pub lambda1: f64,
    /// Critical exponent of the domain.
    pub p_star: f64,
    /// Indicator-well depth used in the perturbation.
    pub epsilon: f64,
    /// Subdomain carrying the indicator well.
    pub domain_prime: AngularDomain,
    /// Principal eigenvalue of the perturbed angular operator.
    pub lambda1_perturbed: f64,
    /// Decay root of the perturbed eigenvalue.
    pub alpha_perturbed: f64,
    /// Strict-inequality reserve `alpha_perturbed (p_star - 1) + 2`.
    pub gap: f64,
    /// The closing nonexistence comparison.
    pub nonexistence: NonexistenceCertificate,
    /// Always "pass": failures surface as errors.
    pub verdict: String,
}

/// Exclude supersolutions at the critical exponent via an indicator-well
/// perturbation, choosing the well depth automatically.
pub fn critical_case_certificate(
    domain: &AngularDomain,
    n_theta: usize,
    nodes_per_decade: usize,
) -> Result<CriticalCaseCertificate> {
    let estimate = refined_lambda1(domain, &AngularPotential::Zero, n_theta)?;
    let floor = spectral_floor(domain.dimension);
    let epsilon = 0.5f64.min((estimate.lambda - floor) / 2.0);
    critical_case_with_epsilon(domain, epsilon, n_theta, nodes_per_decade)
}

/// Exclude supersolutions at the critical exponent with an explicit well
/// depth.
///
/// The indicator well of depth `epsilon` on the shrunken subdomain lowers
/// the principal angular eigenvalue, which strictly improves the decay
/// root; the improved root makes the critical exponent subcritical for
/// the perturbed comparison, and the dyadic nonexistence argument closes.
/// A vanishing well leaves no reserve and fails with `GapFailure`.
pub fn critical_case_with_epsilon(
    domain: &AngularDomain,
    epsilon: f64,
    n_theta: usize,
    nodes_per_decade: usize,
) -> Result<CriticalCaseCertificate> {
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "well depth must be nonnegative, got {epsilon}"
        )));
    }
    let base = refined_lambda1(domain, &AngularPotential::Zero, n_theta)?;
    let lambda1 = base.lambda;
    let roots = characteristic_roots(lambda1, domain.dimension)?;
    let p_star = crate::exponents::critical_exponent(&roots).p_star;
    let domain_prime = domain.shrink_by_fraction(0.25)?;
    let potential = AngularPotential::Indicator {
        region: domain_prime,
        eps: epsilon,
    };
    let perturbed = refined_lambda1(domain, &potential, n_theta)?;
    let roots_perturbed = characteristic_roots(perturbed.lambda, domain.dimension)?;
    let alpha_perturbed = roots_perturbed.alpha_minus;
    let gap = alpha_perturbed * (p_star - 1.0) + 2.0;
    if gap < 1e-6 {
        return Err(Error::GapFailure(format!(
            "perturbed decay root {alpha_perturbed} leaves no reserve at p* = {p_star}: \
             gap = {gap}"
        )));
    }
    let nonexistence = nonexistence_certificate(
        domain,
        &MatrixGallery::identity(),
        p_star,
        alpha_perturbed,
        1.0,
        nodes_per_decade,
        n_theta,
    )?;
    Ok(CriticalCaseCertificate {
        domain: *domain,
        lambda1,
        p_star,
        epsilon,
        domain_prime,
        lambda1_perturbed: perturbed.lambda,
        alpha_perturbed,
        gap,
        nonexistence,
        verdict: "pass".into(),
    })
}

/// Estimate of the sup norm of the Newtonian potential of the density
/// `epsilon / (|x|^2 log^2(|x| + 2))` truncated to `|x| >= 1`.
#[derive(Debug, Clone, Serialize)]
pub struct PotentialNormReport {
    /// Ambient dimension.
    pub dimension: usize,
    /// Density amplitude.
    pub epsilon: f64,
    /// The radial integral `int_1^inf ds / (s log^2(s+2))`.
    pub integral: f64,
    /// Sup norm of the potential: `epsilon * integral / (N - 2)`.
    pub norm: f64,
    /// Largest amplitude keeping the norm strictly below one.
    pub epsilon_star: f64,
    /// Fraction of the integral beyond radius `1e8`.
    pub tail_beyond_1e8: f64,
}

/// Sup norm of the Newtonian potential of the truncated log-squared
/// density, by exact radial reduction.
///
/// For a radial density `W` supported in `|x| >= 1` the potential is
/// constant inside the unit ball and decreasing outside, so its supremum
/// is `1/(N-2) int_1^inf s W(s) ds`.  The integral is evaluated in
/// `v = log s` up to `v = 46` with the analytic remainder `1/46` of the
/// asymptotic integrand `v^{-2}` added back; the substitution error beyond
/// the cut is of order `e^{-46}`.  The norm is exactly linear in
/// `epsilon`, so `epsilon_star` rescales the amplitude to produce a norm
/// just below one.
pub fn newtonian_sup_norm(dimension: usize, epsilon: f64) -> Result<PotentialNormReport> {
    if dimension < 3 {
        return Err(Error::InvalidParameter(format!(
            "dimension must be >= 3, got {dimension}"
        )));
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "density amplitude must be positive, got {epsilon}"
        )));
    }
    let integrand = |v: f64| {
        let l = (v.exp() + 2.0).ln();
        1.0 / (l * l)
    };
    let cut = 46.0;
    let integral = adaptive(&integrand, 0.0, cut, 1e-13)? + 1.0 / cut;
    let v8 = 1e8f64.ln();
    let tail = adaptive(&integrand, v8, cut, 1e-13)? + 1.0 / cut;
    let n = dimension as f64;
    let norm = epsilon * integral / (n - 2.0);
    let epsilon_star = (epsilon / norm) * (1.0 - 1e-6);
    Ok(PotentialNormReport {
        dimension,
        epsilon,
        integral,
        norm,
        epsilon_star,
        tail_beyond_1e8: tail / integral,
    })
}
