//! Radial profiles for separable solutions on cone-like domains.
//!
//! A separable solution `u = R(r) phi(omega)` of the linear problem turns
//! the radial factor into `R'' + (N-1)/r R' - d(r)/r^2 R = 0`, or in the
//! logarithmic variable `t = log r`
//!
//! ```text
//! d^2R/dt^2 + (N-2) dR/dt - d(e^t) R = 0.
//! ```
//!
//! The coefficient gallery collects the `d(r)` laws whose decaying
//! solutions have closed forms: a constant law (pure power), a
//! log-corrected law (power over logarithm), and an oscillating law whose
//! local exponent sweeps an interval.  Tabulated coefficients cover
//! everything else.
//!
//! Everything is stored logarithmically: profiles carry `log r` and
//! `log |R|`, because interesting scans cover ranges (a full phase of the
//! oscillating law needs `log log r` to advance by `2 pi`) on which both
//! the radius and the profile value overflow the floating-point range.
//!
//! Decaying solutions are recessive: integrating them outward is unstable
//! because any rounding error excites the growing branch, which takes over
//! at rate `exp(gap * span)`.  The decaying branch is therefore produced by
//! integrating *inward* from beyond the requested interval in Riccati form,
//! where the decaying direction is the attractor; the padding makes the
//! startup error decay like `exp(-gap * pad)` before the interval of
//! interest is reached.

use crate::exponents::characteristic_roots;
use crate::rk;
use crate::{Error, Result};
use std::f64::consts::LN_10;

/// Default relative tolerance for profile integration.
const PROFILE_RTOL: f64 = 1e-11;

/// Radial coefficient laws `d(r)` for the logarithmic radial equation.
#[derive(Debug, Clone, PartialEq)]
pub enum RadialCoefficient {
    /// `d = alpha (alpha + N - 2)`; the decaying solution is `r^alpha`.
    Constant { dimension: usize, alpha: f64 },
    /// Constant law plus the correction making `r^alpha / log r` an exact
    /// solution; defined for `r > 1`.
    LogCorrected { dimension: usize, alpha: f64 },
    /// Law whose decaying solution is `r^{gamma + delta sin(k log log r)}`,
    /// with instantaneous exponent sweeping
    /// `gamma +- delta sqrt(1 + k^2)`; defined for `r > 1`.
    Oscillating {
        dimension: usize,
        gamma: f64,
        delta: f64,
        k: f64,
    },
    /// Piecewise-linear interpolation of `(log r, d)` samples, extended by
    /// its end values outside the sampled range.
    Tabulated {
        dimension: usize,
        log_radii: Vec<f64>,
        values: Vec<f64>,
    },
}

impl RadialCoefficient {
    /// Constant law with decay exponent `alpha`.
    pub fn constant(dimension: usize, alpha: f64) -> Result<Self> {
        check_dimension(dimension)?;
        check_finite("alpha", alpha)?;
        Ok(RadialCoefficient::Constant { dimension, alpha })
    }

    /// Log-corrected law with decay exponent `alpha`.
    pub fn log_corrected(dimension: usize, alpha: f64) -> Result<Self> {
        check_dimension(dimension)?;
        check_finite("alpha", alpha)?;
        Ok(RadialCoefficient::LogCorrected { dimension, alpha })
    }

    /// Oscillating law with mean exponent `gamma`, amplitude `delta`, and
    /// phase speed `k`.
    ///
    /// The full swing of the instantaneous logarithmic derivative is
    /// `gamma + delta * sqrt(1 + k^2)`, and this must stay strictly below
    /// `2 - N` so that every local exponent belongs to a decaying branch.
    pub fn oscillating(dimension: usize, gamma: f64, delta: f64, k: f64) -> Result<Self> {
        check_dimension(dimension)?;
        check_finite("gamma", gamma)?;
        check_finite("delta", delta)?;
        check_finite("k", k)?;
        if delta < 0.0 || k <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "oscillating law needs delta >= 0 and k > 0, got delta={delta}, k={k}"
            )));
        }
        let swing = gamma + delta * (1.0 + k * k).sqrt();
        let ceiling = 2.0 - dimension as f64;
        if swing >= ceiling - 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "oscillating law must keep gamma + delta*sqrt(1+k^2) = {swing} \
                 below 2 - N = {ceiling}"
            )));
        }
        Ok(RadialCoefficient::Oscillating {
            dimension,
            gamma,
            delta,
            k,
        })
    }

    /// Tabulated law through `(r, d)` samples with increasing radii.
    pub fn tabulated(dimension: usize, radii: &[f64], values: &[f64]) -> Result<Self> {
        check_dimension(dimension)?;
        if radii.len() != values.len() || radii.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "tabulated law needs at least two matching samples, got {} radii and {} values",
                radii.len(),
                values.len()
            )));
        }
        if radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            return Err(Error::InvalidParameter(
                "tabulated radii must be finite and positive".into(),
            ));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "tabulated radii must be strictly increasing".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "tabulated values must be finite".into(),
            ));
        }
        Ok(RadialCoefficient::Tabulated {
            dimension,
            log_radii: radii.iter().map(|r| r.ln()).collect(),
            values: values.to_vec(),
        })
    }

    /// Ambient dimension `N`.
    pub fn dimension(&self) -> usize {
        match self {
            RadialCoefficient::Constant { dimension, .. }
            | RadialCoefficient::LogCorrected { dimension, .. }
            | RadialCoefficient::Oscillating { dimension, .. }
            | RadialCoefficient::Tabulated { dimension, .. } => *dimension,
        }
    }

    /// Smallest radius at which the law is defined.
    pub fn min_radius(&self) -> f64 {
        match self {
            RadialCoefficient::Constant { .. } | RadialCoefficient::Tabulated { .. } => 0.0,
            RadialCoefficient::LogCorrected { .. } | RadialCoefficient::Oscillating { .. } => {
                1.0 + 1e-6
            }
        }
    }

    /// Evaluate `d(r)`.
    pub fn d(&self, r: f64) -> f64 {
        self.d_log(r.ln())
    }

    /// Evaluate the law at `t = log r` without forming `r`, which keeps
    /// huge radii (beyond the floating-point range) usable.
    pub fn d_log(&self, t: f64) -> f64 {
        match self {
            RadialCoefficient::Constant { dimension, alpha } => {
                alpha * (alpha + *dimension as f64 - 2.0)
            }
            RadialCoefficient::LogCorrected { dimension, alpha } => {
                let n = *dimension as f64;
                alpha * (alpha + n - 2.0) + (2.0 - n - 2.0 * alpha) / t + 2.0 / (t * t)
            }
            RadialCoefficient::Oscillating {
                dimension,
                gamma,
                delta,
                k,
            } => {
                let n = *dimension as f64;
                let phase = k * t.ln();
                let a = gamma + delta * (phase.sin() + k * phase.cos());
                let da = k * delta / t * (phase.cos() - k * phase.sin());
                a * (a + n - 2.0) + da
            }
            RadialCoefficient::Tabulated {
                log_radii, values, ..
            } => {
                if t <= log_radii[0] {
                    return values[0];
                }
                if t >= *log_radii.last().unwrap() {
                    return *values.last().unwrap();
                }
                let j = log_radii.partition_point(|&s| s <= t) - 1;
                let w = (t - log_radii[j]) / (log_radii[j + 1] - log_radii[j]);
                values[j] * (1.0 - w) + values[j + 1] * w
            }
        }
    }

    /// Logarithm of the exact decaying solution where one exists.
    pub fn closed_form_log(&self, t: f64) -> Option<f64> {
        match self {
            RadialCoefficient::Constant { alpha, .. } => Some(alpha * t),
            RadialCoefficient::LogCorrected { alpha, .. } => Some(alpha * t - t.ln()),
            RadialCoefficient::Oscillating {
                gamma, delta, k, ..
            } => Some((gamma + delta * (k * t.ln()).sin()) * t),
            RadialCoefficient::Tabulated { .. } => None,
        }
    }

    /// Exact decaying solution where one exists.
    pub fn closed_form(&self, r: f64) -> Option<f64> {
        self.closed_form_log(r.ln()).map(f64::exp)
    }

    /// Exact logarithmic derivative of the closed form at `t = log r`.
    pub fn closed_form_exponent_log(&self, t: f64) -> Option<f64> {
        match self {
            RadialCoefficient::Constant { alpha, .. } => Some(*alpha),
            RadialCoefficient::LogCorrected { alpha, .. } => Some(alpha - 1.0 / t),
            RadialCoefficient::Oscillating {
                gamma, delta, k, ..
            } => {
                let phase = k * t.ln();
                Some(gamma + delta * (phase.sin() + k * phase.cos()))
            }
            RadialCoefficient::Tabulated { .. } => None,
        }
    }

    /// Exact logarithmic derivative of the closed form where one exists.
    pub fn closed_form_exponent(&self, r: f64) -> Option<f64> {
        self.closed_form_exponent_log(r.ln())
    }

    /// Short description used in report artifacts.
    pub fn tag(&self) -> String {
        match self {
            RadialCoefficient::Constant { dimension, alpha } => {
                format!("constant(N={dimension}, alpha={alpha})")
            }
            RadialCoefficient::LogCorrected { dimension, alpha } => {
                format!("log_corrected(N={dimension}, alpha={alpha})")
            }
            RadialCoefficient::Oscillating {
                dimension,
                gamma,
                delta,
                k,
            } => format!("oscillating(N={dimension}, gamma={gamma}, delta={delta}, k={k})"),
            RadialCoefficient::Tabulated {
                dimension, values, ..
            } => {
                format!("tabulated(N={dimension}, samples={})", values.len())
            }
        }
    }

    /// Range of `d(r)` over `[r_min, infinity)`, by dense scan plus the
    /// asymptotic envelope.
    ///
    /// Errors with `NeverElliptic` when the lower end is not strictly
    /// positive, since the coefficient then cannot scale the angular part
    /// of a uniformly elliptic matrix field.
    pub fn ellipticity_window(&self, r_min: f64) -> Result<(f64, f64)> {
        let r_lo = r_min.max(self.min_radius().max(1e-12) * 1.5);
        let t_lo = r_lo.ln();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut take = |v: f64| {
            lo = lo.min(v);
            hi = hi.max(v);
        };
        // Dense scan in log r over many decades.
        let samples = 40_000;
        let t_hi = t_lo + 60.0;
        for i in 0..=samples {
            let t = t_lo + (t_hi - t_lo) * i as f64 / samples as f64;
            take(self.d_log(t));
        }
        match self {
            RadialCoefficient::Constant { .. } | RadialCoefficient::Tabulated { .. } => {}
            RadialCoefficient::LogCorrected { dimension, alpha } => {
                take(alpha * (alpha + *dimension as f64 - 2.0));
            }
            RadialCoefficient::Oscillating {
                dimension,
                gamma,
                delta,
                k,
            } => {
                // Asymptotically d -> A (A + N - 2) with A sweeping the
                // interval gamma +- delta sqrt(1 + k^2); the extremes of the
                // quadratic over that interval bound the envelope.
                let n = *dimension as f64;
                let swing = delta * (1.0 + k * k).sqrt();
                let (a_lo, a_hi) = (gamma - swing, gamma + swing);
                let q = |a: f64| a * (a + n - 2.0);
                take(q(a_lo));
                take(q(a_hi));
                let vertex = (2.0 - n) / 2.0;
                if a_lo < vertex && vertex < a_hi {
                    take(q(vertex));
                }
                // The phase advances like k log log r, so a full period of
                // the pre-asymptotic behaviour needs a scan in log log r too.
                let v_lo = t_lo.ln().max(-3.0);
                let v_hi = v_lo + (4.0 * std::f64::consts::PI / k).max(8.0);
                for i in 0..=samples {
                    let v = v_lo + (v_hi - v_lo) * i as f64 / samples as f64;
                    take(self.d_log(v.exp()));
                }
            }
        }
        if lo <= 0.0 {
            return Err(Error::NeverElliptic(format!(
                "coefficient {} reaches {lo} on [{r_lo}, infinity)",
                self.tag()
            )));
        }
        Ok((lo, hi))
    }
}

fn check_dimension(dimension: usize) -> Result<()> {
    if dimension < 3 {
        return Err(Error::InvalidParameter(format!(
            "dimension must be >= 3, got {dimension}"
        )));
    }
    Ok(())
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "{name} must be finite, got {v}"
        )));
    }
    Ok(())
}

/// A radial profile sampled on a grid uniform in `t = log r`.
///
/// Values are stored as `log |R|` plus a sign so that profiles remain
/// representable over ranges where `R` itself leaves the floating-point
/// range; [`RadialProfile::value`] reconstitutes plain values on demand.
#[derive(Debug, Clone)]
pub struct RadialProfile {
    /// Logarithms of the sample radii, uniformly spaced and increasing.
    pub log_radii: Vec<f64>,
    /// Logarithms of `|R|`; `-inf` marks an exact zero.
    pub log_values: Vec<f64>,
    /// Signs of `R` (`1`, `-1`, or `0`).
    pub signs: Vec<i8>,
    /// Logarithmic derivatives `r R'(r) / R(r)`, the local exponents.
    pub local_exponents: Vec<f64>,
    /// Coefficient description.
    pub coefficient: String,
}

impl RadialProfile {
    /// Number of samples.
    pub fn len(&self) -> usize {
        self.log_radii.len()
    }

    /// Whether the profile holds no samples.
    pub fn is_empty(&self) -> bool {
        self.log_radii.is_empty()
    }

    /// Radius of sample `i`; overflows to infinity past the float range.
    pub fn radius(&self, i: usize) -> f64 {
        self.log_radii[i].exp()
    }

    /// Value of sample `i`; may over- or underflow for extreme profiles.
    pub fn value(&self, i: usize) -> f64 {
        f64::from(self.signs[i]) * self.log_values[i].exp()
    }

    /// All sample radii.
    pub fn radii(&self) -> Vec<f64> {
        self.log_radii.iter().map(|t| t.exp()).collect()
    }

    /// All sample values.
    pub fn values(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.value(i)).collect()
    }

    /// Local exponent at radius `r` by linear interpolation in `log r`.
    pub fn local_exponent_at(&self, r: f64) -> Result<f64> {
        let (j, w) = self.bracket(r.ln())?;
        Ok(self.local_exponents[j] * (1.0 - w) + self.local_exponents[j + 1] * w)
    }

    /// Profile value at radius `r`, interpolated linearly in `log r` on
    /// `log |R|` when the bracketing samples share a sign.
    pub fn value_at(&self, r: f64) -> Result<f64> {
        let (j, w) = self.bracket(r.ln())?;
        let (sa, sb) = (self.signs[j], self.signs[j + 1]);
        if sa == sb && sa != 0 {
            let l = self.log_values[j] * (1.0 - w) + self.log_values[j + 1] * w;
            Ok(f64::from(sa) * l.exp())
        } else {
            Ok(self.value(j) * (1.0 - w) + self.value(j + 1) * w)
        }
    }

    fn bracket(&self, t: f64) -> Result<(usize, f64)> {
        let t0 = self.log_radii[0];
        let t1 = *self.log_radii.last().unwrap();
        if !(t >= t0 && t <= t1) {
            return Err(Error::InvalidParameter(format!(
                "log-radius {t} outside profile range [{t0}, {t1}]"
            )));
        }
        let dt = (t1 - t0) / (self.len() - 1) as f64;
        let mut j = ((t - t0) / dt).floor() as usize;
        if j >= self.len() - 1 {
            j = self.len() - 2;
        }
        let w = ((t - (t0 + j as f64 * dt)) / dt).clamp(0.0, 1.0);
        Ok((j, w))
    }
}

/// Initial data for outward integration at the inner radius.
#[derive(Debug, Clone, Copy)]
pub struct ProfileInit {
    /// Value `R(r0)`.
    pub value: f64,
    /// Logarithmic-scale derivative `dR/dt` at `t = log r0`.
    pub slope: f64,
}

fn log_grid(t0: f64, t1: f64, points_per_decade: usize) -> Result<Vec<f64>> {
    if !(t0.is_finite() && t1.is_finite() && t1 > t0) {
        return Err(Error::InvalidParameter(format!(
            "log-radial range must be finite and increasing, got [{t0}, {t1}]"
        )));
    }
    if points_per_decade == 0 {
        return Err(Error::InvalidParameter(
            "points_per_decade must be positive".into(),
        ));
    }
    let decades = (t1 - t0) / LN_10;
    let segments = (decades * points_per_decade as f64).ceil().max(1.0) as usize;
    let dt = (t1 - t0) / segments as f64;
    Ok((0..=segments)
        .map(|j| if j == segments { t1 } else { t0 + j as f64 * dt })
        .collect())
}

fn check_range(coeff: &RadialCoefficient, t0: f64) -> Result<()> {
    let min_t = if coeff.min_radius() > 0.0 {
        coeff.min_radius().ln()
    } else {
        f64::NEG_INFINITY
    };
    if t0 < min_t {
        return Err(Error::InvalidParameter(format!(
            "coefficient {} is only defined for r >= {}, got log r = {t0}",
            coeff.tag(),
            coeff.min_radius()
        )));
    }
    Ok(())
}

/// Integrate the radial equation outward from `r0` with given initial data.
///
/// When the initial direction aligns with the decaying characteristic root
/// at `r0`, outward integration cannot hold the recessive branch and the
/// profile is produced by the inward sweep of [`decaying_profile`] instead,
/// rescaled to match the initial value.
pub fn integrate_radial(
    coeff: &RadialCoefficient,
    r0: f64,
    r1: f64,
    init: ProfileInit,
    points_per_decade: usize,
) -> Result<RadialProfile> {
    if !(r0 > 0.0 && r1 > r0) {
        return Err(Error::InvalidParameter(format!(
            "radial range must satisfy 0 < r0 < r1, got [{r0}, {r1}]"
        )));
    }
    let (t0, t1) = (r0.ln(), r1.ln());
    check_range(coeff, t0)?;
    if !(init.value.is_finite() && init.slope.is_finite())
        || (init.value == 0.0 && init.slope == 0.0)
    {
        return Err(Error::InvalidParameter(format!(
            "initial data must be finite and not both zero, got value={}, slope={}",
            init.value, init.slope
        )));
    }
    let n = coeff.dimension() as f64;
    if init.value > 0.0 {
        let roots = characteristic_roots(coeff.d_log(t0), coeff.dimension())?;
        let gap = roots.alpha_plus - roots.alpha_minus;
        let m0 = init.slope / init.value;
        if (m0 - roots.alpha_minus).abs() <= 0.05 * gap {
            let mut profile = decaying_profile_log(coeff, t0, t1, points_per_decade)?;
            let shift = init.value.ln();
            for v in &mut profile.log_values {
                *v += shift;
            }
            return Ok(profile);
        }
    }
    let ts = log_grid(t0, t1, points_per_decade)?;
    let mut f = |t: f64, y: &[f64; 2]| [y[1], coeff.d_log(t) * y[0] - (n - 2.0) * y[1]];
    let mut state = [init.value, init.slope];
    let mut log_scale = 0.0_f64;
    let mut log_values = Vec::with_capacity(ts.len());
    let mut signs = Vec::with_capacity(ts.len());
    let mut exponents = Vec::with_capacity(ts.len());
    let mut record = |state: [f64; 2], log_scale: f64| {
        log_values.push(state[0].abs().ln() + log_scale);
        signs.push(if state[0] > 0.0 {
            1
        } else if state[0] < 0.0 {
            -1
        } else {
            0
        });
        exponents.push(if state[0] != 0.0 {
            state[1] / state[0]
        } else {
            f64::INFINITY
        });
    };
    record(state, log_scale);
    for pair in ts.windows(2) {
        let atol = 1e-14 * state[0].abs().max(state[1].abs());
        state = rk::integrate_to(&mut f, pair[0], state, pair[1], PROFILE_RTOL, atol)?;
        let mag = state[0].abs().max(state[1].abs());
        if mag > 1e100 || (mag > 0.0 && mag < 1e-100) {
            state[0] /= mag;
            state[1] /= mag;
            log_scale += mag.ln();
        }
        record(state, log_scale);
    }
    Ok(RadialProfile {
        log_radii: ts,
        log_values,
        signs,
        local_exponents: exponents,
        coefficient: coeff.tag(),
    })
}

/// The decaying solution on `[r0, r1]`, normalized to `R(r0) = 1`.
///
/// See [`decaying_profile_log`] for the mechanism; this wrapper takes plain
/// radii.
pub fn decaying_profile(
    coeff: &RadialCoefficient,
    r0: f64,
    r1: f64,
    points_per_decade: usize,
) -> Result<RadialProfile> {
    if !(r0 > 0.0 && r1 > r0) {
        return Err(Error::InvalidParameter(format!(
            "radial range must satisfy 0 < r0 < r1, got [{r0}, {r1}]"
        )));
    }
    decaying_profile_log(coeff, r0.ln(), r1.ln(), points_per_decade)
}

/// The decaying solution on `log r` in `[t0, t1]`, normalized so the first
/// sample has value one.
///
/// Integration runs inward from beyond `t1` in Riccati form (logarithmic
/// derivative and log-amplitude), where the decaying branch attracts; the
/// inward padding is sized so the startup error decays below the
/// integration tolerance before reaching `t1`.
pub fn decaying_profile_log(
    coeff: &RadialCoefficient,
    t0: f64,
    t1: f64,
    points_per_decade: usize,
) -> Result<RadialProfile> {
    check_range(coeff, t0)?;
    let ts = log_grid(t0, t1, points_per_decade)?;
    let n = coeff.dimension() as f64;
    let roots_end = characteristic_roots(coeff.d_log(t1), coeff.dimension())?;
    let gap = roots_end.alpha_plus - roots_end.alpha_minus;
    let pad = (30.0 / gap).clamp(3.0, 60.0);
    let t_start = t1 + pad;
    let mut f = |t: f64, y: &[f64; 2]| {
        let m = y[0];
        [coeff.d_log(t) - (n - 2.0) * m - m * m, m]
    };
    let start_roots = characteristic_roots(coeff.d_log(t_start), coeff.dimension())?;
    let mut state = [start_roots.alpha_minus, 0.0];
    let mut t = t_start;
    let mut ms = vec![0.0; ts.len()];
    let mut ells = vec![0.0; ts.len()];
    for j in (0..ts.len()).rev() {
        state = rk::integrate_to(&mut f, t, state, ts[j], PROFILE_RTOL, 1e-14)?;
        t = ts[j];
        ms[j] = state[0];
        ells[j] = state[1];
    }
    let base = ells[0];
    for l in &mut ells {
        *l -= base;
    }
    let signs = vec![1; ts.len()];
    Ok(RadialProfile {
        log_radii: ts,
        log_values: ells,
        signs,
        local_exponents: ms,
        coefficient: coeff.tag(),
    })
}

/// Maximum normalized residual of the closed-form solution under high-order
/// finite differences on a log-uniform grid.
///
/// The residual at a node is `|R'' + (N-2) R' - d R|` (derivatives in
/// `t = log r`, approximated by fourth-order central stencils) divided by
/// `max(|d|, 1) |R|`.  Coefficients without a closed form are rejected.
pub fn closed_form_residual(
    coeff: &RadialCoefficient,
    r0: f64,
    r1: f64,
    points_per_decade: usize,
) -> Result<f64> {
    if !(r0 > 0.0 && r1 > r0) {
        return Err(Error::InvalidParameter(format!(
            "radial range must satisfy 0 < r0 < r1, got [{r0}, {r1}]"
        )));
    }
    let (t0, t1) = (r0.ln(), r1.ln());
    check_range(coeff, t0)?;
    if coeff.closed_form_log(t0).is_none() {
        return Err(Error::InvalidParameter(format!(
            "coefficient {} has no closed-form solution",
            coeff.tag()
        )));
    }
    let ts = log_grid(t0, t1, points_per_decade)?;
    if ts.len() < 5 {
        return Err(Error::InvalidParameter(
            "residual check needs at least five grid points".into(),
        ));
    }
    let h = ts[1] - ts[0];
    let n = coeff.dimension() as f64;
    // Work on values normalized per window to dodge overflow: the residual
    // is scaled by |R| at the center node, so any common factor cancels.
    let logs: Vec<f64> = ts
        .iter()
        .map(|&t| coeff.closed_form_log(t).unwrap())
        .collect();
    let mut worst = 0.0_f64;
    for i in 2..ts.len() - 2 {
        let d = coeff.d_log(ts[i]);
        let w: Vec<f64> = (i - 2..=i + 2).map(|j| (logs[j] - logs[i]).exp()).collect();
        let second = (-w[0] + 16.0 * w[1] - 30.0 * w[2] + 16.0 * w[3] - w[4]) / (12.0 * h * h);
        let first = (w[0] - 8.0 * w[1] + 8.0 * w[3] - w[4]) / (12.0 * h);
        let residual = second + (n - 2.0) * first - d * w[2];
        let scale = d.abs().max(1.0);
        worst = worst.max(residual.abs() / scale);
    }
    Ok(worst)
}
