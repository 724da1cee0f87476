//! Characteristic exponents and the critical exponent.
//!
//! A positive harmonic function on the cone over `Omega` that separates as
//! `r^alpha phi(omega)` forces `alpha` to solve
//! `alpha (alpha + N - 2) = lambda`, with `lambda` an angular eigenvalue.
//! The two roots `alpha_minus <= alpha_plus` are real exactly when
//! `lambda > -(N-2)^2/4` (the spectral floor).  The decay rate of the
//! minimal positive harmonic function is `alpha_minus`, and the critical
//! exponent for `-Delta u = u^p` on the cone is `p* = 1 - 2/alpha_minus`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Roots of `alpha (alpha + N - 2) = lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicRoots {
    pub lambda: f64,
    #[serde(rename = "N")]
    pub dimension: usize,
    pub alpha_minus: f64,
    pub alpha_plus: f64,
}

/// Critical-exponent summary for one angular eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentReport {
    pub lambda1: f64,
    #[serde(rename = "N")]
    pub dimension: usize,
    pub alpha_minus: f64,
    pub alpha_plus: f64,
    pub p_star: f64,
}

/// Spectral floor `-(N-2)^2/4` below which the roots turn complex.
pub fn spectral_floor(dimension: usize) -> f64 {
    let s = (dimension as f64 - 2.0) / 2.0;
    -s * s
}

/// Solve `alpha (alpha + N - 2) = lambda` for real `alpha`.
///
/// The larger-magnitude root `alpha_minus = -s - sqrt(s^2 + lambda)` with
/// `s = (N-2)/2` is computed directly; the other root follows from the
/// cancellation-free form `alpha_plus = lambda / (s + sqrt(s^2 + lambda))`,
/// so both roots satisfy Vieta's identities to machine precision.
pub fn characteristic_roots(lambda: f64, dimension: usize) -> Result<CharacteristicRoots> {
    if dimension < 3 {
        return Err(Error::InvalidParameter(format!(
            "dimension must be >= 3, got {dimension}"
        )));
    }
    if !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "eigenvalue must be finite, got {lambda}"
        )));
    }
    let s = (dimension as f64 - 2.0) / 2.0;
    let disc = s * s + lambda;
    if disc <= 0.0 {
        return Err(Error::SpectralFloor(format!(
            "lambda = {lambda} is at or below the floor {}",
            spectral_floor(dimension)
        )));
    }
    let sq = disc.sqrt();
    let alpha_minus = -s - sq;
    let alpha_plus = lambda / (s + sq);
    Ok(CharacteristicRoots {
        lambda,
        dimension,
        alpha_minus,
        alpha_plus,
    })
}

/// Critical exponent `p* = 1 - 2/alpha_minus` for the principal eigenvalue.
pub fn critical_exponent(roots: &CharacteristicRoots) -> ExponentReport {
    ExponentReport {
        lambda1: roots.lambda,
        dimension: roots.dimension,
        alpha_minus: roots.alpha_minus,
        alpha_plus: roots.alpha_plus,
        p_star: 1.0 - 2.0 / roots.alpha_minus,
    }
}

/// Scaling exponent `beta = 2/(1-p)` of a supersolution candidate
/// `c r^beta phi(omega)`; it is the unique exponent with
/// `beta * p = beta - 2`, so the two sides of `-L u >= u^p` carry the same
/// power of `r`.
pub fn scaling_beta(p: f64) -> Result<f64> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "exponent p must exceed 1, got {p}"
        )));
    }
    Ok(2.0 / (1.0 - p))
}

/// Gap `g = lambda1 - beta (beta + N - 2)` of the supersolution bracket.
///
/// Positive exactly when `p` is supercritical for `lambda1`.
pub fn supersolution_gap(p: f64, lambda1: f64, dimension: usize) -> Result<f64> {
    let beta = scaling_beta(p)?;
    let n = dimension as f64;
    Ok(lambda1 - beta * (beta + n - 2.0))
}

/// Largest amplitude `c` for which `c r^beta phi1` is a supersolution,
/// given the supremum of the angular factor `phi1`.
///
/// Requires the gap to be positive, i.e. `p > p*`; at or below the
/// critical exponent no amplitude works and the call fails.
pub fn supersolution_amplitude(
    p: f64,
    lambda1: f64,
    dimension: usize,
    phi1_sup: f64,
) -> Result<f64> {
    if !(phi1_sup > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "phi1_sup must be positive, got {phi1_sup}"
        )));
    }
    let g = supersolution_gap(p, lambda1, dimension)?;
    if g <= 0.0 {
        return Err(Error::Subcritical(format!(
            "gap {g} <= 0: p = {p} is at or below the critical exponent"
        )));
    }
    Ok(g.powf(1.0 / (p - 1.0)) / phi1_sup)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hemisphere_roots_are_exact() {
        let roots = characteristic_roots(2.0, 3).unwrap();
        assert_eq!(roots.alpha_minus, -2.0);
        assert_eq!(roots.alpha_plus, 1.0);
        let report = critical_exponent(&roots);
        assert_eq!(report.p_star, 2.0);
    }

    #[test]
    fn zero_eigenvalue_gives_serrin_exponent() {
        // lambda = 0 on the full sphere: alpha_minus = 2 - N and
        // p* = N/(N-2), exactly representable for N = 3, 4.
        let roots = characteristic_roots(0.0, 3).unwrap();
        assert_eq!(roots.alpha_minus, -1.0);
        assert_eq!(roots.alpha_plus, 0.0);
        assert_eq!(critical_exponent(&roots).p_star, 3.0);
        let roots4 = characteristic_roots(0.0, 4).unwrap();
        assert_eq!(roots4.alpha_minus, -2.0);
        assert_eq!(critical_exponent(&roots4).p_star, 2.0);
    }

    #[test]
    fn vieta_identities_hold() {
        for &(lam, n) in &[(2.0, 3), (12.0, 3), (0.37, 5), (-0.2, 4), (41.0, 7)] {
            let r = characteristic_roots(lam, n).unwrap();
            let nm2 = n as f64 - 2.0;
            assert!((r.alpha_minus + r.alpha_plus + nm2).abs() <= 1e-12);
            assert!((r.alpha_minus * r.alpha_plus + lam).abs() <= 1e-12 * (1.0 + lam.abs()));
            for a in [r.alpha_minus, r.alpha_plus] {
                assert!((a * (a + nm2) - lam).abs() <= 1e-12 * (1.0 + lam.abs()));
            }
        }
    }

    #[test]
    fn floor_is_enforced() {
        assert!(matches!(
            characteristic_roots(-0.25, 3),
            Err(Error::SpectralFloor(_))
        ));
        assert!(characteristic_roots(-0.25 + 1e-9, 3).is_ok());
    }

    #[test]
    fn hemisphere_amplitude_is_sqrt_two() {
        // N = 3, lambda1 = 2, p = 3: beta = -1, gap = 2, c_max = sqrt(2).
        let c = supersolution_amplitude(3.0, 2.0, 3, 1.0).unwrap();
        assert!((c - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn amplitude_exists_above_serrin_exponent() {
        // lambda1 = 0: any p > N/(N-2) leaves a positive gap.
        let c = supersolution_amplitude(3.5, 0.0, 3, 1.0).unwrap();
        assert!(c > 0.0);
    }

    #[test]
    fn critical_and_subcritical_p_are_rejected() {
        assert!(matches!(
            supersolution_amplitude(2.0, 2.0, 3, 1.0),
            Err(Error::Subcritical(_))
        ));
        assert!(matches!(
            supersolution_amplitude(1.5, 2.0, 3, 1.0),
            Err(Error::Subcritical(_))
        ));
    }

    #[test]
    fn beta_satisfies_homogeneity_identity() {
        for p in [1.1, 1.7, 2.0, 2.5, 3.0, 7.3] {
            let beta = scaling_beta(p).unwrap();
            assert!((beta * p - (beta - 2.0)).abs() < 1e-12);
        }
    }
}
