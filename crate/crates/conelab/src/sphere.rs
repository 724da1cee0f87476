//! Axisymmetric spherical domains and cone sections.
//!
//! A domain `Omega` on the unit sphere `S^{N-1}` is described by the polar
//! angle `theta` measured from the north pole: a cap `{theta < theta1}`, a
//! band `{theta0 < theta < theta1}`, or the full sphere.  Only these
//! axisymmetric shapes are supported; the angular eigenproblem then reduces
//! to one dimension.  The cone over `Omega` is
//! `C_Omega = {(r, omega) : r > 0, omega in Omega}` and a cone section
//! restricts the radius to an interval.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::{Error, Result};

/// Angles closer than this to 0 or pi are treated as poles.
///
/// A cap whose boundary angle is pi (or a band pinned at a pole) has a
/// single-point Dirichlet boundary there; a point has zero capacity in
/// dimension >= 2, so the spectral treatment must coincide with the
/// unconstrained pole.  The tolerance makes that decision explicit.
pub const POLE_TOL: f64 = 1e-12;

/// Shape of an axisymmetric spherical domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainKind {
    /// Polar cap `{theta < theta1}`, `0 < theta1 <= pi`.
    Cap { theta1: f64 },
    /// Band `{theta0 < theta < theta1}`, `0 <= theta0 < theta1 <= pi`.
    Band { theta0: f64, theta1: f64 },
    /// The whole sphere (no Dirichlet boundary).
    FullSphere,
}

/// An axisymmetric domain on `S^{N-1}` together with the ambient dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularDomain {
    /// Ambient space dimension `N >= 3`.
    #[serde(rename = "N")]
    pub dimension: usize,
    #[serde(flatten)]
    pub kind: DomainKind,
}

impl AngularDomain {
    /// Polar cap of opening angle `theta1`.
    pub fn cap(dimension: usize, theta1: f64) -> Result<Self> {
        Self::validate_dim(dimension)?;
        if !(theta1 > 0.0 && theta1 <= PI) || !theta1.is_finite() {
            return Err(Error::InvalidDomain(format!(
                "cap angle must lie in (0, pi], got {theta1}"
            )));
        }
        Ok(Self {
            dimension,
            kind: DomainKind::Cap { theta1 },
        })
    }

    /// Band between polar angles `theta0 < theta1`.
    pub fn band(dimension: usize, theta0: f64, theta1: f64) -> Result<Self> {
        Self::validate_dim(dimension)?;
        if !(theta0 >= 0.0 && theta0 < theta1 && theta1 <= PI)
            || !theta0.is_finite()
            || !theta1.is_finite()
        {
            return Err(Error::InvalidDomain(format!(
                "band angles must satisfy 0 <= theta0 < theta1 <= pi, got ({theta0}, {theta1})"
            )));
        }
        Ok(Self {
            dimension,
            kind: DomainKind::Band { theta0, theta1 },
        })
    }

    /// The full sphere `S^{N-1}`.
    pub fn full_sphere(dimension: usize) -> Result<Self> {
        Self::validate_dim(dimension)?;
        Ok(Self {
            dimension,
            kind: DomainKind::FullSphere,
        })
    }

    fn validate_dim(dimension: usize) -> Result<()> {
        if dimension < 3 {
            return Err(Error::InvalidDomain(format!(
                "dimension must be >= 3, got {dimension}"
            )));
        }
        Ok(())
    }

    /// Interval of polar angles covered by the domain (closure).
    pub fn theta_range(&self) -> (f64, f64) {
        match self.kind {
            DomainKind::Cap { theta1 } => (0.0, theta1),
            DomainKind::Band { theta0, theta1 } => (theta0, theta1),
            DomainKind::FullSphere => (0.0, PI),
        }
    }

    /// Angular extent (length of the polar-angle interval).
    pub fn extent(&self) -> f64 {
        let (lo, hi) = self.theta_range();
        hi - lo
    }

    /// Whether the lower end of the angle range is a pole rather than a
    /// Dirichlet boundary.
    pub fn lo_is_pole(&self) -> bool {
        self.theta_range().0 < POLE_TOL
    }

    /// Whether the upper end of the angle range is a pole rather than a
    /// Dirichlet boundary.
    pub fn hi_is_pole(&self) -> bool {
        match self.kind {
            DomainKind::FullSphere => true,
            _ => (PI - self.theta_range().1).abs() < POLE_TOL,
        }
    }

    /// True when the domain has no Dirichlet boundary of positive capacity.
    pub fn boundaryless(&self) -> bool {
        self.lo_is_pole() && self.hi_is_pole()
    }

    /// Open-set membership test for a polar angle.
    ///
    /// Poles interior to the domain are contained; Dirichlet boundary
    /// angles are not.
    pub fn contains(&self, theta: f64) -> bool {
        if !(0.0..=PI).contains(&theta) {
            return false;
        }
        match self.kind {
            DomainKind::Cap { theta1 } => theta < theta1 || (self.hi_is_pole() && theta <= PI),
            DomainKind::Band { theta0, theta1 } => {
                let lo_ok = theta > theta0 || (self.lo_is_pole() && theta >= 0.0);
                let hi_ok = theta < theta1 || (self.hi_is_pole() && theta <= PI);
                lo_ok && hi_ok
            }
            DomainKind::FullSphere => true,
        }
    }

    /// Strictly compactly contained domain of the same kind, with the
    /// angular extent reduced by `margin` at every Dirichlet boundary.
    ///
    /// Poles are not boundaries and are never moved; the full sphere is
    /// returned unchanged.
    pub fn shrink(&self, margin: f64) -> Result<Self> {
        if !(margin >= 0.0) || !margin.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "shrink margin must be nonnegative, got {margin}"
            )));
        }
        match self.kind {
            DomainKind::FullSphere => Ok(*self),
            DomainKind::Cap { theta1 } => {
                if self.hi_is_pole() {
                    // Single-point boundary; shrinking still produces a cap
                    // strictly inside the closure.
                    if theta1 - margin <= 0.0 {
                        return Err(Error::EmptyShrink(format!(
                            "margin {margin} swallows cap of angle {theta1}"
                        )));
                    }
                    return Self::cap(self.dimension, theta1 - margin);
                }
                if theta1 - margin <= 0.0 {
                    return Err(Error::EmptyShrink(format!(
                        "margin {margin} swallows cap of angle {theta1}"
                    )));
                }
                Self::cap(self.dimension, theta1 - margin)
            }
            DomainKind::Band { theta0, theta1 } => {
                let lo = if self.lo_is_pole() { theta0 } else { theta0 + margin };
                let hi = if self.hi_is_pole() { theta1 } else { theta1 - margin };
                if lo >= hi {
                    return Err(Error::EmptyShrink(format!(
                        "margin {margin} swallows band ({theta0}, {theta1})"
                    )));
                }
                Self::band(self.dimension, lo, hi)
            }
        }
    }

    /// Default compactly contained subdomain: shrink by `fraction` of the
    /// angular extent at every Dirichlet boundary.
    ///
    /// The full sphere has no boundary to shrink from; there the canonical
    /// choice is the cap leaving a `fraction * pi` collar at the south pole.
    pub fn shrink_by_fraction(&self, fraction: f64) -> Result<Self> {
        if !(0.0..0.5).contains(&fraction) {
            return Err(Error::InvalidParameter(format!(
                "shrink fraction must lie in [0, 0.5), got {fraction}"
            )));
        }
        match self.kind {
            DomainKind::FullSphere => Self::cap(self.dimension, (1.0 - fraction) * PI),
            _ => self.shrink(fraction * self.extent()),
        }
    }

    /// Default inner subdomain used by certificates (25% margin).
    pub fn default_inner(&self) -> Result<Self> {
        self.shrink_by_fraction(0.25)
    }

    /// Short label used in reports.
    pub fn label(&self) -> String {
        match self.kind {
            DomainKind::Cap { theta1 } => format!("cap(theta1={theta1:.6})"),
            DomainKind::Band { theta0, theta1 } => {
                format!("band(theta0={theta0:.6}, theta1={theta1:.6})")
            }
            DomainKind::FullSphere => "full_sphere".to_string(),
        }
    }
}

/// Radial section of the cone over a domain: `{(r, omega) : rho < r < R}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeSection {
    pub domain: AngularDomain,
    /// Inner radius `rho > 0`.
    pub r_inner: f64,
    /// Outer radius; `f64::INFINITY` denotes the unbounded cone `C^rho`.
    pub r_outer: f64,
}

impl ConeSection {
    pub fn new(domain: AngularDomain, r_inner: f64, r_outer: f64) -> Result<Self> {
        if !(r_inner > 0.0) || !r_inner.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "inner radius must be positive and finite, got {r_inner}"
            )));
        }
        if !(r_outer > r_inner) {
            return Err(Error::InvalidParameter(format!(
                "outer radius must exceed inner radius, got ({r_inner}, {r_outer})"
            )));
        }
        Ok(Self {
            domain,
            r_inner,
            r_outer,
        })
    }
}

/// Surface area of the unit sphere `S^{m}` in `R^{m+1}`.
///
/// Used as the orbit-measure factor turning the 1-D weighted integral
/// `int f sin^{N-2}(theta) dtheta` into the surface integral over the
/// axisymmetric domain, so that eigenfunction normalizations agree with
/// the `L^2(Omega)` convention.
pub fn sphere_area(m: usize) -> f64 {
    // sigma_m = 2 pi^{(m+1)/2} / Gamma((m+1)/2), via the recurrence
    // sigma_m = 2 pi sigma_{m-2} / (m - 1) with sigma_0 = 2, sigma_1 = 2 pi.
    match m {
        0 => 2.0,
        1 => 2.0 * PI,
        _ => 2.0 * PI * sphere_area(m - 2) / (m as f64 - 1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cap_shrink_reduces_angle() {
        let cap = AngularDomain::cap(3, PI / 2.0).unwrap();
        let inner = cap.shrink(0.1).unwrap();
        match inner.kind {
            DomainKind::Cap { theta1 } => assert!((theta1 - (PI / 2.0 - 0.1)).abs() < 1e-15),
            _ => panic!("kind changed"),
        }
    }

    #[test]
    fn band_shrink_moves_both_edges() {
        let band = AngularDomain::band(4, 0.3, 1.2).unwrap();
        let inner = band.shrink(0.2).unwrap();
        match inner.kind {
            DomainKind::Band { theta0, theta1 } => {
                assert!((theta0 - 0.5).abs() < 1e-15);
                assert!((theta1 - 1.0).abs() < 1e-15);
            }
            _ => panic!("kind changed"),
        }
    }

    #[test]
    fn oversized_margin_is_rejected() {
        let cap = AngularDomain::cap(3, 0.4).unwrap();
        assert!(matches!(cap.shrink(0.4), Err(Error::EmptyShrink(_))));
        let band = AngularDomain::band(3, 0.4, 0.8).unwrap();
        assert!(matches!(band.shrink(0.2), Err(Error::EmptyShrink(_))));
    }

    #[test]
    fn full_sphere_shrinks_to_itself() {
        let full = AngularDomain::full_sphere(5).unwrap();
        assert_eq!(full.shrink(0.3).unwrap(), full);
    }

    #[test]
    fn contains_uses_open_sets() {
        let cap = AngularDomain::cap(3, PI / 2.0).unwrap();
        assert!(cap.contains(0.0)); // pole is interior
        assert!(cap.contains(1.0));
        assert!(!cap.contains(PI / 2.0)); // Dirichlet boundary excluded
        assert!(!cap.contains(2.0));
        let band = AngularDomain::band(3, 0.5, 1.0).unwrap();
        assert!(!band.contains(0.5));
        assert!(band.contains(0.75));
    }

    #[test]
    fn near_pi_cap_counts_as_boundaryless() {
        let cap = AngularDomain::cap(3, PI).unwrap();
        assert!(cap.hi_is_pole());
        assert!(cap.boundaryless());
        assert!(cap.contains(PI));
    }

    #[test]
    fn full_sphere_default_inner_is_large_cap() {
        let full = AngularDomain::full_sphere(3).unwrap();
        let inner = full.default_inner().unwrap();
        match inner.kind {
            DomainKind::Cap { theta1 } => assert!((theta1 - 0.75 * PI).abs() < 1e-14),
            _ => panic!("expected cap"),
        }
    }

    #[test]
    fn dimension_below_three_is_rejected() {
        assert!(AngularDomain::cap(2, 1.0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let cap = AngularDomain::cap(3, 1.0).unwrap();
        let text = serde_json::to_string(&cap).unwrap();
        assert!(text.contains("\"kind\":\"cap\""));
        assert!(text.contains("\"N\":3"));
        let back: AngularDomain = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cap);
    }

    #[test]
    fn sphere_areas_match_closed_forms() {
        assert!((sphere_area(1) - 2.0 * PI).abs() < 1e-15);
        assert!((sphere_area(2) - 4.0 * PI).abs() < 1e-14);
        assert!((sphere_area(3) - 2.0 * PI * PI).abs() < 1e-14);
    }
}
