//! The minimal-solution series: gradient identities, orthogonality, decay
//! bounds, and stability of the certified lower-bound constant.

mod common;

use conelab::angular::AngularPotential;
use conelab::series::{build_series, DEFAULT_MODES};
use conelab::sphere::AngularDomain;

fn hemisphere() -> AngularDomain {
    AngularDomain::cap(3, std::f64::consts::FRAC_PI_2).unwrap()
}

#[test]
fn mode_energies_match_their_closed_forms() {
    let series = build_series(&hemisphere(), &AngularPotential::Zero, None, DEFAULT_MODES, 1200)
        .unwrap();
    for k in 0..5 {
        let (measured, expected) = series.gradient_norm_check(k).unwrap();
        assert!(
            (measured - expected).abs() <= 5e-3 * expected,
            "mode {k}: energy {measured} vs closed form {expected}"
        );
    }
}

#[test]
fn retained_modes_are_energy_orthogonal() {
    let series =
        build_series(&hemisphere(), &AngularPotential::Zero, None, DEFAULT_MODES, 800).unwrap();
    for k in 0..4 {
        for l in k + 1..5 {
            let cross = series.cross_gradient(k, l).unwrap();
            assert!(cross.abs() < 1e-8, "modes {k},{l}: cross energy {cross}");
        }
    }
}

#[test]
fn lower_bound_constant_stabilizes_over_the_scan() {
    let domain = hemisphere();
    let inner = domain.default_inner().unwrap();
    let series = build_series(&domain, &AngularPotential::Zero, None, DEFAULT_MODES, 800).unwrap();
    let report = series.lower_bound_check(1e4, &inner).unwrap();
    assert!(report.c > 0.0, "certified constant must be positive");
    assert!(
        report.drift < 0.01,
        "per-decade constant drifts by {} over the last decade",
        report.drift
    );
    assert!(report.per_decade.iter().all(|&v| v > 0.0));
}

#[test]
fn series_decays_no_slower_than_the_fundamental_solution() {
    let series = build_series(&hemisphere(), &AngularPotential::Zero, None, DEFAULT_MODES, 600)
        .unwrap();
    assert!(series.fundamental_upper_check().unwrap());
    let tail = series.tail_bound_check(100.0).unwrap();
    assert!(
        tail.drift < 0.01,
        "leading-power constant moved by {} between rho and 10 rho",
        tail.drift
    );
}

#[test]
fn off_axis_cap_series_behaves_like_the_hemisphere_one() {
    let domain = AngularDomain::cap(3, 120f64.to_radians()).unwrap();
    let series = build_series(&domain, &AngularPotential::Zero, None, 6, 800).unwrap();
    for k in 0..3 {
        let (measured, expected) = series.gradient_norm_check(k).unwrap();
        assert!(
            (measured - expected).abs() <= 1e-2 * expected,
            "mode {k}: energy {measured} vs closed form {expected}"
        );
    }
    let inner = domain.default_inner().unwrap();
    let report = series.lower_bound_check(1e3, &inner).unwrap();
    assert!(report.c > 0.0 && report.drift < 0.02);
}

#[test]
fn profile_evaluation_is_positive_inside_and_decaying() {
    let domain = hemisphere();
    let series = build_series(&domain, &AngularPotential::Zero, None, DEFAULT_MODES, 400).unwrap();
    let near = series.evaluate(2.0, 0.5).unwrap();
    let far = series.evaluate(200.0, 0.5).unwrap();
    assert!(near > 0.0 && far > 0.0);
    assert!(far < near, "series must decay along the ray: {near} -> {far}");
    let profile = series.evaluate_profile(5.0).unwrap();
    assert_eq!(profile.len(), series.mesh().len());
}

#[test]
fn series_requires_enough_angular_resolution() {
    assert!(build_series(&hemisphere(), &AngularPotential::Zero, None, 40, 100).is_err());
    assert!(build_series(&hemisphere(), &AngularPotential::Zero, None, 0, 400).is_err());
}
