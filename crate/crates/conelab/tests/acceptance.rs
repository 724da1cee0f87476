//! Acceptance gate: thirteen end-to-end criteria, each pinned to an explicit
//! tolerance.  Every test prints a single summary line on success; a failed
//! assertion is the corresponding failure line.

mod common;

use conelab::angular::{refined_lambda1, AngularPotential};
use conelab::certify::{
    critical_case_certificate, newtonian_sup_norm, nonexistence_certificate, power_lift,
    verify_supersolution_strong, verify_supersolution_weak,
};
use conelab::cone::{harnack_exponent, scaling_curve, ConeOperator, DiscreteField, MatrixGallery};
use conelab::exponents::{characteristic_roots, critical_exponent, scaling_beta};
use conelab::radial::{
    closed_form_residual, decaying_profile, decaying_profile_log, RadialCoefficient,
};
use conelab::report::{render, RunConfig};
use conelab::series::{build_series, DEFAULT_MODES};
use conelab::solver::exhaustion_solve;
use conelab::sphere::AngularDomain;
use std::time::Instant;

fn hemisphere() -> AngularDomain {
    AngularDomain::cap(3, std::f64::consts::FRAC_PI_2).unwrap()
}

fn hemisphere_lambda(nodes: usize) -> f64 {
    refined_lambda1(&hemisphere(), &AngularPotential::Zero, nodes)
        .unwrap()
        .lambda
}

#[test]
fn criterion_01_angular_eigenvalues_converge_fast() {
    let clock = Instant::now();
    let hemi = hemisphere_lambda(2000);
    let hemi_time = clock.elapsed();
    assert!(
        (hemi - 2.0).abs() < 1e-4,
        "criterion 01: FAIL, hemisphere lambda1 = {hemi}"
    );
    assert!(hemi_time.as_secs_f64() < 1.0, "criterion 01: FAIL, {hemi_time:?}");
    let clock = Instant::now();
    let full = refined_lambda1(
        &AngularDomain::full_sphere(3).unwrap(),
        &AngularPotential::Zero,
        2000,
    )
    .unwrap()
    .lambda;
    let full_time = clock.elapsed();
    assert!(full.abs() < 1e-6, "criterion 01: FAIL, full sphere lambda1 = {full}");
    assert!(full_time.as_secs_f64() < 1.0, "criterion 01: FAIL, {full_time:?}");
    println!(
        "criterion 01 (eigenvalues): PASS, hemisphere {hemi:.12} in {hemi_time:?}, \
         full sphere {full:.3e} in {full_time:?}"
    );
}

#[test]
fn criterion_02_critical_exponents_of_model_domains() {
    let full = critical_exponent(&characteristic_roots(0.0, 3).unwrap());
    assert_eq!(full.p_star, 3.0, "criterion 02: FAIL, flat-space exponent");
    let hemi = critical_exponent(&characteristic_roots(hemisphere_lambda(800), 3).unwrap());
    assert!(
        (hemi.p_star - 2.0).abs() < 1e-4,
        "criterion 02: FAIL, hemisphere p* = {}",
        hemi.p_star
    );
    println!(
        "criterion 02 (model exponents): PASS, full sphere p* = {} exactly, hemisphere p* = {:.10}",
        full.p_star, hemi.p_star
    );
}

#[test]
fn criterion_03_exponent_is_monotone_in_the_opening() {
    let mut rows = Vec::new();
    for deg in (30..=180).step_by(10) {
        let domain = AngularDomain::cap(3, (deg as f64).to_radians()).unwrap();
        let lambda = refined_lambda1(&domain, &AngularPotential::Zero, 400).unwrap().lambda;
        let p_star = critical_exponent(&characteristic_roots(lambda, 3).unwrap()).p_star;
        rows.push((deg, lambda, p_star));
    }
    for pair in rows.windows(2) {
        let (deg_a, lambda_a, p_a) = pair[0];
        let (deg_b, lambda_b, p_b) = pair[1];
        assert!(
            p_b >= p_a,
            "criterion 03: FAIL, p* drops from {p_a} ({deg_a} deg) to {p_b} ({deg_b} deg)"
        );
        if lambda_b < lambda_a {
            assert!(
                p_b > p_a,
                "criterion 03: FAIL, lambda fell {lambda_a} -> {lambda_b} without raising p*"
            );
        }
    }
    println!(
        "criterion 03 (monotone sweep): PASS, p* climbs {:.6} -> {:.6} over 30..180 deg",
        rows.first().unwrap().2,
        rows.last().unwrap().2
    );
}

#[test]
fn criterion_04_radial_gallery_recovers_prescribed_decay() {
    let clock = Instant::now();
    let constant = RadialCoefficient::constant(3, -3.0).unwrap();
    let profile = decaying_profile(&constant, 10.0, 1e4, 200).unwrap();
    let mut worst = 0f64;
    for i in 0..profile.len() {
        let slope = profile.local_exponent_at(profile.radius(i)).unwrap();
        worst = worst.max((slope + 3.0).abs());
    }
    assert!(worst < 1e-3, "criterion 04: FAIL, constant-law exponent off by {worst}");

    let log_law = RadialCoefficient::log_corrected(3, -3.0).unwrap();
    let residual = closed_form_residual(&log_law, 10.0, 1e4, 200).unwrap();
    assert!(residual <= 1e-6, "criterion 04: FAIL, log-law residual {residual}");

    let (gamma, delta, k) = (-3.0, 0.2, 1.0);
    let osc = RadialCoefficient::oscillating(3, gamma, delta, k).unwrap();
    let sweep = decaying_profile_log(&osc, 2.2, 1300.0, 4).unwrap();
    let spread = delta * (1.0 + k * k).sqrt();
    let lo = sweep.local_exponents.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = sweep.local_exponents.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    assert!(
        (lo - (gamma - spread)).abs() < 1e-2 && (hi - (gamma + spread)).abs() < 1e-2,
        "criterion 04: FAIL, oscillating envelope [{lo}, {hi}]"
    );
    let elapsed = clock.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "criterion 04: FAIL, {elapsed:?}");
    println!(
        "criterion 04 (radial gallery): PASS, constant off by {worst:.2e}, \
         log residual {residual:.2e}, envelope [{lo:.4}, {hi:.4}] in {elapsed:?}"
    );
}

#[test]
fn criterion_05_series_energies_and_lower_bound() {
    let domain = hemisphere();
    let series =
        build_series(&domain, &AngularPotential::Zero, None, DEFAULT_MODES, 1600).unwrap();
    let mut worst_rel = 0f64;
    for k in 0..5 {
        let (measured, expected) = series.gradient_norm_check(k).unwrap();
        worst_rel = worst_rel.max((measured - expected).abs() / expected);
    }
    assert!(
        worst_rel <= 5e-3,
        "criterion 05: FAIL, gradient identity off by {worst_rel:.2e}"
    );
    let mut worst_cross = 0f64;
    for k in 0..4 {
        for l in k + 1..5 {
            worst_cross = worst_cross.max(series.cross_gradient(k, l).unwrap().abs());
        }
    }
    assert!(worst_cross <= 1e-8, "criterion 05: FAIL, cross energy {worst_cross:.2e}");
    let inner = domain.default_inner().unwrap();
    let bound = series.lower_bound_check(1e4, &inner).unwrap();
    assert!(bound.c > 0.0, "criterion 05: FAIL, lower-bound constant {}", bound.c);
    assert!(
        bound.drift < 0.01,
        "criterion 05: FAIL, constant drifts {:.2e} over the last decade",
        bound.drift
    );
    println!(
        "criterion 05 (minimal series): PASS, worst energy error {worst_rel:.2e}, \
         worst cross {worst_cross:.2e}, c = {:.6} with drift {:.2e}",
        bound.c, bound.drift
    );
}

#[test]
fn criterion_06_annular_eigenvalues_scale_and_bound() {
    let domain = hemisphere();
    let curve = scaling_curve(
        &domain,
        &MatrixGallery::identity(),
        &[1.0, 2.0, 4.0, 8.0],
        48,
        64,
    )
    .unwrap();
    let products: Vec<f64> = curve.iter().map(|row| row.lambda_rho_sq).collect();
    let lo = products.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = products.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    assert!(
        (hi - lo) <= 1e-6 * hi,
        "criterion 06: FAIL, lambda rho^2 spread {products:?}"
    );

    let coeff = RadialCoefficient::constant(3, -3.0).unwrap();
    let lambda_ref = 2.0;
    let (d_lo, d_hi) = coeff.ellipticity_window(1.0).unwrap();
    let (nu_lo, nu_hi) = (d_lo / lambda_ref, d_hi / lambda_ref);
    let matrix = MatrixGallery::radial_angular(coeff, lambda_ref).unwrap();
    let identity = curve[0].lambda;
    let scaled = conelab::cone::annular_eigenvalue(&domain, &matrix, 1.0, 2.0, 48, 64)
        .unwrap()
        .lambda;
    let floor = nu_lo.min(1.0) * identity;
    let ceil = nu_hi.max(1.0) * identity;
    assert!(
        scaled >= floor * (1.0 - 1e-9) && scaled <= ceil * (1.0 + 1e-9),
        "criterion 06: FAIL, {scaled} outside [{floor}, {ceil}]"
    );
    println!(
        "criterion 06 (annular scaling): PASS, lambda rho^2 in [{lo:.9}, {hi:.9}], \
         gallery eigenvalue {scaled:.6} within its ellipticity window"
    );
}

#[test]
fn criterion_07_existence_dichotomy_on_the_hemisphere() {
    let domain = hemisphere();
    let lambda = hemisphere_lambda(400);
    let alpha = characteristic_roots(lambda, 3).unwrap().alpha_minus;
    let id = MatrixGallery::identity();

    let mut nonexist = Vec::new();
    for p in [1.1, 1.3, 1.5, 1.7, 1.9] {
        let cert = nonexistence_certificate(&domain, &id, p, alpha, 1.0, 32, 64).unwrap();
        assert_eq!(
            cert.verdict, "pass",
            "criterion 07: FAIL, nonexistence open at p = {p}"
        );
        nonexist.push((p, cert.doublings));
    }

    let probe = verify_supersolution_strong(&domain, &id, 3.0, 1.0, 400).unwrap();
    let c_half = probe.c_max.unwrap() / 2.0;
    let mut exist = Vec::new();
    for p in [2.05, 2.5, 3.0, 4.0] {
        let probe_p = verify_supersolution_strong(&domain, &id, p, 1e-3, 400).unwrap();
        let c = probe_p.c_max.unwrap() / 2.0;
        let cert = verify_supersolution_strong(&domain, &id, p, c, 400).unwrap();
        assert!(
            cert.passed(),
            "criterion 07: FAIL, supersolution rejected at p = {p}, margin {}",
            cert.margin
        );
        exist.push(p);
    }

    let critical = critical_case_certificate(&domain, 400, 32).unwrap();
    assert_eq!(critical.verdict, "pass", "criterion 07: FAIL at the critical exponent");
    assert!(
        (critical.p_star - 2.0).abs() < 1e-3,
        "criterion 07: FAIL, critical exponent {}",
        critical.p_star
    );

    let cross_strong = verify_supersolution_strong(&domain, &id, 1.5, c_half, 400).unwrap();
    assert!(
        !cross_strong.passed(),
        "criterion 07: FAIL, subcritical supersolution slipped through"
    );
    assert!(
        nonexistence_certificate(&domain, &id, 2.5, alpha, 1.0, 32, 64).is_err(),
        "criterion 07: FAIL, nonexistence accepted a supercritical exponent"
    );
    println!(
        "criterion 07 (dichotomy): PASS, nonexistence closed at {:?} (doublings {:?}), \
         supersolutions at {:?}, critical p* = {:.6} closed",
        nonexist.iter().map(|r| r.0).collect::<Vec<_>>(),
        nonexist.iter().map(|r| r.1).collect::<Vec<_>>(),
        exist,
        critical.p_star
    );
}

#[test]
fn criterion_08_designed_galleries_hit_prescribed_criticality() {
    let domain = hemisphere();
    let lambda_ref = hemisphere_lambda(64);
    for p in [1.2, 1.5, 1.75] {
        let alpha_d = 2.0 / (1.0 - p);
        let coeff = RadialCoefficient::constant(3, alpha_d).unwrap();
        let d = coeff.d(1.0);
        let roots = characteristic_roots(d, 3).unwrap();
        let p_star = critical_exponent(&roots).p_star;
        assert!(
            (p_star - p).abs() <= 1e-10,
            "criterion 08: FAIL, designed p* = {p_star} vs {p}"
        );
        let matrix = MatrixGallery::radial_angular(coeff, lambda_ref).unwrap();

        let below = nonexistence_certificate(&domain, &matrix, p - 0.1, alpha_d, 1.0, 32, 64)
            .unwrap();
        assert_eq!(
            below.verdict, "pass",
            "criterion 08: FAIL, no blowup below the designed exponent p = {p}"
        );

        let probe = verify_supersolution_strong(&domain, &matrix, p + 0.1, 1e-3, 64).unwrap();
        let cert = verify_supersolution_strong(
            &domain,
            &matrix,
            p + 0.1,
            probe.c_max.unwrap() / 2.0,
            64,
        )
        .unwrap();
        assert!(
            cert.passed(),
            "criterion 08: FAIL, no supersolution above the designed exponent p = {p}"
        );
    }
    println!(
        "criterion 08 (designed criticality): PASS, p in {{1.2, 1.5, 1.75}} each within 1e-10 \
         with the dichotomy holding at p -/+ 0.1"
    );
}

#[test]
fn criterion_09_monotone_exhaustion_squeezes_the_solution() {
    let clock = Instant::now();
    let domain = hemisphere();
    let probe = verify_supersolution_strong(&domain, &MatrixGallery::identity(), 3.0, 1.0, 64)
        .unwrap();
    let amplitude = probe.c_max.unwrap() / 2.0;
    let series = build_series(&domain, &AngularPotential::Zero, None, DEFAULT_MODES, 64).unwrap();
    let outcome = exhaustion_solve(
        &domain,
        &MatrixGallery::identity(),
        &series,
        3.0,
        amplitude,
        1.0,
        &[10.0, 30.0, 90.0],
        32,
        64,
        1e-8,
    )
    .unwrap();
    let report = &outcome.report;
    assert_eq!(report.levels.len(), 3);
    for level in &report.levels {
        assert!(
            level.residual <= 1e-8,
            "criterion 09: FAIL, residual {} at R = {}",
            level.residual,
            level.r_outer
        );
        assert!(
            level.monotonicity_defect <= 1e-11,
            "criterion 09: FAIL, monotonicity defect {} at R = {}",
            level.monotonicity_defect,
            level.r_outer
        );
        assert!(
            level.floor_clearance >= -1e-12,
            "criterion 09: FAIL, iterate dips {} under the subsolution",
            level.floor_clearance
        );
        assert!(
            level.ceiling_clearance >= -1e-10,
            "criterion 09: FAIL, iterate pokes {} above the ceiling",
            level.ceiling_clearance
        );
    }
    for ratio in &report.ratios {
        assert!(*ratio < 1.0, "criterion 09: FAIL, stabilization ratio {ratio}");
    }
    let elapsed = clock.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "criterion 09: FAIL, {elapsed:?}");
    println!(
        "criterion 09 (monotone exhaustion): PASS, residuals {:?}, ratios {:?} in {elapsed:?}",
        report.levels.iter().map(|l| l.residual).collect::<Vec<_>>(),
        report.ratios
    );
}

#[test]
fn criterion_10_power_lift_transfers_the_certificate() {
    let domain = hemisphere();
    let op = ConeOperator::new(&domain, 1.0, 100.0, &MatrixGallery::identity(), 48, 96).unwrap();
    let beta = scaling_beta(3.0).unwrap();
    let (_, phi) = op.angular_operator().principal_eigenpair();
    let sup = phi.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let radii = op.radii();
    let base = DiscreteField::from_fn(op.n_s(), op.n_theta(), |j, i| {
        radii[j].powf(beta) * phi[i] / sup
    });
    let before = verify_supersolution_weak(&op, &base, 3.0, 100, 42).unwrap();
    assert_eq!(before.verdict, "pass", "criterion 10: FAIL, base field rejected");
    let lifted = power_lift(&base, 3.0, 4.0).unwrap();
    let after = verify_supersolution_weak(&op, &lifted, 4.0, 100, 42).unwrap();
    assert_eq!(
        after.verdict, "pass",
        "criterion 10: FAIL, lifted field rejected with margin {}",
        after.worst_normalized
    );
    assert_eq!(after.trials, 100);
    println!(
        "criterion 10 (power lift): PASS, 100 trials at p = 4 with worst margin {:.3e}",
        after.worst_normalized
    );
}

#[test]
fn criterion_11_harnack_decay_beats_the_flat_bound() {
    let domain = hemisphere();
    let inner = domain.default_inner().unwrap();
    let report = harnack_exponent(
        &domain,
        &inner,
        &MatrixGallery::identity(),
        1.0,
        3,
        8,
        32,
        64,
        7,
    )
    .unwrap();
    assert!(report.levels >= 3, "criterion 11: FAIL, only {} levels", report.levels);
    assert!(
        report.alpha <= 2.0 - 3.0,
        "criterion 11: FAIL, alpha = {} exceeds 2 - N",
        report.alpha
    );
    println!(
        "criterion 11 (harnack decay): PASS, c_s = {:.6}, alpha = {:.6} over {} levels",
        report.c_s, report.alpha, report.levels
    );
}

#[test]
fn criterion_12_potential_norm_is_linear_and_subunit() {
    let a = newtonian_sup_norm(3, 0.3).unwrap();
    let b = newtonian_sup_norm(3, 0.6).unwrap();
    let ratio = b.norm / a.norm;
    assert!(
        (ratio - 2.0).abs() <= 1e-10,
        "criterion 12: FAIL, doubling epsilon scaled the norm by {ratio}"
    );
    let star = newtonian_sup_norm(3, a.epsilon_star).unwrap();
    assert!(
        star.norm < 1.0,
        "criterion 12: FAIL, norm at epsilon_star is {}",
        star.norm
    );
    println!(
        "criterion 12 (potential norm): PASS, linear within {:.2e}, norm at epsilon* = {:.12}",
        (ratio - 2.0).abs(),
        star.norm
    );
}

#[test]
fn criterion_13_reports_are_byte_deterministic() {
    let domain = hemisphere();
    let id = MatrixGallery::identity();
    let render_once = || {
        let cert = nonexistence_certificate(&domain, &id, 1.5, -2.0, 1.0, 32, 64).unwrap();
        let mut config = RunConfig::new("certify-nonexist");
        config.p = Some(1.5);
        render(&config, &cert).unwrap()
    };
    let first = render_once();
    let second = render_once();
    assert_eq!(first, second, "criterion 13: FAIL, certificate JSON drifted");

    let harnack_once = || {
        let inner = domain.default_inner().unwrap();
        let report = harnack_exponent(&domain, &inner, &id, 1.0, 3, 4, 16, 32, 5).unwrap();
        serde_json::to_string_pretty(&report).unwrap()
    };
    assert_eq!(
        harnack_once(),
        harnack_once(),
        "criterion 13: FAIL, seeded randomized report JSON drifted"
    );
    println!(
        "criterion 13 (determinism): PASS, {} bytes reproduced exactly",
        first.len()
    );
}
