//! C ABI for the core computations: critical exponents, angular
//! eigenvalues, and certificate pipelines.
//!
//! The surface follows the usual conventions for C consumers:
//!
//! * domains are opaque handles created by [`conelab_domain_cap`],
//!   [`conelab_domain_band`], or [`conelab_domain_full_sphere`] and
//!   released with [`conelab_domain_free`];
//! * every operation returns an `i32` status code (`CONELAB_OK` is zero)
//!   and writes results through out-pointers;
//! * certificate operations return JSON documents identical to the CLI
//!   reports, as NUL-terminated strings released with
//!   [`conelab_string_free`];
//! * no call unwinds across the boundary: panics are caught and reported
//!   as `CONELAB_ERR_INTERNAL`.

use conelab::angular::{refined_lambda1, AngularPotential};
use conelab::certify::{
    critical_case_with_epsilon, newtonian_sup_norm, nonexistence_certificate,
    verify_supersolution_strong,
};
use conelab::cone::MatrixGallery;
use conelab::exponents::characteristic_roots;
use conelab::sphere::AngularDomain;
use conelab::Error;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Success.
pub const CONELAB_OK: i32 = 0;
/// The requested certificate was evaluated and failed.
pub const CONELAB_CERT_FAIL: i32 = 1;
/// Invalid input: bad parameters, domains, or preconditions.
pub const CONELAB_ERR_INVALID: i32 = 2;
/// A numerical procedure did not converge or exhausted its search range.
pub const CONELAB_ERR_NUMERICAL: i32 = 3;
/// A required pointer argument was null.
pub const CONELAB_ERR_NULL: i32 = 4;
/// An internal invariant failed; the library caught a panic.
pub const CONELAB_ERR_INTERNAL: i32 = 5;

/// Opaque angular domain handle.
pub struct ConelabDomain(AngularDomain);

/// Exponent data written by [`conelab_exponent`].
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct ConelabExponent {
    /// Principal Dirichlet eigenvalue of the angular domain.
    pub lambda1: f64,
    /// Decaying characteristic root.
    pub alpha_minus: f64,
    /// Growing characteristic root.
    pub alpha_plus: f64,
    /// Critical exponent `1 - 2/alpha_minus`.
    pub p_star: f64,
}

fn code_for(err: &Error) -> i32 {
    match err {
        Error::NonConvergence(_)
        | Error::SearchExhausted(_)
        | Error::OrderingViolation(_)
        | Error::GapFailure(_) => CONELAB_ERR_NUMERICAL,
        _ => CONELAB_ERR_INVALID,
    }
}

fn guarded(body: impl FnOnce() -> i32) -> i32 {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(code) => code,
        Err(_) => CONELAB_ERR_INTERNAL,
    }
}

fn export_json<T: serde::Serialize>(value: &T, out: *mut *mut c_char) -> i32 {
    let text = match serde_json::to_string_pretty(value) {
        Ok(text) => text,
        Err(_) => return CONELAB_ERR_INTERNAL,
    };
    match CString::new(text) {
        Ok(cstr) => {
            unsafe { *out = cstr.into_raw() };
            CONELAB_OK
        }
        Err(_) => CONELAB_ERR_INTERNAL,
    }
}

/// Create a polar cap domain on `S^{N-1}` with opening angle `theta1`
/// (radians).  Writes the handle to `out`.
///
/// # Safety
/// `out` must be a valid pointer.  The handle must be released with
/// [`conelab_domain_free`].
#[no_mangle]
pub unsafe extern "C" fn conelab_domain_cap(
    dimension: u32,
    theta1: f64,
    out: *mut *mut ConelabDomain,
) -> i32 {
    if out.is_null() {
        return CONELAB_ERR_NULL;
    }
    guarded(|| match AngularDomain::cap(dimension as usize, theta1) {
        Ok(domain) => {
            unsafe { *out = Box::into_raw(Box::new(ConelabDomain(domain))) };
            CONELAB_OK
        }
        Err(err) => code_for(&err),
    })
}

/// Create a band domain `theta0 < theta < theta1` (radians).
///
/// # Safety
/// `out` must be a valid pointer.  The handle must be released with
/// [`conelab_domain_free`].
#[no_mangle]
pub unsafe extern "C" fn conelab_domain_band(
    dimension: u32,
    theta0: f64,
    theta1: f64,
    out: *mut *mut ConelabDomain,
) -> i32 {
    if out.is_null() {
        return CONELAB_ERR_NULL;
    }
    guarded(
        || match AngularDomain::band(dimension as usize, theta0, theta1) {
            Ok(domain) => {
                unsafe { *out = Box::into_raw(Box::new(ConelabDomain(domain))) };
                CONELAB_OK
            }
            Err(err) => code_for(&err),
        },
    )
}

/// Create the boundaryless whole-sphere domain.
///
/// # Safety
/// `out` must be a valid pointer.  The handle must be released with
/// [`conelab_domain_free`].
#[no_mangle]
pub unsafe extern "C" fn conelab_domain_full_sphere(
    dimension: u32,
    out: *mut *mut ConelabDomain,
) -> i32 {
    if out.is_null() {
        return CONELAB_ERR_NULL;
    }
    guarded(|| match AngularDomain::full_sphere(dimension as usize) {
        Ok(domain) => {
            unsafe { *out = Box::into_raw(Box::new(ConelabDomain(domain))) };
            CONELAB_OK
        }
        Err(err) => code_for(&err),
    })
}

/// Release a domain handle.  Passing null is a no-op.
///
/// # Safety
/// `domain` must be null or a handle produced by one of the constructors,
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn conelab_domain_free(domain: *mut ConelabDomain) {
    if !domain.is_null() {
        drop(unsafe { Box::from_raw(domain) });
    }
}

/// Principal Dirichlet eigenvalue of the angular domain, Richardson
/// extrapolated over `nodes` and `2 * nodes`.
///
/// # Safety
/// `domain` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn conelab_eigenvalue(
    domain: *const ConelabDomain,
    nodes: u32,
    out: *mut f64,
) -> i32 {
    if domain.is_null() || out.is_null() {
        return CONELAB_ERR_NULL;
    }
    let dom = unsafe { &(*domain).0 };
    guarded(
        || match refined_lambda1(dom, &AngularPotential::Zero, nodes as usize) {
            Ok(estimate) => {
                unsafe { *out = estimate.lambda };
                CONELAB_OK
            }
            Err(err) => code_for(&err),
        },
    )
}

/// Eigenvalue, characteristic roots, and critical exponent of the domain.
///
/// # Safety
/// `domain` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn conelab_exponent(
    domain: *const ConelabDomain,
    nodes: u32,
    out: *mut ConelabExponent,
) -> i32 {
    if domain.is_null() || out.is_null() {
        return CONELAB_ERR_NULL;
    }
    let dom = unsafe { &(*domain).0 };
    guarded(|| {
        let estimate = match refined_lambda1(dom, &AngularPotential::Zero, nodes as usize) {
            Ok(estimate) => estimate,
            Err(err) => return code_for(&err),
        };
        match characteristic_roots(estimate.lambda, dom.dimension) {
            Ok(roots) => {
                unsafe {
                    *out = ConelabExponent {
                        lambda1: estimate.lambda,
                        alpha_minus: roots.alpha_minus,
                        alpha_plus: roots.alpha_plus,
                        p_star: 1.0 - 2.0 / roots.alpha_minus,
                    };
                }
                CONELAB_OK
            }
            Err(err) => code_for(&err),
        }
    })
}

/// Pointwise supersolution certificate for the candidate
/// `c r^{2/(1-p)} phi_1` with the identity matrix.  Writes the JSON
/// report to `out_json`.  Returns `CONELAB_OK` when the certificate
/// passes and `CONELAB_CERT_FAIL` when it is evaluated but fails; the
/// JSON is written in both cases.
///
/// # Safety
/// `domain` must be a live handle and `out_json` a valid pointer.  The
/// string must be released with [`conelab_string_free`].
#[no_mangle]
pub unsafe extern "C" fn conelab_certify_supersolution(
    domain: *const ConelabDomain,
    p: f64,
    c: f64,
    nodes: u32,
    out_json: *mut *mut c_char,
) -> i32 {
    if domain.is_null() || out_json.is_null() {
        return CONELAB_ERR_NULL;
    }
    let dom = unsafe { &(*domain).0 };
    guarded(|| {
        match verify_supersolution_strong(dom, &MatrixGallery::identity(), p, c, nodes as usize) {
            Ok(cert) => {
                let passed = cert.passed();
                let code = export_json(&cert, out_json);
                if code != CONELAB_OK {
                    return code;
                }
                if passed {
                    CONELAB_OK
                } else {
                    CONELAB_CERT_FAIL
                }
            }
            Err(err) => {
                unsafe { *out_json = ptr::null_mut() };
                code_for(&err)
            }
        }
    })
}

/// Nonexistence certificate from the lower bound `v >= c r^alpha`, with
/// the identity matrix.  Writes the JSON report to `out_json`.
///
/// # Safety
/// `domain` must be a live handle and `out_json` a valid pointer.  The
/// string must be released with [`conelab_string_free`].
#[no_mangle]
pub unsafe extern "C" fn conelab_certify_nonexistence(
    domain: *const ConelabDomain,
    p: f64,
    alpha: f64,
    c: f64,
    nodes_per_decade: u32,
    n_theta: u32,
    out_json: *mut *mut c_char,
) -> i32 {
    if domain.is_null() || out_json.is_null() {
        return CONELAB_ERR_NULL;
    }
    let dom = unsafe { &(*domain).0 };
    guarded(|| {
        match nonexistence_certificate(
            dom,
            &MatrixGallery::identity(),
            p,
            alpha,
            c,
            nodes_per_decade as usize,
            n_theta as usize,
        ) {
            Ok(cert) => export_json(&cert, out_json),
            Err(err) => {
                unsafe { *out_json = ptr::null_mut() };
                code_for(&err)
            }
        }
    })
}

/// Critical-case certificate with an explicit indicator-well depth.
/// Writes the JSON report to `out_json`.
///
/// # Safety
/// `domain` must be a live handle and `out_json` a valid pointer.  The
/// string must be released with [`conelab_string_free`].
#[no_mangle]
pub unsafe extern "C" fn conelab_certify_critical(
    domain: *const ConelabDomain,
    epsilon: f64,
    nodes: u32,
    nodes_per_decade: u32,
    out_json: *mut *mut c_char,
) -> i32 {
    if domain.is_null() || out_json.is_null() {
        return CONELAB_ERR_NULL;
    }
    let dom = unsafe { &(*domain).0 };
    guarded(|| {
        match critical_case_with_epsilon(dom, epsilon, nodes as usize, nodes_per_decade as usize) {
            Ok(cert) => export_json(&cert, out_json),
            Err(err) => {
                unsafe { *out_json = ptr::null_mut() };
                code_for(&err)
            }
        }
    })
}

/// Sup norm of the Newtonian potential of the truncated log-squared
/// density, and the amplitude keeping it below one.
///
/// # Safety
/// `out_norm` and `out_epsilon_star` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn conelab_potential_norm(
    dimension: u32,
    epsilon: f64,
    out_norm: *mut f64,
    out_epsilon_star: *mut f64,
) -> i32 {
    if out_norm.is_null() || out_epsilon_star.is_null() {
        return CONELAB_ERR_NULL;
    }
    guarded(|| match newtonian_sup_norm(dimension as usize, epsilon) {
        Ok(report) => {
            unsafe {
                *out_norm = report.norm;
                *out_epsilon_star = report.epsilon_star;
            }
            CONELAB_OK
        }
        Err(err) => code_for(&err),
    })
}

/// Release a string returned by a certificate call.  Passing null is a
/// no-op.
///
/// # Safety
/// `text` must be null or a string produced by this library, not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn conelab_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(unsafe { CString::from_raw(text) });
    }
}
