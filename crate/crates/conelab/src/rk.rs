//! Adaptive Dormand-Prince 5(4) integration for small ODE systems.
//!
//! The systems integrated here have two or three components, so the state
//! is a const-generic array and the right-hand side a closure.  Steps are
//! controlled by the embedded fourth-order error estimate with a mixed
//! absolute/relative norm.

use crate::{Error, Result};

const MAX_STEPS: usize = 40_000_000;

/// Integrate `y' = f(t, y)` from `t0` to `t1` (either direction).
///
/// `observer` is called at every accepted step with `(t, y)`, including
/// the initial state; to sample at fixed points, integrate segment by
/// segment instead (see [`integrate_to`]).
pub(crate) fn integrate<const D: usize>(
    f: &mut impl FnMut(f64, &[f64; D]) -> [f64; D],
    t0: f64,
    y0: [f64; D],
    t1: f64,
    rtol: f64,
    atol: f64,
    observer: &mut impl FnMut(f64, &[f64; D]),
) -> Result<[f64; D]> {
    // Dormand-Prince coefficients.
    const A21: f64 = 1.0 / 5.0;
    const A31: f64 = 3.0 / 40.0;
    const A32: f64 = 9.0 / 40.0;
    const A41: f64 = 44.0 / 45.0;
    const A42: f64 = -56.0 / 15.0;
    const A43: f64 = 32.0 / 9.0;
    const A51: f64 = 19372.0 / 6561.0;
    const A52: f64 = -25360.0 / 2187.0;
    const A53: f64 = 64448.0 / 6561.0;
    const A54: f64 = -212.0 / 729.0;
    const A61: f64 = 9017.0 / 3168.0;
    const A62: f64 = -355.0 / 33.0;
    const A63: f64 = 46732.0 / 5247.0;
    const A64: f64 = 49.0 / 176.0;
    const A65: f64 = -5103.0 / 18656.0;
    const B1: f64 = 35.0 / 384.0;
    const B3: f64 = 500.0 / 1113.0;
    const B4: f64 = 125.0 / 192.0;
    const B5: f64 = -2187.0 / 6784.0;
    const B6: f64 = 11.0 / 84.0;
    // Embedded 4th-order weights.
    const E1: f64 = 5179.0 / 57600.0;
    const E3: f64 = 7571.0 / 16695.0;
    const E4: f64 = 393.0 / 640.0;
    const E5: f64 = -92097.0 / 339200.0;
    const E6: f64 = 187.0 / 2100.0;
    const E7: f64 = 1.0 / 40.0;

    if !(rtol > 0.0) || !(atol >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerances must be positive, got rtol={rtol}, atol={atol}"
        )));
    }
    let span = t1 - t0;
    if span == 0.0 {
        observer(t0, &y0);
        return Ok(y0);
    }
    let dir = span.signum();
    let mut t = t0;
    let mut y = y0;
    observer(t, &y);
    let mut h = dir * (span.abs() / 100.0).clamp(1e-10, 0.1);
    let mut k1 = f(t, &y);
    for _ in 0..MAX_STEPS {
        if (t1 - t) * dir <= 0.0 {
            return Ok(y);
        }
        if (t + h - t1) * dir > 0.0 {
            h = t1 - t;
        }
        let add = |y: &[f64; D], coeffs: &[(f64, &[f64; D])]| {
            let mut out = *y;
            for (c, k) in coeffs {
                for i in 0..D {
                    out[i] += h * c * k[i];
                }
            }
            out
        };
        let k2 = f(t + h * 0.2, &add(&y, &[(A21, &k1)]));
        let k3 = f(t + h * 0.3, &add(&y, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(t + h * 0.8, &add(&y, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = f(
            t + h * 8.0 / 9.0,
            &add(&y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = f(
            t + h,
            &add(
                &y,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ),
        );
        let y5 = add(&y, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
        let k7 = f(t + h, &y5);
        let y4 = add(
            &y,
            &[(E1, &k1), (E3, &k3), (E4, &k4), (E5, &k5), (E6, &k6), (E7, &k7)],
        );
        let mut err: f64 = 0.0;
        for i in 0..D {
            let sc = atol + rtol * y[i].abs().max(y5[i].abs());
            if sc > 0.0 {
                err = err.max((y5[i] - y4[i]).abs() / sc);
            }
        }
        if err <= 1.0 {
            t += h;
            y = y5;
            k1 = k7; // first-same-as-last
            observer(t, &y);
        }
        let factor = if err > 0.0 {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h *= factor;
        if h.abs() < 1e-15 * t.abs().max(1.0) {
            return Err(Error::NonConvergence(format!(
                "step size underflow at t = {t}"
            )));
        }
    }
    Err(Error::NonConvergence(format!(
        "step budget exhausted between t = {t0} and t = {t1}"
    )))
}

/// Integrate to `t1` without observing intermediate steps.
pub(crate) fn integrate_to<const D: usize>(
    f: &mut impl FnMut(f64, &[f64; D]) -> [f64; D],
    t0: f64,
    y0: [f64; D],
    t1: f64,
    rtol: f64,
    atol: f64,
) -> Result<[f64; D]> {
    integrate(f, t0, y0, t1, rtol, atol, &mut |_, _| {})
}
