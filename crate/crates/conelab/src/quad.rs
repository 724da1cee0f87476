//! One-dimensional quadrature helpers.
//!
//! Cell integrals in the finite-volume assembly use a fixed 5-point
//! Gauss-Legendre rule (degree 9, far beyond the smoothness of the
//! integrands over a single cell).  Improper integrals use adaptive
//! Simpson with a recursion cap.

use crate::{Error, Result};

/// Nodes and weights of the 5-point Gauss-Legendre rule on [-1, 1].
const GL5: [(f64, f64); 5] = [
    (-0.906179845938664, 0.236926885056189),
    (-0.538469310105683, 0.478628670499366),
    (0.0, 0.568888888888889),
    (0.538469310105683, 0.478628670499366),
    (0.906179845938664, 0.236926885056189),
];

/// 5-point Gauss-Legendre approximation of the integral of `f` over `[a, b]`.
pub(crate) fn gauss5(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    for (x, w) in GL5 {
        sum += w * f(mid + half * x);
    }
    sum * half
}

/// Adaptive Simpson integration of `f` over `[a, b]` to absolute tolerance `tol`.
pub(crate) fn adaptive(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            return Ok(left + right + delta / 15.0);
        }
        if depth == 0 {
            return Err(Error::NonConvergence(format!(
                "adaptive quadrature failed to converge on [{a}, {b}]"
            )));
        }
        let half_tol = 0.5 * tol;
        Ok(recurse(f, a, m, fa, flm, fm, left, half_tol, depth - 1)?
            + recurse(f, m, b, fm, frm, fb, right, half_tol, depth - 1)?)
    }
    let fa = f(a);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let fb = f(b);
    let whole = simpson(fa, fm, fb, a, b);
    recurse(f, a, b, fa, fm, fb, whole, tol, 48)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss5_is_exact_for_degree_nine() {
        let exact = 2.0 / 10.0; // integral of x^9 over [0, 1] is 1/10; x^8 gives 2/9 on [-1,1]
        let got = gauss5(|x| x.powi(9), -1.0, 1.0);
        assert!(got.abs() < 1e-15, "odd power integrates to zero, got {got}");
        let got8 = gauss5(|x| x.powi(8), -1.0, 1.0);
        assert!((got8 - 2.0 / 9.0).abs() < 1e-14);
        let got9 = gauss5(|x| x.powi(9), 0.0, 1.0);
        assert!((got9 - 0.5 * exact).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_peaked_integrand() {
        // integral of 1/(1 + 400 x^2) over [-1, 1] = arctan(20)/10
        let f = |x: f64| 1.0 / (1.0 + 400.0 * x * x);
        let got = adaptive(&f, -1.0, 1.0, 1e-12).unwrap();
        let exact = (20.0f64).atan() / 10.0;
        assert!((got - exact).abs() < 1e-11);
    }

    #[test]
    fn adaptive_matches_gauss_on_smooth_weight() {
        let f = |x: f64| x.sin().powi(3);
        let got = adaptive(&f, 0.0, 2.0, 1e-13).unwrap();
        let gl: f64 = (0..40)
            .map(|i| {
                let a = i as f64 * 0.05;
                gauss5(f, a, a + 0.05)
            })
            .sum();
        assert!((got - gl).abs() < 1e-12);
    }
}
