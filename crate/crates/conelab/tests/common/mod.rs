//! Shared oracles for the integration suite.
//!
//! Everything here recomputes reference values through code paths that are
//! independent of the library: a shooting method for angular eigenvalues, a
//! five-point finite-difference eigensolver with banded Cholesky for annular
//! sections, and plain Simpson quadrature.  Agreement between the library and
//! these oracles is evidence, not tautology.

#![allow(dead_code)]

use conelab::sphere::AngularDomain;

/// Converged principal eigenvalue of the 60 degree cap in `S^2`.
pub const CAP60_LAMBDA1: f64 = 4.936_041_865_4;
/// Critical exponent of the 60 degree cap cone.
pub const CAP60_PSTAR: f64 = 1.720_126_902_7;
/// Converged principal eigenvalue of the 67.5 degree cap in `S^2`.
pub const CAP67_5_LAMBDA1: f64 = 3.827_997_709_8;
/// Converged principal eigenvalue of the 120 degree cap in `S^2`.
pub const CAP120_LAMBDA1: f64 = 0.963_322_758_678_4;
/// Converged principal eigenvalue of the 135 degree cap in `S^2`.
pub const CAP135_LAMBDA1: f64 = 0.677_558_839_7;
/// Critical exponent of the 135 degree cap cone.
pub const CAP135_PSTAR: f64 = 2.366_961_906_9;
/// Converged principal eigenvalue of the 150 degree cap in `S^2`.
pub const CAP150_LAMBDA1: f64 = 0.466_027_261_639_5;
/// The truncated Newtonian integral `int_0^inf dv / ln^2(e^v + 2)`.
pub const NEWTONIAN_INTEGRAL: f64 = 1.373_684_569_773_354_2;

/// Principal Dirichlet eigenvalue of the axisymmetric Laplace-Beltrami
/// operator on a cap or band, by shooting.
///
/// The profile solves `phi'' + (N-2) cot(theta) phi' + lambda phi = 0`.  On a
/// cap the integration starts just off the pole with the regular expansion
/// `phi = 1 - lambda theta^2 / (2(N-1))`; on a band it starts from the
/// Dirichlet face with unit slope.  The eigenvalue is the first zero of
/// `lambda -> phi(theta_hi)`, bracketed by doubling and resolved by
/// bisection.
pub fn shooting_lambda1(domain: &AngularDomain, steps: usize) -> f64 {
    let (lo, hi) = domain.theta_range();
    let nu = (domain.dimension - 2) as f64;
    let endpoint = |lambda: f64| -> f64 {
        let (mut theta, mut phi, mut psi) = if domain.lo_is_pole() {
            let t0 = 1e-6;
            (t0, 1.0 - lambda * t0 * t0 / (2.0 * (nu + 1.0)), -lambda * t0 / (nu + 1.0))
        } else {
            (lo, 0.0, 1.0)
        };
        let h = (hi - theta) / steps as f64;
        let rhs = |t: f64, phi: f64, psi: f64| (psi, -nu / t.tan() * psi - lambda * phi);
        for _ in 0..steps {
            let (k1p, k1s) = rhs(theta, phi, psi);
            let (k2p, k2s) = rhs(theta + 0.5 * h, phi + 0.5 * h * k1p, psi + 0.5 * h * k1s);
            let (k3p, k3s) = rhs(theta + 0.5 * h, phi + 0.5 * h * k2p, psi + 0.5 * h * k2s);
            let (k4p, k4s) = rhs(theta + h, phi + h * k3p, psi + h * k3s);
            phi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
            psi += h / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
            theta += h;
        }
        phi
    };
    let mut a = 1e-9;
    assert!(endpoint(a) > 0.0, "profile must be positive below the eigenvalue");
    let mut b = 1.0;
    while endpoint(b) > 0.0 {
        a = b;
        b *= 2.0;
        assert!(b < 1e9, "failed to bracket the eigenvalue");
    }
    for _ in 0..100 {
        let mid = 0.5 * (a + b);
        if endpoint(mid) > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
        if b - a < 1e-14 * b {
            break;
        }
    }
    0.5 * (a + b)
}

/// Symmetric banded matrix in lower-band storage.
struct BandMatrix {
    n: usize,
    bw: usize,
    data: Vec<f64>,
}

impl BandMatrix {
    fn zeros(n: usize, bw: usize) -> Self {
        BandMatrix { n, bw, data: vec![0.0; n * (bw + 1)] }
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * (self.bw + 1) + (j + self.bw - i)]
    }

    fn add(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * (self.bw + 1) + (j + self.bw - i)] += v;
    }

    /// In-place banded Cholesky factorization `A = L L^T`.
    fn cholesky(&mut self) {
        for i in 0..self.n {
            let j0 = i.saturating_sub(self.bw);
            for j in j0..=i {
                let k0 = j.saturating_sub(self.bw).max(j0);
                let mut sum = self.at(i, j);
                for k in k0..j {
                    sum -= self.at(i, k) * self.at(j, k);
                }
                let v = if j < i {
                    sum / self.at(j, j)
                } else {
                    assert!(sum > 0.0, "matrix is not positive definite");
                    sum.sqrt()
                };
                self.data[i * (self.bw + 1) + (j + self.bw - i)] = v;
            }
        }
    }

    /// Solve `L L^T x = b` after factorization.
    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut y = b.to_vec();
        for i in 0..self.n {
            let j0 = i.saturating_sub(self.bw);
            let mut v = y[i];
            for (j, &yj) in y.iter().enumerate().take(i).skip(j0) {
                v -= self.at(i, j) * yj;
            }
            y[i] = v / self.at(i, i);
        }
        for i in (0..self.n).rev() {
            let j1 = (i + self.bw).min(self.n - 1);
            let mut v = y[i];
            for (j, &yj) in y.iter().enumerate().take(j1 + 1).skip(i + 1) {
                v -= self.at(j, i) * yj;
            }
            y[i] = v / self.at(i, i);
        }
        y
    }
}

/// Principal Dirichlet eigenvalue of `-div(a grad u) = Lambda u` on the
/// axisymmetric annular section `{ r0 < r < r1, theta_lo < theta < theta_hi }`
/// with `a` acting as the identity radially and as `g(r)` angularly.
///
/// Independent of the library: uniform log-radial and angular grids, midpoint
/// quadrature of the weights `r^{N-2} sin^{N-2}(theta)`, a five-point
/// stiffness matrix, and inverse power iteration with banded Cholesky.  The
/// band must stay away from the poles.
#[allow(clippy::too_many_arguments)]
pub fn annulus_lambda1_oracle(
    dimension: usize,
    theta_lo: f64,
    theta_hi: f64,
    r0: f64,
    r1: f64,
    g: impl Fn(f64) -> f64,
    n_s: usize,
    n_t: usize,
) -> f64 {
    assert!(theta_lo > 0.0 && theta_hi < std::f64::consts::PI);
    let nu = (dimension - 2) as f64;
    let (s0, s1) = (r0.ln(), r1.ln());
    let hs = (s1 - s0) / n_s as f64;
    let ht = (theta_hi - theta_lo) / n_t as f64;
    let w = |theta: f64| theta.sin().powf(nu);
    let s_at = |i: usize| s0 + i as f64 * hs;
    let t_at = |j: usize| theta_lo + j as f64 * ht;
    let rows = n_s - 1;
    let cols = n_t - 1;
    let idx = |i: usize, j: usize| (i - 1) * cols + (j - 1);
    let n = rows * cols;
    let mut stiff = BandMatrix::zeros(n, cols);
    let mut mass = vec![0.0; n];
    for i in 1..n_s {
        for j in 1..n_t {
            let me = idx(i, j);
            mass[me] = (dimension as f64 * s_at(i)).exp() * w(t_at(j)) * hs * ht;
            let flux_r = |half: f64| (nu * (s_at(i) + half * hs)).exp() * w(t_at(j)) * ht / hs;
            let flux_t = |half: f64| {
                g(s_at(i).exp()) * (nu * s_at(i)).exp() * w(t_at(j) + half * ht) * hs / ht
            };
            let right = flux_r(0.5);
            let left = flux_r(-0.5);
            let up = flux_t(0.5);
            let down = flux_t(-0.5);
            stiff.add(me, me, right + left + up + down);
            if i + 1 < n_s {
                stiff.add(idx(i + 1, j), me, -right);
            }
            if j + 1 < n_t {
                stiff.add(idx(i, j + 1), me, -up);
            }
        }
    }
    stiff.cholesky();
    let mut x = vec![1.0; n];
    let mut lambda = f64::INFINITY;
    for _ in 0..500 {
        let b: Vec<f64> = x.iter().zip(&mass).map(|(&xi, &mi)| xi * mi).collect();
        let z = stiff.solve(&b);
        let num: f64 = z.iter().zip(&b).map(|(&zi, &bi)| zi * bi).sum();
        let den: f64 = z.iter().zip(&mass).map(|(&zi, &mi)| zi * zi * mi).sum();
        let next = num / den;
        let norm = den.sqrt();
        for (xi, &zi) in x.iter_mut().zip(&z) {
            *xi = zi / norm;
        }
        if (next - lambda).abs() <= 1e-13 * next.abs() {
            return next;
        }
        lambda = next;
    }
    lambda
}

/// Composite Simpson rule with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    assert!(n.is_multiple_of(2) && n >= 2);
    let h = (b - a) / n as f64;
    let mut sum = f(a) + f(b);
    for i in 1..n {
        let weight = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += weight * f(a + i as f64 * h);
    }
    sum * h / 3.0
}

/// Central-difference logarithmic slope `d ln v / d ln r` at index `i`.
pub fn fd_log_slope(radii: &[f64], values: &[f64], i: usize) -> f64 {
    (values[i + 1].ln() - values[i - 1].ln()) / (radii[i + 1].ln() - radii[i - 1].ln())
}
