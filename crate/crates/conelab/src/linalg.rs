//! Symmetric tridiagonal eigenvalue machinery.
//!
//! All 1-D discretizations in this crate reduce to real symmetric
//! tridiagonal matrices.  Eigenvalues are located by Sturm-count bisection
//! (deterministic, index-addressable), eigenvectors by shifted inverse
//! iteration with Rayleigh-quotient convergence control and optional
//! deflation against previously converged vectors.

/// Symmetric tridiagonal matrix: `diag.len() = n`, `off.len() = n - 1`.
#[derive(Debug, Clone)]
pub(crate) struct SymTridiag {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiag {
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Gershgorin bounds containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.n();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut radius = 0.0;
            if i > 0 {
                radius += self.off[i - 1].abs();
            }
            if i + 1 < n {
                radius += self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - radius);
            hi = hi.max(self.diag[i] + radius);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `sigma` (Sturm count via the
    /// LDL^T pivot recurrence).
    pub fn count_below(&self, sigma: f64) -> usize {
        let tiny = f64::MIN_POSITIVE / f64::EPSILON;
        let mut count = 0usize;
        let mut d = 1.0f64;
        for i in 0..self.n() {
            let off2 = if i > 0 { self.off[i - 1] * self.off[i - 1] } else { 0.0 };
            d = self.diag[i] - sigma - off2 / d;
            if d.abs() < tiny {
                d = -tiny;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// k-th smallest eigenvalue (0-indexed) by bisection.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        assert!(k < self.n());
        let (mut lo, mut hi) = self.gershgorin();
        let scale = lo.abs().max(hi.abs()).max(1.0);
        lo -= 1e-12 * scale;
        hi += 1e-12 * scale;
        // Bisect until the bracket is tight relative to the spectrum scale.
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 1e-15 * scale {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// Solve `(T - sigma I) x = b` by tridiagonal LU with partial pivoting.
    ///
    /// Near-singular pivots are clamped instead of failing: inverse
    /// iteration deliberately solves almost-singular systems and only the
    /// direction of the solution matters there.
    pub fn solve_shifted(&self, sigma: f64, b: &[f64]) -> Vec<f64> {
        let n = self.n();
        assert_eq!(b.len(), n);
        let tiny = f64::MIN_POSITIVE / f64::EPSILON;
        let clamp = |v: f64| {
            if v.abs() < tiny {
                if v < 0.0 {
                    -tiny
                } else {
                    tiny
                }
            } else {
                v
            }
        };
        if n == 1 {
            return vec![b[0] / clamp(self.diag[0] - sigma)];
        }
        let mut d: Vec<f64> = self.diag.iter().map(|v| v - sigma).collect();
        let mut dl = self.off.clone();
        let mut du = self.off.clone();
        let mut du2 = vec![0.0; n - 2];
        let mut swap = vec![false; n - 1];
        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                d[i] = clamp(d[i]);
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                swap[i] = true;
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
            }
        }
        for v in d.iter_mut() {
            *v = clamp(*v);
        }
        let mut x = b.to_vec();
        for i in 0..n - 1 {
            if swap[i] {
                x.swap(i, i + 1);
            }
            let xi = x[i];
            x[i + 1] -= dl[i] * xi;
        }
        x[n - 1] /= d[n - 1];
        x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
        for i in (0..n - 2).rev() {
            x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
        }
        x
    }

    /// Rayleigh quotient `x^T T x / x^T x`.
    pub fn rayleigh(&self, x: &[f64]) -> f64 {
        let n = self.n();
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..n {
            let mut tx = self.diag[i] * x[i];
            if i > 0 {
                tx += self.off[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                tx += self.off[i] * x[i + 1];
            }
            num += x[i] * tx;
            den += x[i] * x[i];
        }
        num / den
    }

    /// Eigenvector for the k-th smallest eigenvalue by shifted inverse
    /// iteration, deflated against `prev` (Euclidean-orthonormal) vectors.
    ///
    /// Returns `(eigenvalue, unit eigenvector)`.  Convergence is declared
    /// when successive Rayleigh quotients differ by at most `1e-12`
    /// relative to the spectrum scale.
    pub fn eigenpair(&self, k: usize, prev: &[Vec<f64>]) -> (f64, Vec<f64>) {
        let n = self.n();
        let lam = self.eigenvalue(k);
        let (glo, ghi) = self.gershgorin();
        let scale = glo.abs().max(ghi.abs()).max(1.0);
        // Deterministic start: strictly positive for the ground state, a
        // mildly oscillating pattern otherwise (never orthogonal to the
        // target in exact arithmetic for generic meshes).
        let mut x: Vec<f64> = if k == 0 {
            vec![1.0; n]
        } else {
            (0..n)
                .map(|i| 1.0 + 0.5 * ((i + 1) as f64 * (k as f64 + 0.37)).sin())
                .collect()
        };
        orthogonalize(&mut x, prev);
        normalize(&mut x);
        let mut rq = self.rayleigh(&x);
        let sigma = lam - 1e-11 * scale;
        for _ in 0..60 {
            let mut y = self.solve_shifted(sigma, &x);
            orthogonalize(&mut y, prev);
            normalize(&mut y);
            let rq_new = self.rayleigh(&y);
            x = y;
            if (rq_new - rq).abs() <= 1e-12 * scale {
                rq = rq_new;
                break;
            }
            rq = rq_new;
        }
        (rq, x)
    }
}

pub(crate) fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        for v in x.iter_mut() {
            *v /= norm;
        }
    }
}

pub(crate) fn orthogonalize(x: &mut [f64], basis: &[Vec<f64>]) {
    for b in basis {
        let dot: f64 = x.iter().zip(b.iter()).map(|(a, c)| a * c).sum();
        for (xi, bi) in x.iter_mut().zip(b.iter()) {
            *xi -= dot * bi;
        }
    }
}

/// Pivoted LU factorization of a symmetric tridiagonal matrix, kept around
/// for repeated solves against many right-hand sides.
#[derive(Debug, Clone)]
pub(crate) struct FactoredTridiag {
    lower: Vec<f64>,
    diag: Vec<f64>,
    upper: Vec<f64>,
    upper2: Vec<f64>,
    swapped: Vec<bool>,
}

impl FactoredTridiag {
    /// Factor the matrix with diagonal `diag` and off-diagonal `off`.
    pub fn new(diag: &[f64], off: &[f64]) -> Self {
        let n = diag.len();
        assert_eq!(off.len(), n.saturating_sub(1));
        let mut dl = off.to_vec();
        let mut d = diag.to_vec();
        let mut du = off.to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        let scale: f64 = diag
            .iter()
            .chain(off.iter())
            .fold(0.0_f64, |m, v| m.max(v.abs()))
            .max(1.0);
        let floor = scale * 1e-300;
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i].abs() < floor {
                    d[i] = floor.copysign(if d[i] == 0.0 { 1.0 } else { d[i] });
                }
                let factor = dl[i] / d[i];
                d[i + 1] -= factor * du[i];
                dl[i] = factor;
            } else {
                let factor = d[i] / dl[i];
                d[i] = dl[i];
                let tmp = d[i + 1];
                d[i + 1] = du[i] - factor * tmp;
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -factor;
                }
                du[i] = tmp;
                dl[i] = factor;
                swapped[i] = true;
            }
        }
        if n > 0 && d[n - 1].abs() < floor {
            d[n - 1] = floor.copysign(if d[n - 1] == 0.0 { 1.0 } else { d[n - 1] });
        }
        FactoredTridiag {
            lower: dl,
            diag: d,
            upper: du,
            upper2: du2,
            swapped,
        }
    }

    /// Solve `A x = b` using the stored factorization.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        assert_eq!(b.len(), n);
        let mut x = b.to_vec();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let tmp = x[i];
                x[i] = x[i + 1];
                x[i + 1] = tmp - self.lower[i] * x[i];
            } else {
                x[i + 1] -= self.lower[i] * x[i];
            }
        }
        if n > 0 {
            x[n - 1] /= self.diag[n - 1];
            if n > 1 {
                x[n - 2] = (x[n - 2] - self.upper[n - 2] * x[n - 1]) / self.diag[n - 2];
            }
            for i in (0..n.saturating_sub(2)).rev() {
                x[i] =
                    (x[i] - self.upper[i] * x[i + 1] - self.upper2[i] * x[i + 2]) / self.diag[i];
            }
        }
        x
    }
}
