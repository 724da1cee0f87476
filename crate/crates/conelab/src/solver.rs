//! Monotone iteration for positive solutions on truncated cones.
//!
//! Between an ordered subsolution/supersolution pair the shifted iteration
//! `(-L + M) w_{k+1} = w_k^p + M w_k` with fixed Dirichlet cap data is
//! order preserving once `M` dominates the derivative `p u^{p-1}` on the
//! relevant range, so the iterates climb monotonically from the
//! subsolution and stay below the supersolution.  The limit solves the
//! discrete problem exactly; an independent strong-form residual check
//! certifies it.  Exhaustion over growing outer radii quantifies how fast
//! the truncated solutions stabilize on a fixed inner region.

use crate::certify::verify_supersolution_strong;
use crate::cone::{ConeBoundary, ConeOperator, DiscreteField, MatrixGallery};
use crate::exponents::scaling_beta;
use crate::series::MinimalSeries;
use crate::sphere::AngularDomain;
use crate::{Error, Result};
use serde::Serialize;

/// A discrete boundary value problem squeezed between an ordered pair.
///
/// The subsolution doubles as the initial iterate and carries the boundary
/// trace; the supersolution is the ceiling every iterate must respect.
#[derive(Debug)]
pub struct BvpProblem<'a> {
    op: &'a ConeOperator,
    /// Nonlinearity exponent.
    pub p: f64,
    /// Dirichlet data on the two cap rows.
    pub boundary: ConeBoundary,
    /// Initial iterate and pointwise floor.
    pub subsolution: DiscreteField,
    /// Pointwise ceiling.
    pub supersolution: DiscreteField,
    /// Scale factor applied to the requested subsolution to fit under the
    /// ceiling; one when no rescaling was needed.
    pub scale: f64,
}

impl<'a> BvpProblem<'a> {
    /// Wrap explicit fields after validating shapes and the ordering
    /// `subsolution <= supersolution` (slack `1e-10`), including the cap
    /// rows against the boundary data.
    pub fn new(
        op: &'a ConeOperator,
        p: f64,
        subsolution: DiscreteField,
        supersolution: DiscreteField,
        boundary: ConeBoundary,
    ) -> Result<Self> {
        let n = op.domain.dimension as f64;
        if !(p.is_finite() && p > 1.0 && p <= n / (n - 2.0) + 1e-12) {
            return Err(Error::InvalidParameter(format!(
                "the monotone construction needs 1 < p <= N/(N-2) = {}, got {p}",
                n / (n - 2.0)
            )));
        }
        let (n_s, n_theta) = (op.n_s(), op.n_theta());
        for (name, field) in [("subsolution", &subsolution), ("supersolution", &supersolution)] {
            if field.n_s != n_s || field.n_theta != n_theta {
                return Err(Error::InvalidParameter(format!(
                    "{name} shape {}x{} does not match the {n_s}x{n_theta} grid",
                    field.n_s, field.n_theta
                )));
            }
            if field.values.iter().any(|&v| !v.is_finite() || v < 0.0) {
                return Err(Error::NonpositiveField(format!(
                    "{name} must be finite and nonnegative"
                )));
            }
        }
        if boundary.inner.len() != n_theta || boundary.outer.len() != n_theta {
            return Err(Error::InvalidParameter(format!(
                "boundary data must carry {n_theta} angular values per cap"
            )));
        }
        for (&v, &u) in subsolution.values.iter().zip(&supersolution.values) {
            if v > u + 1e-10 {
                return Err(Error::OrderingViolation(format!(
                    "subsolution exceeds the supersolution by {}",
                    v - u
                )));
            }
        }
        Ok(Self {
            op,
            p,
            boundary,
            subsolution,
            supersolution,
            scale: 1.0,
        })
    }

    /// Build the problem the constructive argument uses: boundary data is
    /// the trace of a minimal-solution series, the subsolution is its
    /// discrete harmonic extension, and the ceiling is the separable
    /// supersolution `c r^beta phi_1` certified at the same exponent.
    ///
    /// The harmonic extension satisfies `-L v = 0 <= v^p` exactly on the
    /// grid, so the very first increment is already nonnegative.  The
    /// truncated expansion can undershoot zero slightly near the lateral
    /// boundary; the trace is clamped there.  Both the trace and the
    /// extension are scaled down together when the ceiling requires it;
    /// the factor is recorded.
    pub fn from_series(
        op: &'a ConeOperator,
        series: &MinimalSeries,
        p: f64,
        amplitude: f64,
    ) -> Result<Self> {
        let cert = verify_supersolution_strong(&op.domain, &op.matrix, p, amplitude, op.n_theta())?;
        if !cert.passed() {
            return Err(Error::InvalidParameter(format!(
                "amplitude {amplitude} is not certified at p = {p}: margin {}",
                cert.margin
            )));
        }
        let beta = scaling_beta(p)?;
        let (_, phi1) = op.angular_operator().principal_eigenpair();
        let sup = phi1.iter().fold(0.0_f64, |m, &v| m.max(v.abs()));
        let radii = op.radii();
        let ceiling = DiscreteField::from_fn(op.n_s(), op.n_theta(), |j, i| {
            amplitude * radii[j].powf(beta) * phi1[i] / sup
        });
        let clamp = |row: Vec<f64>| row.into_iter().map(|v| v.max(0.0)).collect();
        let mut boundary = ConeBoundary {
            inner: clamp(series.evaluate_profile(op.r_inner)?),
            outer: clamp(series.evaluate_profile(op.r_outer)?),
        };
        let zero = DiscreteField::zeros(op.n_s(), op.n_theta());
        let lift = op.solve_dirichlet(&zero, &boundary, 0.0)?;
        let mut scale = 1.0f64;
        for (row, r) in [(&boundary.inner, op.r_inner), (&boundary.outer, op.r_outer)] {
            for (i, &g) in row.iter().enumerate() {
                if g > 0.0 {
                    scale = scale.min(amplitude * r.powf(beta) * phi1[i] / sup / g);
                }
            }
        }
        for (v, u) in lift.values.iter().zip(&ceiling.values) {
            if *v > 0.0 {
                scale = scale.min(u / v);
            }
        }
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::DegenerateData(format!(
                "no positive multiple of the series trace fits under the ceiling \
                 (scale collapsed to {scale})"
            )));
        }
        let subsolution = lift.map(|v| (scale * v).max(0.0));
        for g in boundary.inner.iter_mut().chain(boundary.outer.iter_mut()) {
            *g *= scale;
        }
        let mut problem = Self::new(op, p, subsolution, ceiling, boundary)?;
        problem.scale = scale;
        Ok(problem)
    }
}

/// Converged solution with its iteration evidence.
#[derive(Debug, Clone, Serialize)]
pub struct MonotoneSolution {
    /// The converged field.
    pub field: DiscreteField,
    /// Iterations taken.
    pub iterations: usize,
    /// Independent strong-form residual `sup |-L w - w^p|`.
    pub residual: f64,
    /// Shift used in the linear solves.
    pub shift: f64,
    /// Worst monotonicity defect over all iterations (nonpositive values
    /// mean the iterates never decreased).
    pub monotonicity_defect: f64,
    /// Smallest value of `supersolution - w` at convergence.
    pub ceiling_clearance: f64,
    /// Smallest value of `w - subsolution` at convergence.
    pub floor_clearance: f64,
    /// Scale factor inherited from the problem.
    pub scale: f64,
}

/// Run the monotone iteration until the strong-form residual drops below
/// `tol`.
///
/// The mesh must pass the randomized maximum-principle check, since the
/// ordering argument rests on inverse positivity of the shifted operator.
/// Iterates failing monotonicity by more than `1e-12` of the field scale,
/// or exceeding the ceiling by more than `1e-10`, abort with
/// `OrderingViolation`.
pub fn monotone_solve(
    problem: &BvpProblem<'_>,
    tol: f64,
    max_iter: usize,
) -> Result<MonotoneSolution> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "residual tolerance must be positive, got {tol}"
        )));
    }
    let op = problem.op;
    if !op.maximum_principle_check(0xC0FE) {
        return Err(Error::InvalidParameter(
            "grid fails the discrete maximum principle check; \
             the monotone iteration would not be order preserving"
                .into(),
        ));
    }
    let p = problem.p;
    let ceiling_sup = problem.supersolution.sup_norm();
    let shift = 1.1 * p * ceiling_sup.powf(p - 1.0);
    let factors = op.factor_shifted(shift);
    let mono_slack = 1e-12 * (1.0 + ceiling_sup) * (1.0 + shift);
    let mut w = problem.subsolution.clone();
    let mut defect = 0.0f64;
    for iter in 1..=max_iter {
        let source = w.map(|v| v.powf(p) + shift * v);
        let next = op.solve_with_factors(&factors, &source, &problem.boundary)?;
        for (idx, (&new, &old)) in next.values.iter().zip(&w.values).enumerate() {
            if old - new > defect {
                defect = old - new;
            }
            if old - new > mono_slack {
                return Err(Error::OrderingViolation(format!(
                    "iterate {iter} decreased by {} at node {idx}",
                    old - new
                )));
            }
            let cap = problem.supersolution.values[idx];
            if new > cap + 1e-10 {
                return Err(Error::OrderingViolation(format!(
                    "iterate {iter} exceeds the supersolution by {} at node {idx}",
                    new - cap
                )));
            }
        }
        w = next;
        let action = op.apply(&w, &problem.boundary)?;
        let mut residual = 0.0f64;
        for (&lw, &v) in action.values.iter().zip(&w.values) {
            residual = residual.max((lw - v.powf(p)).abs());
        }
        if residual <= tol {
            let mut floor = f64::INFINITY;
            let mut clearance = f64::INFINITY;
            for (idx, &v) in w.values.iter().enumerate() {
                floor = floor.min(v - problem.subsolution.values[idx]);
                clearance = clearance.min(problem.supersolution.values[idx] - v);
            }
            return Ok(MonotoneSolution {
                field: w,
                iterations: iter,
                residual,
                shift,
                monotonicity_defect: defect,
                ceiling_clearance: clearance,
                floor_clearance: floor,
                scale: problem.scale,
            });
        }
    }
    Err(Error::NonConvergence(format!(
        "residual stayed above {tol} after {max_iter} iterations"
    )))
}

/// One truncation level of an exhaustion run.
#[derive(Debug, Clone, Serialize)]
pub struct ExhaustionLevel {
    /// Outer radius after snapping to the shared log lattice.
    pub r_outer: f64,
    /// Iterations the monotone solve took.
    pub iterations: usize,
    /// Final strong-form residual.
    pub residual: f64,
    /// Scale factor applied to the series trace.
    pub scale: f64,
    /// Worst monotonicity defect over the iteration.
    pub monotonicity_defect: f64,
    /// Smallest value of `w - subsolution` at convergence.
    pub floor_clearance: f64,
    /// Smallest value of `supersolution - w` at convergence.
    pub ceiling_clearance: f64,
}

/// Stabilization evidence across an increasing family of truncations.
#[derive(Debug, Clone, Serialize)]
pub struct ExhaustionReport {
    /// Angular domain.
    pub domain: AngularDomain,
    /// Nonlinearity exponent.
    pub p: f64,
    /// Inner radius shared by all levels.
    pub r_inner: f64,
    /// Per-level solve evidence.
    pub levels: Vec<ExhaustionLevel>,
    /// Sup differences between consecutive solutions on the common inner
    /// region.
    pub diffs: Vec<f64>,
    /// Ratios of consecutive differences; below one means stabilizing.
    pub ratios: Vec<f64>,
}

/// Everything an exhaustion run produces: the stabilization report plus
/// the widest-level solution for export.
#[derive(Debug)]
pub struct ExhaustionOutcome {
    /// Stabilization evidence.
    pub report: ExhaustionReport,
    /// Grid of the widest truncation.
    pub final_operator: ConeOperator,
    /// Converged field on that grid.
    pub final_field: DiscreteField,
}

/// Solve the truncated problem on at least three growing outer radii and
/// measure how the solutions stabilize on the common inner region.
///
/// Outer radii are snapped to the log lattice spawned by the inner radius
/// and the node density, so consecutive levels share grid nodes exactly
/// and the stabilization differences are pure nodal comparisons, free of
/// interpolation error.
#[allow(clippy::too_many_arguments)]
pub fn exhaustion_solve(
    domain: &AngularDomain,
    matrix: &MatrixGallery,
    series: &MinimalSeries,
    p: f64,
    amplitude: f64,
    r_inner: f64,
    outer_radii: &[f64],
    nodes_per_decade: usize,
    n_theta: usize,
    tol: f64,
) -> Result<ExhaustionOutcome> {
    if outer_radii.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "exhaustion needs at least three levels, got {}",
            outer_radii.len()
        )));
    }
    if nodes_per_decade == 0 {
        return Err(Error::InvalidParameter(
            "nodes_per_decade must be positive".into(),
        ));
    }
    let delta = std::f64::consts::LN_10 / nodes_per_decade as f64;
    let s0 = r_inner.ln();
    let mut snapped = Vec::with_capacity(outer_radii.len());
    for &r in outer_radii {
        if !(r.is_finite() && r > r_inner) {
            return Err(Error::InvalidParameter(format!(
                "outer radius {r} must exceed the inner radius {r_inner}"
            )));
        }
        let k = ((r.ln() - s0) / delta).round().max(8.0);
        snapped.push((s0 + k * delta).exp());
    }
    for pair in snapped.windows(2) {
        if pair[1] <= pair[0] * (1.0 + 1e-12) {
            return Err(Error::InvalidParameter(
                "outer radii must be strictly increasing after lattice snapping".into(),
            ));
        }
    }
    let mut levels = Vec::with_capacity(snapped.len());
    let mut fields: Vec<DiscreteField> = Vec::with_capacity(snapped.len());
    let mut last: Option<(ConeOperator, DiscreteField)> = None;
    for &r_out in &snapped {
        let op = ConeOperator::new(domain, r_inner, r_out, matrix, nodes_per_decade, n_theta)?;
        let problem = BvpProblem::from_series(&op, series, p, amplitude)?;
        let solved = monotone_solve(&problem, tol, 200_000)?;
        levels.push(ExhaustionLevel {
            r_outer: r_out,
            iterations: solved.iterations,
            residual: solved.residual,
            scale: solved.scale,
            monotonicity_defect: solved.monotonicity_defect,
            floor_clearance: solved.floor_clearance,
            ceiling_clearance: solved.ceiling_clearance,
        });
        fields.push(solved.field.clone());
        last = Some((op, solved.field));
    }
    let n_nodes = (fields.iter().map(|f| f.n_s).min().unwrap() / 2).max(1);
    let mut diffs = Vec::new();
    for pair in fields.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let mut d = 0.0f64;
        for j in 0..n_nodes {
            for i in 0..a.n_theta {
                d = d.max((a.get(j, i) - b.get(j, i)).abs());
            }
        }
        diffs.push(d);
    }
    let ratios = diffs
        .windows(2)
        .map(|w| if w[0] > 0.0 { w[1] / w[0] } else { 0.0 })
        .collect();
    let (final_operator, final_field) = last.unwrap();
    Ok(ExhaustionOutcome {
        report: ExhaustionReport {
            domain: *domain,
            p,
            r_inner,
            levels,
            diffs,
            ratios,
        },
        final_operator,
        final_field,
    })
}

/// Render a solved field as CSV rows `r,theta,w` with a header.
pub fn solution_csv(op: &ConeOperator, field: &DiscreteField) -> Result<String> {
    if field.n_s != op.n_s() || field.n_theta != op.n_theta() {
        return Err(Error::InvalidParameter(format!(
            "field shape {}x{} does not match the {}x{} grid",
            field.n_s,
            field.n_theta,
            op.n_s(),
            op.n_theta()
        )));
    }
    let radii = op.radii();
    let thetas = op.thetas();
    let mut out = String::from("r,theta,w\n");
    for (j, &r) in radii.iter().enumerate() {
        for (i, &t) in thetas.iter().enumerate() {
            out.push_str(&format!("{r:.12e},{t:.12e},{:.12e}\n", field.get(j, i)));
        }
    }
    Ok(out)
}
