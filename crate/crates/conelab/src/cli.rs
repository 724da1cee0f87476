//! Command-line front end.
//!
//! Each subcommand wires one pipeline end to end, echoes its resolved
//! configuration in the report, and maps outcomes to exit codes:
//! 0 success (certificates: pass), 1 certificate failed, 2 usage or
//! validation error, 3 numerical non-convergence.  Errors print a
//! machine-readable `{"error": ...}` object.  All randomness flows from
//! explicit seeds, so identical invocations produce identical bytes.

use crate::angular::{refined_lambda1, AngularPotential};
use crate::certify::{
    critical_case_certificate, critical_case_with_epsilon, newtonian_sup_norm,
    nonexistence_certificate, verify_supersolution_strong,
};
use crate::cone::MatrixGallery;
use crate::exponents::{characteristic_roots, critical_exponent};
use crate::radial::{closed_form_residual, decaying_profile, RadialCoefficient};
use crate::report::{self, RunConfig, SweepRow};
use crate::series::{build_series, DEFAULT_MODES};
use crate::solver::{exhaustion_solve, solution_csv};
use crate::sphere::AngularDomain;
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::path::{Path, PathBuf};

/// Parse the process arguments, run the selected pipeline, and return the
/// process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            println!("{}", report::error_json(&err));
            report::exit_code(&err)
        }
    }
}

#[derive(Parser)]
#[command(
    name = "conelab",
    version,
    about = "critical exponents and supersolution certificates on cone-like domains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct DomainArgs {
    /// Ambient dimension N >= 3.
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// Polar cap opening angle in degrees.
    #[arg(long)]
    cap_deg: Option<f64>,
    /// Band limits "LO:HI" in degrees.
    #[arg(long)]
    band_deg: Option<String>,
    /// Use the whole sphere.
    #[arg(long)]
    full_sphere: bool,
}

impl DomainArgs {
    fn resolve(&self) -> Result<AngularDomain> {
        match (self.cap_deg, &self.band_deg, self.full_sphere) {
            (Some(deg), None, false) => AngularDomain::cap(self.dim, deg.to_radians()),
            (None, Some(spec), false) => {
                let (lo, hi) = parse_pair(spec)?;
                AngularDomain::band(self.dim, lo.to_radians(), hi.to_radians())
            }
            (None, None, true) => AngularDomain::full_sphere(self.dim),
            _ => Err(Error::InvalidParameter(
                "choose exactly one of --cap-deg, --band-deg, --full-sphere".into(),
            )),
        }
    }
}

#[derive(Args, Clone)]
struct MatrixArgs {
    /// Matrix field: id, const-d, log-d, or osc-d.
    #[arg(long, default_value = "id")]
    matrix: String,
    /// Radial decay exponent for const-d and log-d.
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Envelope center for osc-d.
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Envelope half-width for osc-d.
    #[arg(long)]
    delta: Option<f64>,
    /// Oscillation frequency for osc-d.
    #[arg(long = "k")]
    k: Option<f64>,
}

impl MatrixArgs {
    fn coefficient(&self, dim: usize) -> Result<RadialCoefficient> {
        let need = |value: Option<f64>, name: &str| {
            value.ok_or_else(|| {
                Error::InvalidParameter(format!("--{name} is required for --matrix {}", self.matrix))
            })
        };
        match self.matrix.as_str() {
            "const-d" => RadialCoefficient::constant(dim, need(self.alpha, "alpha")?),
            "log-d" => RadialCoefficient::log_corrected(dim, need(self.alpha, "alpha")?),
            "osc-d" => RadialCoefficient::oscillating(
                dim,
                need(self.gamma, "gamma")?,
                need(self.delta, "delta")?,
                need(self.k, "k")?,
            ),
            other => Err(Error::InvalidParameter(format!(
                "unknown matrix field '{other}' (expected id, const-d, log-d, osc-d)"
            ))),
        }
    }

    fn resolve(&self, dim: usize, lambda_ref: f64) -> Result<MatrixGallery> {
        if self.matrix == "id" {
            return Ok(MatrixGallery::identity());
        }
        MatrixGallery::radial_angular(self.coefficient(dim)?, lambda_ref)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Principal Dirichlet eigenvalue of the angular domain.
    Eigen {
        #[command(flatten)]
        domain: DomainArgs,
        /// Angular mesh nodes (Richardson refinement doubles this).
        #[arg(long, default_value_t = 800)]
        nodes: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Critical exponent of the angular domain.
    Pstar {
        #[command(flatten)]
        domain: DomainArgs,
        /// Angular mesh nodes (Richardson refinement doubles this).
        #[arg(long, default_value_t = 800)]
        nodes: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decaying radial profile of a coefficient law.
    Radial {
        /// Ambient dimension N >= 3.
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Inner radius of the scan.
        #[arg(long, default_value_t = 10.0)]
        r0: f64,
        /// Outer radius of the scan.
        #[arg(long, default_value_t = 1e4)]
        r1: f64,
        /// Sample points per decade.
        #[arg(long, default_value_t = 200)]
        nodes: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimal-solution series from boundary bump data.
    Series {
        #[command(flatten)]
        domain: DomainArgs,
        /// Modes kept in the expansion.
        #[arg(long = "K", default_value_t = DEFAULT_MODES)]
        modes: usize,
        /// Angular mesh nodes.
        #[arg(long, default_value_t = 800)]
        nodes: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pointwise supersolution certificate for c r^beta phi_1.
    CertifySuper {
        #[command(flatten)]
        domain: DomainArgs,
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Nonlinearity exponent.
        #[arg(long)]
        p: f64,
        /// Candidate amplitude; defaults to half the certified maximum.
        #[arg(long)]
        c: Option<f64>,
        /// Angular mesh nodes.
        #[arg(long, default_value_t = 800)]
        nodes: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Nonexistence certificate from a power lower bound.
    CertifyNonexist {
        #[command(flatten)]
        domain: DomainArgs,
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Nonlinearity exponent.
        #[arg(long)]
        p: f64,
        /// Lower-bound decay exponent; defaults to the domain's decay root.
        #[arg(long = "lower-alpha", allow_negative_numbers = true)]
        lower_alpha: Option<f64>,
        /// Lower-bound constant.
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Angular mesh nodes for the annular eigenproblems.
        #[arg(long, default_value_t = 64)]
        nodes: usize,
        /// Radial nodes per decade for the annular eigenproblems.
        #[arg(long, default_value_t = 32)]
        nodes_per_decade: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Nonexistence certificate at the critical exponent itself.
    CertifyCritical {
        #[command(flatten)]
        domain: DomainArgs,
        /// Indicator-well depth; chosen automatically when omitted.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Angular mesh nodes.
        #[arg(long, default_value_t = 400)]
        nodes: usize,
        /// Radial nodes per decade for the annular eigenproblems.
        #[arg(long, default_value_t = 32)]
        nodes_per_decade: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monotone solve over an exhaustion of truncated cones.
    Solve {
        #[command(flatten)]
        domain: DomainArgs,
        /// Nonlinearity exponent.
        #[arg(long, default_value_t = 3.0)]
        p: f64,
        /// Supersolution amplitude; defaults to half the certified maximum.
        #[arg(long)]
        c: Option<f64>,
        /// Inner truncation radius.
        #[arg(long, default_value_t = 1.0)]
        r_inner: f64,
        /// Outer truncation radii, comma separated, at least three.
        #[arg(long, default_value = "10,30,90")]
        radii: String,
        /// Angular mesh nodes.
        #[arg(long, default_value_t = 64)]
        nodes: usize,
        /// Radial nodes per decade.
        #[arg(long, default_value_t = 32)]
        nodes_per_decade: usize,
        /// Modes kept in the boundary series.
        #[arg(long = "K", default_value_t = DEFAULT_MODES)]
        modes: usize,
        /// Residual tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Write the report here (a CSV of the widest solution lands
        /// next to it) instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Empirical Harnack-type exponent over dyadic annuli.
    Harnack {
        #[command(flatten)]
        domain: DomainArgs,
        /// Base radius of the dyadic family.
        #[arg(long, default_value_t = 1.0)]
        rho: f64,
        /// Dyadic levels, at least three.
        #[arg(long, default_value_t = 3)]
        levels: usize,
        /// Random boundary-data trials per level.
        #[arg(long, default_value_t = 8)]
        trials: usize,
        /// Random seed.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Angular mesh nodes.
        #[arg(long, default_value_t = 64)]
        nodes: usize,
        /// Radial nodes per decade.
        #[arg(long, default_value_t = 32)]
        nodes_per_decade: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sup norm of the Newtonian potential of the log-squared density.
    Gbnorm {
        /// Ambient dimension N >= 3.
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Density amplitude.
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Critical-exponent sweep over cap openings.
    Sweep {
        /// Ambient dimension N >= 3.
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Cap openings "LO:HI:STEP" in degrees.
        #[arg(long, default_value = "30:180:10")]
        cap_deg_range: String,
        /// Angular mesh nodes per eigenvalue.
        #[arg(long, default_value_t = 400)]
        nodes: usize,
        /// Write the CSV here (the JSON summary goes to stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_pair(spec: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 2 {
        return Err(Error::InvalidParameter(format!(
            "expected LO:HI, got '{spec}'"
        )));
    }
    let lo: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad angle '{}'", parts[0])))?;
    let hi: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad angle '{}'", parts[1])))?;
    Ok((lo, hi))
}

fn parse_range(spec: &str) -> Result<(f64, f64, f64)> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidParameter(format!(
            "expected LO:HI:STEP, got '{spec}'"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad number '{s}'")))
        })
        .collect::<Result<_>>()?;
    if !(nums[2] > 0.0 && nums[1] >= nums[0]) {
        return Err(Error::InvalidParameter(format!(
            "range '{spec}' must satisfy LO <= HI with positive STEP"
        )));
    }
    Ok((nums[0], nums[1], nums[2]))
}

fn parse_radii(spec: &str) -> Result<Vec<f64>> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("bad radius '{s}'")))
        })
        .collect()
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Eigen { domain, nodes, out } => {
            let dom = domain.resolve()?;
            let estimate = refined_lambda1(&dom, &AngularPotential::Zero, nodes)?;
            let mut config = RunConfig::new("eigen");
            config.domain = Some(dom);
            config.nodes = Some(nodes);
            emit(out.as_deref(), &report::render(&config, &estimate)?)?;
            Ok(0)
        }
        Command::Pstar { domain, nodes, out } => {
            let dom = domain.resolve()?;
            let estimate = refined_lambda1(&dom, &AngularPotential::Zero, nodes)?;
            let roots = characteristic_roots(estimate.lambda, dom.dimension)?;
            #[derive(Serialize)]
            struct PstarResult {
                estimate: crate::angular::EigenEstimate,
                exponent: crate::exponents::ExponentReport,
            }
            let result = PstarResult {
                exponent: critical_exponent(&roots),
                estimate,
            };
            let mut config = RunConfig::new("pstar");
            config.domain = Some(dom);
            config.nodes = Some(nodes);
            emit(out.as_deref(), &report::render(&config, &result)?)?;
            Ok(0)
        }
        Command::Radial {
            dim,
            matrix,
            r0,
            r1,
            nodes,
            out,
        } => {
            let coeff = matrix.coefficient(dim)?;
            let profile = decaying_profile(&coeff, r0, r1, nodes)?;
            let residual = closed_form_residual(&coeff, r0, r1, nodes)?;
            let exponents = &profile.local_exponents;
            let (lo, hi) = exponents
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &e| {
                    (lo.min(e), hi.max(e))
                });
            #[derive(Serialize)]
            struct RadialResult {
                law: String,
                samples: usize,
                first_exponent: f64,
                last_exponent: f64,
                min_exponent: f64,
                max_exponent: f64,
                closed_form_residual: f64,
            }
            let result = RadialResult {
                law: coeff.tag(),
                samples: profile.len(),
                first_exponent: exponents[0],
                last_exponent: *exponents.last().unwrap(),
                min_exponent: lo,
                max_exponent: hi,
                closed_form_residual: residual,
            };
            let mut config = RunConfig::new("radial");
            config.dimension = Some(dim);
            config.matrix = Some(coeff.tag());
            config.r_inner = Some(r0);
            config.r_outer = Some(r1);
            config.nodes_per_decade = Some(nodes);
            emit(out.as_deref(), &report::render(&config, &result)?)?;
            Ok(0)
        }
        Command::Series {
            domain,
            modes,
            nodes,
            out,
        } => {
            let dom = domain.resolve()?;
            let series = build_series(&dom, &AngularPotential::Zero, None, modes, nodes)?;
            #[derive(Serialize)]
            struct ModeCheck {
                k: usize,
                gradient_sq: f64,
                expected: f64,
            }
            let mut gradient = Vec::new();
            for k in 1..=modes.min(5) {
                let (computed, expected) = series.gradient_norm_check(k)?;
                gradient.push(ModeCheck {
                    k,
                    gradient_sq: computed,
                    expected,
                });
            }
            #[derive(Serialize)]
            struct SeriesResult {
                series: serde_json::Value,
                gradient: Vec<ModeCheck>,
            }
            let result = SeriesResult {
                series: series.to_json(),
                gradient,
            };
            let mut config = RunConfig::new("series");
            config.domain = Some(dom);
            config.modes = Some(modes);
            config.nodes = Some(nodes);
            emit(out.as_deref(), &report::render(&config, &result)?)?;
            Ok(0)
        }
        Command::CertifySuper {
            domain,
            matrix,
            p,
            c,
            nodes,
            out,
        } => {
            let dom = domain.resolve()?;
            let estimate = refined_lambda1(&dom, &AngularPotential::Zero, nodes)?;
            let gallery = matrix.resolve(dom.dimension, estimate.lambda)?;
            let amplitude = match c {
                Some(c) => c,
                None => {
                    let probe = verify_supersolution_strong(&dom, &gallery, p, 1.0, nodes)?;
                    probe.c_max.map(|m| m / 2.0).ok_or_else(|| {
                        Error::Subcritical(format!(
                            "no amplitude works at p = {p}: the gap {} is not positive",
                            probe.gap
                        ))
                    })?
                }
            };
            let cert = verify_supersolution_strong(&dom, &gallery, p, amplitude, nodes)?;
            let mut config = RunConfig::new("certify-super");
            config.domain = Some(dom);
            config.matrix = Some(gallery.tag());
            config.p = Some(p);
            config.c = Some(amplitude);
            config.nodes = Some(nodes);
            let code = if cert.passed() { 0 } else { 1 };
            emit(out.as_deref(), &report::render(&config, &cert)?)?;
            Ok(code)
        }
        Command::CertifyNonexist {
            domain,
            matrix,
            p,
            lower_alpha,
            c,
            nodes,
            nodes_per_decade,
            out,
        } => {
            let dom = domain.resolve()?;
            let estimate = refined_lambda1(&dom, &AngularPotential::Zero, nodes)?;
            let gallery = matrix.resolve(dom.dimension, estimate.lambda)?;
            let alpha = match lower_alpha {
                Some(a) => a,
                None => characteristic_roots(estimate.lambda, dom.dimension)?.alpha_minus,
            };
            let cert = nonexistence_certificate(
                &dom,
                &gallery,
                p,
                alpha,
                c,
                nodes_per_decade,
                nodes,
            )?;
            let mut config = RunConfig::new("certify-nonexist");
            config.domain = Some(dom);
            config.matrix = Some(gallery.tag());
            config.p = Some(p);
            config.alpha = Some(alpha);
            config.c = Some(c);
            config.nodes = Some(nodes);
            config.nodes_per_decade = Some(nodes_per_decade);
            emit(out.as_deref(), &report::render(&config, &cert)?)?;
            Ok(0)
        }
        Command::CertifyCritical {
            domain,
            epsilon,
            nodes,
            nodes_per_decade,
            out,
        } => {
            let dom = domain.resolve()?;
            let cert = match epsilon {
                Some(eps) => critical_case_with_epsilon(&dom, eps, nodes, nodes_per_decade)?,
                None => critical_case_certificate(&dom, nodes, nodes_per_decade)?,
            };
            let mut config = RunConfig::new("certify-critical");
            config.domain = Some(dom);
            config.epsilon = Some(cert.epsilon);
            config.nodes = Some(nodes);
            config.nodes_per_decade = Some(nodes_per_decade);
            emit(out.as_deref(), &report::render(&config, &cert)?)?;
            Ok(0)
        }
        Command::Solve {
            domain,
            p,
            c,
            r_inner,
            radii,
            nodes,
            nodes_per_decade,
            modes,
            tol,
            out,
        } => {
            let dom = domain.resolve()?;
            let outer = parse_radii(&radii)?;
            let gallery = MatrixGallery::identity();
            let amplitude = match c {
                Some(c) => c,
                None => {
                    let probe = verify_supersolution_strong(&dom, &gallery, p, 1.0, nodes)?;
                    probe.c_max.map(|m| m / 2.0).ok_or_else(|| {
                        Error::Subcritical(format!(
                            "no amplitude works at p = {p}: the gap {} is not positive",
                            probe.gap
                        ))
                    })?
                }
            };
            let series = build_series(&dom, &AngularPotential::Zero, None, modes, nodes)?;
            let outcome = exhaustion_solve(
                &dom,
                &gallery,
                &series,
                p,
                amplitude,
                r_inner,
                &outer,
                nodes_per_decade,
                nodes,
                tol,
            )?;
            let mut config = RunConfig::new("solve");
            config.domain = Some(dom);
            config.matrix = Some(gallery.tag());
            config.p = Some(p);
            config.c = Some(amplitude);
            config.r_inner = Some(r_inner);
            config.radii = Some(outer);
            config.nodes = Some(nodes);
            config.nodes_per_decade = Some(nodes_per_decade);
            config.modes = Some(modes);
            config.tol = Some(tol);
            emit(out.as_deref(), &report::render(&config, &outcome.report)?)?;
            if let Some(path) = &out {
                let csv = solution_csv(&outcome.final_operator, &outcome.final_field)?;
                std::fs::write(path.with_extension("csv"), csv)?;
            }
            Ok(0)
        }
        Command::Harnack {
            domain,
            rho,
            levels,
            trials,
            seed,
            nodes,
            nodes_per_decade,
            out,
        } => {
            let dom = domain.resolve()?;
            let inner = dom.default_inner()?;
            let harnack = crate::cone::harnack_exponent(
                &dom,
                &inner,
                &MatrixGallery::identity(),
                rho,
                levels,
                trials,
                nodes_per_decade,
                nodes,
                seed,
            )?;
            let mut config = RunConfig::new("harnack");
            config.domain = Some(dom);
            config.rho = Some(rho);
            config.levels = Some(levels);
            config.trials = Some(trials);
            config.seed = Some(seed);
            config.nodes = Some(nodes);
            config.nodes_per_decade = Some(nodes_per_decade);
            emit(out.as_deref(), &report::render(&config, &harnack)?)?;
            Ok(0)
        }
        Command::Gbnorm { dim, epsilon, out } => {
            let norm = newtonian_sup_norm(dim, epsilon)?;
            let mut config = RunConfig::new("gbnorm");
            config.dimension = Some(dim);
            config.epsilon = Some(epsilon);
            emit(out.as_deref(), &report::render(&config, &norm)?)?;
            Ok(0)
        }
        Command::Sweep {
            dim,
            cap_deg_range,
            nodes,
            out,
        } => {
            let (lo, hi, step) = parse_range(&cap_deg_range)?;
            let mut rows = Vec::new();
            let mut deg = lo;
            while deg <= hi + 1e-9 {
                let dom = AngularDomain::cap(dim, deg.to_radians())?;
                let estimate = refined_lambda1(&dom, &AngularPotential::Zero, nodes)?;
                let roots = characteristic_roots(estimate.lambda, dim)?;
                rows.push(SweepRow {
                    theta_deg: deg,
                    lambda1: estimate.lambda,
                    alpha_minus: roots.alpha_minus,
                    p_star: 1.0 - 2.0 / roots.alpha_minus,
                });
                deg += step;
            }
            let nondecreasing = rows.windows(2).all(|w| w[1].p_star >= w[0].p_star - 1e-12);
            let csv = report::sweep_csv(&rows);
            match &out {
                Some(path) => {
                    std::fs::write(path, &csv)?;
                    #[derive(Serialize)]
                    struct SweepResult {
                        rows: usize,
                        p_star_nondecreasing: bool,
                        csv_path: String,
                    }
                    let mut config = RunConfig::new("sweep");
                    config.dimension = Some(dim);
                    config.range = Some(cap_deg_range.clone());
                    config.nodes = Some(nodes);
                    config.out = Some(path.display().to_string());
                    let result = SweepResult {
                        rows: rows.len(),
                        p_star_nondecreasing: nondecreasing,
                        csv_path: path.display().to_string(),
                    };
                    println!("{}", report::render(&config, &result)?);
                }
                None => print!("{csv}"),
            }
            Ok(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_pairs_and_ranges_parse() {
        assert_eq!(parse_pair("30:60").unwrap(), (30.0, 60.0));
        assert!(parse_pair("30").is_err());
        assert_eq!(parse_range("30:180:10").unwrap(), (30.0, 180.0, 10.0));
        assert!(parse_range("30:180").is_err());
        assert!(parse_range("180:30:10").is_err());
        assert_eq!(parse_radii("10,30,90").unwrap(), vec![10.0, 30.0, 90.0]);
        assert!(parse_radii("10,x").is_err());
    }

    #[test]
    fn domain_args_require_exactly_one_shape() {
        let none = DomainArgs {
            dim: 3,
            cap_deg: None,
            band_deg: None,
            full_sphere: false,
        };
        assert!(none.resolve().is_err());
        let both = DomainArgs {
            dim: 3,
            cap_deg: Some(90.0),
            band_deg: None,
            full_sphere: true,
        };
        assert!(both.resolve().is_err());
        let cap = DomainArgs {
            dim: 3,
            cap_deg: Some(90.0),
            band_deg: None,
            full_sphere: false,
        };
        let dom = cap.resolve().unwrap();
        assert!((dom.theta_range().1 - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn matrix_args_validate_their_parameters() {
        let id = MatrixArgs {
            matrix: "id".into(),
            alpha: None,
            gamma: None,
            delta: None,
            k: None,
        };
        assert!(matches!(
            id.resolve(3, 2.0).unwrap(),
            MatrixGallery::Identity
        ));
        let missing = MatrixArgs {
            matrix: "const-d".into(),
            alpha: None,
            gamma: None,
            delta: None,
            k: None,
        };
        assert!(missing.resolve(3, 2.0).is_err());
        let bad = MatrixArgs {
            matrix: "nope".into(),
            alpha: None,
            gamma: None,
            delta: None,
            k: None,
        };
        assert!(bad.resolve(3, 2.0).is_err());
    }

    #[test]
    fn cli_declares_all_subcommands() {
        use clap::CommandFactory;
        let cmd = Cli::command();
        let names: Vec<String> = cmd
            .get_subcommands()
            .map(|c| c.get_name().to_string())
            .collect();
        for expected in [
            "eigen",
            "pstar",
            "radial",
            "series",
            "certify-super",
            "certify-nonexist",
            "certify-critical",
            "solve",
            "harnack",
            "gbnorm",
            "sweep",
        ] {
            assert!(names.contains(&expected.to_string()), "missing {expected}");
        }
    }

    #[test]
    fn gbnorm_dispatch_writes_a_report() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("gb.json");
        let code = dispatch(Command::Gbnorm {
            dim: 3,
            epsilon: 1.0,
            out: Some(path.clone()),
        })
        .unwrap();
        assert_eq!(code, 0);
        let text = std::fs::read_to_string(&path).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["schema"], 1);
        assert_eq!(doc["config"]["subcommand"], "gbnorm");
        assert!(doc["result"]["epsilon_star"].as_f64().unwrap() > 0.0);
    }
}
