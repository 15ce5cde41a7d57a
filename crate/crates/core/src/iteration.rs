//! Green-function iterative refinement of the variational solution.
//!
//! Starting from f₀ ≡ 1, Δ₀ = 0, each order computes
//!
//! ```text
//! Δ_n = [U f_{n-1}] / [f_{n-1}]          (energy correction)
//! f_n = 1 - D̄ (U - Δ_n) f_{n-1}          (wavefunction deformation)
//! ```
//!
//! with Ψ ≈ Φ_λ·f_n and E_n = E_λ + Δ_n.  Computing Δ_n first makes the
//! source of the Green step bracket-free, [(U - Δ_n) f_{n-1}] = 0, which is
//! exactly the condition under which the outer integrand of D̄ stays finite
//! at the origin; the pairing is therefore fixed and enforced.
//!
//! Convergence is not guaranteed for an arbitrary trial function; the loop
//! watches the residuals |Δ_n - Δ_{n-1}| and reports divergence instead of
//! assuming contraction.

use crate::error::{Error, Result};
use crate::potentials::{HulthenTrial, RadialPotential};
use crate::quadrature::{build_grid, green_apply, weighted_bracket, GridConfig, GridFunction};
use crate::variational::{minimize_lambda, VariationalResult};

/// Solver configuration for [`solve_ground_state`].
#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub grid: GridConfig,
    /// Search interval for the variational parameter.
    pub lambda_bounds: (f64, f64),
    /// Parameter tolerance of the λ minimization.
    pub lambda_tol: f64,
    /// Stop when |Δ_n - Δ_{n-1}| drops below this.
    pub tol_delta: f64,
    /// Hard cap on the iteration order.
    pub max_order: usize,
    /// Run at least this many orders before the tolerance stop applies
    /// (the pointwise tail of f_n converges more slowly than Δ_n).
    pub min_order: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            grid: GridConfig::default(),
            lambda_bounds: (0.02, 1.99),
            lambda_tol: 1e-6,
            tol_delta: 1e-9,
            max_order: 8,
            min_order: 1,
        }
    }
}

/// One order of the iteration.
#[derive(Debug, Clone)]
pub struct IterationState {
    /// Iteration order n (0 is the trial state itself).
    pub order: usize,
    /// Current iterate f_n; f_n(0) = 1 exactly at every order.
    pub f: GridFunction,
    /// Energy correction Δ_n.
    pub delta: f64,
    /// E_n = E_λ + Δ_n (plus any constant shift carried by the base energy).
    pub energy: f64,
}

/// Why the iteration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// |Δ_n - Δ_{n-1}| fell below the tolerance.
    DeltaTol,
    /// The order cap was reached without meeting the tolerance.
    MaxOrder,
    /// Residuals grew for three consecutive orders.
    Divergence,
}

/// Full iteration history with convergence diagnostics.
#[derive(Debug, Clone)]
pub struct IterationReport {
    /// States for n = 0..N; states[0] has f ≡ 1, Δ = 0.
    pub states: Vec<IterationState>,
    /// |Δ_n - Δ_{n-1}| for n = 1..N.
    pub residuals: Vec<f64>,
    pub converged: bool,
    pub stop_reason: StopReason,
}

impl IterationReport {
    pub fn last(&self) -> &IterationState {
        self.states.last().expect("at least the trial state")
    }

    /// Δ at a given order, when that order was reached.
    pub fn delta(&self, order: usize) -> Option<f64> {
        self.states.get(order).map(|s| s.delta)
    }

    /// E_n at a given order, when that order was reached.
    pub fn energy(&self, order: usize) -> Option<f64> {
        self.states.get(order).map(|s| s.energy)
    }
}

/// Relative floor on |[f]| against [|f|] below which the iterate no longer
/// defines a usable weight deformation.
const DEGENERATE_RTOL: f64 = 1e-8;

/// Δ-step: [U f_prev] / [f_prev].
pub fn delta_step(
    trial: &HulthenTrial,
    u: impl Fn(f64) -> f64,
    f_prev: &GridFunction,
    grid: &crate::quadrature::RadialGrid,
) -> Result<f64> {
    let den = weighted_bracket(trial, |r| f_prev.eval(r), grid)?;
    let abs = weighted_bracket(trial, |r| f_prev.eval(r).abs(), grid)?;
    if den.abs() < DEGENERATE_RTOL * abs {
        return Err(Error::DegenerateIterate {
            bracket: den.abs(),
            tol: DEGENERATE_RTOL * abs,
        });
    }
    let num = weighted_bracket(trial, |r| u(r) * f_prev.eval(r), grid)?;
    Ok(num / den)
}

/// f-step: f_n = 1 + D̄-image of (U - Δ_n) f_{n-1}.
///
/// `delta_n` must be the [`delta_step`] value for the same `f_prev` on the
/// same grid; otherwise the source bracket does not vanish and the step is
/// rejected as inconsistent.
pub fn f_step(
    trial: &HulthenTrial,
    u: impl Fn(f64) -> f64,
    delta_n: f64,
    f_prev: &GridFunction,
    grid: &crate::quadrature::RadialGrid,
) -> Result<GridFunction> {
    let h =
        green_apply(trial, |r| (u(r) - delta_n) * f_prev.eval(r), grid).map_err(|e| match e {
            Error::NonZeroSourceBracket { bracket, .. } => Error::StepInconsistency { bracket },
            other => other,
        })?;
    let values = h.values().iter().map(|v| 1.0 + v).collect();
    GridFunction::new(grid, values)
}

/// Core loop: iterates Δ/f steps for a potential difference `u` against the
/// trial, reporting energies as `base_energy + Δ_n`.
///
/// Exposed separately from [`solve_ground_state`] so arbitrary targets
/// (shifted potentials, custom differences) can be driven directly.
pub fn iterate(
    trial: &HulthenTrial,
    u: impl Fn(f64) -> f64,
    base_energy: f64,
    grid: &crate::quadrature::RadialGrid,
    cfg: &SolverConfig,
) -> Result<IterationReport> {
    if cfg.max_order < 1 {
        return Err(Error::InvalidConfig {
            reason: "max_order must be at least 1".into(),
        });
    }
    let mut states = vec![IterationState {
        order: 0,
        f: GridFunction::constant(grid, 1.0),
        delta: 0.0,
        energy: base_energy,
    }];
    let mut residuals = Vec::new();
    let mut growth_streak = 0usize;

    for n in 1..=cfg.max_order {
        let prev = states.last().expect("state 0 present");
        let step = delta_step(trial, &u, &prev.f, grid)
            .and_then(|delta| f_step(trial, &u, delta, &prev.f, grid).map(|f| (delta, f)));
        let (delta, f) = match step {
            Ok(pair) => pair,
            // a blown-up iterate manifests as non-finite samples or a
            // degenerate bracket: report divergence rather than bail
            Err(
                Error::NonFiniteSample { .. }
                | Error::DegenerateIterate { .. }
                | Error::StepInconsistency { .. },
            ) if n > 1 => {
                return Ok(IterationReport {
                    states,
                    residuals,
                    converged: false,
                    stop_reason: StopReason::Divergence,
                });
            }
            Err(e) => return Err(e),
        };

        let residual = (delta - states.last().expect("non-empty").delta).abs();
        states.push(IterationState {
            order: n,
            f,
            delta,
            energy: base_energy + delta,
        });
        let grew = residuals
            .last()
            .is_some_and(|&prev_res| residual > prev_res);
        residuals.push(residual);
        growth_streak = if grew { growth_streak + 1 } else { 0 };

        if growth_streak >= 3 {
            return Ok(IterationReport {
                states,
                residuals,
                converged: false,
                stop_reason: StopReason::Divergence,
            });
        }
        if n >= cfg.min_order && residual < cfg.tol_delta {
            return Ok(IterationReport {
                states,
                residuals,
                converged: true,
                stop_reason: StopReason::DeltaTol,
            });
        }
    }
    Ok(IterationReport {
        states,
        residuals,
        converged: false,
        stop_reason: StopReason::MaxOrder,
    })
}

/// Iterates an explicit target potential against a given trial.
///
/// The grid is built for the trial's λ; energies are E_λ + Δ_n.
pub fn solve_potential(
    target: &RadialPotential,
    trial: &HulthenTrial,
    cfg: &SolverConfig,
) -> Result<IterationReport> {
    target.validate()?;
    let grid = build_grid(trial.lambda(), &cfg.grid)?;
    iterate(
        trial,
        |r| target.minus_trial(trial, r),
        trial.energy(),
        &grid,
        cfg,
    )
}

/// Full pipeline for the Yukawa target: variational fit of λ*, then the
/// Green-function refinement from (f₀ ≡ 1, Δ₀ = 0).
///
/// The report's E₁ coincides with the variational energy by construction.
/// With `max_order = 0`-like behavior use the variational result directly.
pub fn solve_ground_state(
    alpha: f64,
    cfg: &SolverConfig,
) -> Result<(VariationalResult, IterationReport)> {
    let variational = minimize_lambda(alpha, cfg.lambda_bounds, cfg.lambda_tol, &cfg.grid)?;
    let trial = HulthenTrial::new(variational.lambda_star)?;
    let target = RadialPotential::Yukawa { alpha };
    let grid = build_grid(trial.lambda(), &cfg.grid)?;
    let report = iterate(
        &trial,
        |r| target.minus_trial(&trial, r),
        trial.energy(),
        &grid,
        cfg,
    )?;
    Ok((variational, report))
}
