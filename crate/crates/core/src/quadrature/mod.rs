//! Radial mesh, weighted brackets and the Green-operator quadratures.
//!
//! Every energy in the method is a ratio of brackets
//!
//! ```text
//! [F] = ∫₀^∞ Φ_λ²(r) F(r) r² dr
//! ```
//!
//! and the Green operator applied to a source g is the nested quadrature
//!
//! ```text
//! (D̄ g)(r) = -2 ∫₀^r Φ_λ^{-2}(r') r'^{-2} dr' ∫_{r'}^∞ Φ_λ²(r'') g(r'') r''² dr''
//! ```
//!
//! The mesh is a sequence of panels whose width grows geometrically away
//! from the origin, each carrying a fixed-order Gauss-Legendre rule; the
//! truncation radius is chosen from the exponential decay of the weight
//! Φ_λ²r².  The inner integral is assembled from per-panel integrals so that
//! the cancellation [(U-Δ)f] = 0 enforced by the energy step is inherited
//! exactly — this keeps the outer integrand O(r') at the origin instead of
//! O(1/r').

mod spline;

pub use spline::GridFunction;

use crate::error::{Error, Result};
use crate::potentials::HulthenTrial;

/// Mesh-construction parameters.
#[derive(Debug, Clone)]
pub struct GridConfig {
    /// Tail cutoff: r_max satisfies Φ²r²(r_max) = eps_tail · max(Φ²r²).
    pub eps_tail: f64,
    /// Gauss-Legendre order per panel (≥ 4).
    pub points_per_panel: usize,
    /// Width of the first panel at the origin.
    pub first_panel: f64,
    /// Geometric growth factor of panel widths.
    pub growth: f64,
    /// Width cap for panels in the far tail.
    pub max_panel: f64,
    /// Safety factor applied to the solved truncation radius.
    pub pad: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            eps_tail: 1e-14,
            points_per_panel: 16,
            first_panel: 1e-2,
            growth: 1.12,
            max_panel: 0.25,
            pad: 1.05,
        }
    }
}

/// Panelized radial mesh on [0, r_max].
///
/// Panel boundaries are the grid nodes; node density increases geometrically
/// toward r = 0.  The reference Gauss-Legendre rule is stored once and
/// mapped affinely onto each panel.
#[derive(Debug, Clone)]
pub struct RadialGrid {
    nodes: Vec<f64>,
    gl_nodes: Vec<f64>,
    gl_weights: Vec<f64>,
}

impl RadialGrid {
    /// Ordered panel boundaries r_0 = 0 < r_1 < … < r_M = r_max.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn r_max(&self) -> f64 {
        *self.nodes.last().expect("non-empty")
    }

    pub fn panel_count(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn points_per_panel(&self) -> usize {
        self.gl_nodes.len()
    }

    /// Gauss-Legendre integral of `f` over [a, b].
    fn panel_integral(&self, a: f64, b: f64, f: &mut dyn FnMut(f64) -> f64) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = 0.0;
        for (&x, &w) in self.gl_nodes.iter().zip(&self.gl_weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }

    /// Plain integral ∫₀^{r_max} f(r) dr over the grid panels.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        let mut sum = Kahan::default();
        for p in 0..self.panel_count() {
            sum.add(self.panel_integral(self.nodes[p], self.nodes[p + 1], &mut f));
        }
        sum.value()
    }

    /// Panel index containing `rp` (boundaries resolve to the right panel,
    /// except r_max which belongs to the last).
    fn panel_of(&self, rp: f64) -> usize {
        match self
            .nodes
            .binary_search_by(|x| x.partial_cmp(&rp).expect("finite"))
        {
            Ok(i) => i.min(self.panel_count() - 1),
            Err(ins) => ins - 1,
        }
    }
}

/// Builds the mesh for the weight Φ_λ²r².
///
/// The truncation radius solves Φ²r²(r_max) = eps_tail · peak on the decaying
/// side of the weight and scales like 1/(2-λ) as λ → 2.
pub fn build_grid(lambda: f64, cfg: &GridConfig) -> Result<RadialGrid> {
    let trial = HulthenTrial::new(lambda)?;
    if cfg.eps_tail.is_nan() || cfg.eps_tail <= 0.0 {
        return Err(Error::InvalidConfig {
            reason: format!("eps_tail must be positive, got {}", cfg.eps_tail),
        });
    }
    if cfg.points_per_panel < 4 {
        return Err(Error::InvalidConfig {
            reason: format!(
                "points_per_panel must be at least 4, got {}",
                cfg.points_per_panel
            ),
        });
    }
    let spacing_ok = cfg.growth > 1.0 && cfg.first_panel > 0.0 && cfg.max_panel >= cfg.first_panel;
    if !spacing_ok {
        return Err(Error::InvalidConfig {
            reason: "panel spacing parameters must satisfy growth > 1, \
                     0 < first_panel <= max_panel"
                .into(),
        });
    }

    // peak of W(t) = (1-t)² t^{(2-λ)/λ} at t* = (2-λ)/(2+λ), t = e^{-λr}
    let t_star = (2.0 - lambda) / (2.0 + lambda);
    let r_star = -t_star.ln() / lambda;
    let w_peak = trial.weight(r_star);
    let target = cfg.eps_tail * w_peak;

    // bisect W(r) = target on the decaying side
    let kappa = trial.decay_rate();
    let mut lo = r_star;
    let mut hi = r_star + 2.0 * ((1.0 / cfg.eps_tail).ln() + 10.0) / kappa;
    debug_assert!(trial.weight(hi) < target);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if trial.weight(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-9 {
            break;
        }
    }
    let r_max = 0.5 * (lo + hi) * cfg.pad;

    let mut nodes = vec![0.0];
    let mut h = cfg.first_panel;
    while *nodes.last().expect("non-empty") < r_max {
        let next = nodes.last().expect("non-empty") + h;
        nodes.push(next);
        h = (h * cfg.growth).min(cfg.max_panel);
    }
    *nodes.last_mut().expect("non-empty") = r_max;
    // guard against a sliver last panel created by the clamp
    let m = nodes.len();
    if m >= 3 && nodes[m - 1] - nodes[m - 2] < 0.25 * (nodes[m - 2] - nodes[m - 3]) {
        nodes.remove(m - 2);
    }

    let (gl_nodes, gl_weights) = gauss_legendre(cfg.points_per_panel);
    Ok(RadialGrid {
        nodes,
        gl_nodes,
        gl_weights,
    })
}

/// Weighted bracket [F] = ∫₀^{r_max} Φ²(r) F(r) r² dr.
///
/// Per-panel fixed-order quadrature, compensated panel summation.  Any
/// non-finite sample aborts with the offending radius.
pub fn weighted_bracket(
    trial: &HulthenTrial,
    mut f: impl FnMut(f64) -> f64,
    grid: &RadialGrid,
) -> Result<f64> {
    let sums = panel_sums(trial, &mut f, grid)?;
    Ok(sums.full)
}

/// Per-panel integrals of Φ²·g·r² reduced to prefix/suffix accumulations.
struct PanelSums {
    /// prefix[p] = Σ_{q<p} S_q (compensated), prefix[P] = full
    prefix: Vec<f64>,
    /// suffix[p] = Σ_{q>=p} S_q summed from the far end (compensated)
    suffix: Vec<f64>,
    /// full bracket, identical to prefix[P]
    full: f64,
    /// Σ|S_p|, the scale against which cancellation is judged
    abs_scale: f64,
}

fn panel_sums(
    trial: &HulthenTrial,
    f: &mut dyn FnMut(f64) -> f64,
    grid: &RadialGrid,
) -> Result<PanelSums> {
    let panels = grid.panel_count();
    let mut s = Vec::with_capacity(panels);
    let mut bad: Option<f64> = None;
    for p in 0..panels {
        let sp = grid.panel_integral(grid.nodes[p], grid.nodes[p + 1], &mut |r| {
            let v = trial.weight(r) * f(r);
            if !v.is_finite() && bad.is_none() {
                bad = Some(r);
            }
            v
        });
        if let Some(r) = bad {
            return Err(Error::NonFiniteSample { r });
        }
        s.push(sp);
    }
    let mut prefix = Vec::with_capacity(panels + 1);
    let mut acc = Kahan::default();
    prefix.push(0.0);
    for &sp in &s {
        acc.add(sp);
        prefix.push(acc.value());
    }
    let full = acc.value();
    let mut suffix = vec![0.0; panels + 1];
    let mut acc = Kahan::default();
    for p in (0..panels).rev() {
        acc.add(s[p]);
        suffix[p] = acc.value();
    }
    let abs_scale = s.iter().map(|x| x.abs()).sum();
    Ok(PanelSums {
        prefix,
        suffix,
        full,
        abs_scale,
    })
}

/// Tail integral ∫_{rp}^{r_max} Φ² g r² dr computed as `full` minus the head
/// on the shared panel decomposition.
///
/// `full` must be the value of [`weighted_bracket`] for the same `g` and
/// grid; the panel containing `rp` is split and re-integrated, complete
/// panels reuse their stored integrals.  This guarantees `inner_tail(0) ==
/// full` exactly and `inner_tail(r_max) == 0` exactly.
pub fn inner_tail(
    trial: &HulthenTrial,
    mut g: impl FnMut(f64) -> f64,
    rp: f64,
    grid: &RadialGrid,
    full: f64,
) -> Result<f64> {
    if !(0.0..=grid.r_max()).contains(&rp) {
        return Err(Error::RadiusOutsideGrid {
            rp,
            r_max: grid.r_max(),
        });
    }
    let sums = panel_sums(trial, &mut g, grid)?;
    let q = grid.panel_of(rp);
    let partial = if rp > grid.nodes[q] {
        grid.panel_integral(grid.nodes[q], rp, &mut |r| trial.weight(r) * g(r))
    } else {
        0.0
    };
    let mut head = Kahan::with_value(sums.prefix[q]);
    head.add(partial);
    Ok(full - head.value())
}

/// Applies the Green operator to the source g, returning node samples of
///
/// ```text
/// h(r) = -2 ∫₀^r Φ^{-2}(r') r'^{-2} · tail_g(r') dr',    h(0) = 0
/// ```
///
/// where tail_g(r') = ∫_{r'}^∞ Φ² g r''² dr''.  The source must satisfy
/// [g] = 0 to quadrature tolerance — only then is tail_g(r') = O(r'³) at the
/// origin and the outer integrand finite; violations are rejected.
///
/// Inside each outer panel the tail is taken as the compensated suffix sum
/// of the stored panel integrals plus a sub-panel remainder, which keeps it
/// accurate relative to the local weight even when the forward difference
/// `full - head` would be dominated by round-off of the bulk panels.
pub fn green_apply(
    trial: &HulthenTrial,
    mut g: impl FnMut(f64) -> f64,
    grid: &RadialGrid,
) -> Result<GridFunction> {
    let sums = panel_sums(trial, &mut g, grid)?;
    let tol = GREEN_BRACKET_RTOL * sums.abs_scale;
    if sums.full.abs() > tol && sums.abs_scale > 0.0 {
        return Err(Error::NonZeroSourceBracket {
            bracket: sums.full.abs(),
            tol,
        });
    }

    let panels = grid.panel_count();
    let order = grid.points_per_panel();
    let mut h = Vec::with_capacity(panels + 1);
    h.push(0.0);
    let mut acc = Kahan::default();
    for q in 0..panels {
        let (a, b) = (grid.nodes[q], grid.nodes[q + 1]);
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut panel_acc = 0.0;
        for j in 0..order {
            let rho = mid + half * grid.gl_nodes[j];
            // tail(rho) = Σ_{p>q} S_p + ∫_rho^b Φ² g r²
            let rest = grid.panel_integral(rho, b, &mut |r| trial.weight(r) * g(r));
            let tail = sums.suffix[q + 1] + rest;
            let w = trial.weight(rho);
            let outer = if w > f64::MIN_POSITIVE {
                -2.0 * tail / w
            } else {
                // log-space fallback for an underflowing weight deep in the tail
                let magnitude = (tail.abs().ln() - trial.ln_weight(rho)).exp();
                -2.0 * magnitude * tail.signum()
            };
            if !outer.is_finite() {
                return Err(Error::NonFiniteSample { r: rho });
            }
            panel_acc += grid.gl_weights[j] * outer;
        }
        acc.add(panel_acc * half);
        h.push(acc.value());
    }
    GridFunction::new(grid, h)
}

/// Relative tolerance on |[g]| / Σ|S_p| accepted by [`green_apply`].
const GREEN_BRACKET_RTOL: f64 = 1e-8;

/// Compensated (Kahan-Neumaier) accumulator.
#[derive(Debug, Clone, Copy, Default)]
struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    fn with_value(v: f64) -> Self {
        Self { sum: v, comp: 0.0 }
    }

    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * d * d);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
