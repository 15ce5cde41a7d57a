//! Central potentials and the Hulthén trial family.
//!
//! Everything is expressed in rescaled units (ħ = m = g² = 1), in which the
//! Yukawa Hamiltonian reads H = -½∇² - e^{-αr}/r and the Hulthén reference
//! Hamiltonian is H_λ = -½∇² - λe^{-λr}/(1 - e^{-λr}).  The Hulthén ground
//! state
//!
//! ```text
//! Φ_λ(r) = (1 - e^{-λr})/r · e^{-(1 - λ/2) r},   E_λ = -(1 - λ/2)²/2
//! ```
//!
//! is known in closed form and serves as the trial function for both the
//! variational stage and the Green-function iteration.  A bound state exists
//! only for 0 < λ < 2 (E_λ → 0⁻ as λ → 2).
//!
//! Both the Yukawa and the Hulthén potential carry an attractive -1/r core;
//! their difference U(r) is finite on [0, ∞) but naively evaluating it loses
//! ~8 digits near the origin.  Below the threshold [`series_threshold`] all
//! pole-cancelling combinations switch to explicit Taylor forms.

use crate::error::{Error, Result};

/// Radius below which series expansions replace direct evaluation.
///
/// Direct evaluation of (1 - e^{-λr})/r and of the Hulthén/Coulomb pole
/// cancellation is accurate above this point; the Taylor forms used below it
/// are accurate to O(r⁴) and the two branches agree to better than 1e-12
/// relative at the switch.
pub fn series_threshold(lambda: f64) -> f64 {
    1e-3 / lambda.max(1.0)
}

/// Yukawa potential -e^{-αr}/r.
///
/// Requires r > 0 and α ≥ 0.  α = 0 is the Coulomb limit.
pub fn yukawa_eval(alpha: f64, r: f64) -> Result<f64> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(Error::NegativeAlpha { alpha });
    }
    if r.is_nan() || r <= 0.0 {
        return Err(Error::NonPositiveRadius { r });
    }
    Ok(-(-alpha * r).exp() / r)
}

/// Hulthén potential -λe^{-λr}/(1 - e^{-λr}) for 0 < λ < 2.
///
/// Below the series threshold the Taylor form -1/r + λ/2 - λ²r/12 + O(r³)
/// is used; the value at r = 0 itself is -∞ (only the pole-cancelled
/// combination [`potential_difference`] is finite there).
pub fn hulthen_v0(lambda: f64, r: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if r.is_nan() || r < 0.0 {
        return Err(Error::NonPositiveRadius { r });
    }
    if r < series_threshold(lambda) {
        Ok(-1.0 / r + lambda / 2.0 - lambda * lambda * r / 12.0
            + lambda.powi(4) * r.powi(3) / 720.0)
    } else {
        // 1 - e^{-λr} = -expm1(-λr)
        Ok(lambda * (-lambda * r).exp() / (-lambda * r).exp_m1())
    }
}

/// Hulthén ground-state wavefunction Φ_λ(r) = (1 - e^{-λr})/r · e^{-(1-λ/2)r}.
///
/// Φ_λ(0) = λ exactly; the small-r branch expands (1 - e^{-λr})/(λr) in a
/// Taylor series to avoid the 0/0 form.
pub fn trial_phi(lambda: f64, r: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if r.is_nan() || r < 0.0 {
        return Err(Error::NonPositiveRadius { r });
    }
    let envelope = (-(1.0 - lambda / 2.0) * r).exp();
    if r < series_threshold(lambda) {
        let x = lambda * r;
        let poly = 1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0 + x * x * x * x / 120.0;
        Ok(lambda * poly * envelope)
    } else {
        Ok(-(-lambda * r).exp_m1() / r * envelope)
    }
}

/// Hulthén ground-state energy E_λ = -½ + λ/2 - λ²/8 = -(1 - λ/2)²/2.
///
/// Vanishes at the unbinding threshold λ = 2.
pub fn hulthen_energy(lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let beta = 1.0 - lambda / 2.0;
    Ok(-0.5 * beta * beta)
}

/// Pole-cancelled potential difference
/// U(r) = λe^{-λr}/(1 - e^{-λr}) - e^{-αr}/r between the Yukawa target and
/// the Hulthén trial potential.
///
/// The two 1/r poles cancel analytically; near the origin the merged series
/// U(r) = (α - λ/2) + r(λ²/12 - α²/2) + r²α³/6 + O(r³) keeps the
/// cancellation exact.  U is finite and continuous on [0, ∞) and decays to
/// zero at large r.
pub fn potential_difference(lambda: f64, alpha: f64, r: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if alpha.is_nan() || alpha < 0.0 {
        return Err(Error::NegativeAlpha { alpha });
    }
    if r.is_nan() || r < 0.0 {
        return Err(Error::NonPositiveRadius { r });
    }
    Ok(yukawa_minus_hulthen(lambda, alpha, r))
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda < 2.0 {
        Ok(())
    } else {
        Err(Error::LambdaOutOfRange { lambda })
    }
}

/// Unchecked core of [`potential_difference`]; callers guarantee the domain.
fn yukawa_minus_hulthen(lambda: f64, alpha: f64, r: f64) -> f64 {
    if r < series_threshold(lambda).min(1e-3) {
        // hulthen part:  1/r - λ/2 + λ²r/12 - λ⁴r³/720
        // yukawa part:   1/r - α  + α²r/2 - α³r²/6 + α⁴r³/24
        (alpha - lambda / 2.0)
            + r * (lambda * lambda / 12.0 - alpha * alpha / 2.0)
            + r * r * (alpha.powi(3) / 6.0)
            + r * r * r * (-lambda.powi(4) / 720.0 - alpha.powi(4) / 24.0)
    } else {
        lambda * (-lambda * r).exp() / (-(-lambda * r).exp_m1()) - (-alpha * r).exp() / r
    }
}

/// Difference of two Hulthén potentials V_μ - V_λ, stable near the origin.
fn hulthen_minus_hulthen(lambda: f64, mu: f64, r: f64) -> f64 {
    let r_eps = series_threshold(lambda.max(mu));
    if r < r_eps {
        (lambda - mu) / 2.0
            + r * (mu * mu - lambda * lambda) / 12.0
            + r.powi(3) * (lambda.powi(4) - mu.powi(4)) / 720.0
    } else {
        mu * (-mu * r).exp() / (-(-mu * r).exp_m1())
            - lambda * (-lambda * r).exp() / (-(-lambda * r).exp_m1())
    }
}

/// An evaluatable central potential V(r) in rescaled units.
///
/// All supported variants are finite for r > 0; the Yukawa, Hulthén and
/// Coulomb variants carry the attractive Coulomb core r·V(r) → -1 as r → 0
/// and vanish at infinity (Coulomb decays only algebraically).
#[derive(Debug, Clone, PartialEq)]
pub enum RadialPotential {
    /// -e^{-αr}/r with screening α ≥ 0.
    Yukawa { alpha: f64 },
    /// -λe^{-λr}/(1 - e^{-λr}) with 0 < λ < 2.
    Hulthen { lambda: f64 },
    /// -1/r.
    Coulomb,
    /// A base potential shifted by a constant energy offset.
    ShiftedBy {
        base: Box<RadialPotential>,
        offset: f64,
    },
}

impl RadialPotential {
    /// Validates the variant parameters.
    pub fn validate(&self) -> Result<()> {
        match self {
            RadialPotential::Yukawa { alpha } => {
                if *alpha >= 0.0 {
                    Ok(())
                } else {
                    Err(Error::NegativeAlpha { alpha: *alpha })
                }
            }
            RadialPotential::Hulthen { lambda } => check_lambda(*lambda),
            RadialPotential::Coulomb => Ok(()),
            RadialPotential::ShiftedBy { base, .. } => base.validate(),
        }
    }

    /// V(r) for r > 0.
    pub fn eval(&self, r: f64) -> Result<f64> {
        match self {
            RadialPotential::Yukawa { alpha } => yukawa_eval(*alpha, r),
            RadialPotential::Hulthen { lambda } => hulthen_v0(*lambda, r),
            RadialPotential::Coulomb => {
                if r > 0.0 {
                    Ok(-1.0 / r)
                } else {
                    Err(Error::NonPositiveRadius { r })
                }
            }
            RadialPotential::ShiftedBy { base, offset } => Ok(base.eval(r)? + offset),
        }
    }

    /// Pole-cancelled difference V(r) - V₀(r) against the trial potential.
    ///
    /// For every variant the -1/r cores cancel analytically, so the result
    /// is finite on [0, ∞).  A Hulthén target with the trial's own λ gives
    /// exactly zero.
    pub fn minus_trial(&self, trial: &HulthenTrial, r: f64) -> f64 {
        let lambda = trial.lambda();
        match self {
            RadialPotential::Yukawa { alpha } => yukawa_minus_hulthen(lambda, *alpha, r),
            RadialPotential::Coulomb => yukawa_minus_hulthen(lambda, 0.0, r),
            RadialPotential::Hulthen { lambda: mu } => {
                if *mu == lambda {
                    0.0
                } else {
                    hulthen_minus_hulthen(lambda, *mu, r)
                }
            }
            RadialPotential::ShiftedBy { base, offset } => base.minus_trial(trial, r) + offset,
        }
    }
}

/// Hulthén trial family member with screening parameter 0 < λ < 2.
///
/// Bundles the wavefunction Φ_λ, its potential V₀, the exact energy E_λ and
/// the quadrature weight Φ_λ²r² used by every bracket integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HulthenTrial {
    lambda: f64,
}

impl HulthenTrial {
    pub fn new(lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Φ_λ(r); infallible because the parameter is validated on construction.
    pub fn phi(&self, r: f64) -> f64 {
        trial_phi(self.lambda, r).expect("validated on construction")
    }

    /// The trial potential V₀(r).
    pub fn v0(&self, r: f64) -> f64 {
        hulthen_v0(self.lambda, r).expect("validated on construction")
    }

    /// E_λ = -(1 - λ/2)²/2.
    pub fn energy(&self) -> f64 {
        let beta = 1.0 - self.lambda / 2.0;
        -0.5 * beta * beta
    }

    /// Quadrature weight W(r) = Φ_λ²(r) r² = (1 - e^{-λr})² e^{-(2-λ)r}.
    ///
    /// Stable for all r ≥ 0 (no pole, no cancellation).
    pub fn weight(&self, r: f64) -> f64 {
        let s = (-self.lambda * r).exp_m1();
        s * s * (-(2.0 - self.lambda) * r).exp()
    }

    /// ln W(r), usable when W itself would underflow.
    pub fn ln_weight(&self, r: f64) -> f64 {
        2.0 * (-(-self.lambda * r).exp_m1()).ln() - (2.0 - self.lambda) * r
    }

    /// Decay rate 2 - λ of the weight's exponential tail.
    pub fn decay_rate(&self) -> f64 {
        2.0 - self.lambda
    }
}
