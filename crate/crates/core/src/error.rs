use thiserror::Error;

/// Errors produced by the solver stack.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("radius must be positive, got r = {r}")]
    NonPositiveRadius { r: f64 },

    #[error("screening parameter lambda = {lambda} is outside the bound-state range (0, 2)")]
    LambdaOutOfRange { lambda: f64 },

    #[error("screening parameter alpha = {alpha} must be non-negative")]
    NegativeAlpha { alpha: f64 },

    #[error("non-finite integrand sample at r = {r}")]
    NonFiniteSample { r: f64 },

    #[error("radius {rp} lies outside the grid range [0, {r_max}]")]
    RadiusOutsideGrid { rp: f64, r_max: f64 },

    #[error("source bracket must vanish: |[g]| = {bracket:e} exceeds tolerance {tol:e}")]
    NonZeroSourceBracket { bracket: f64, tol: f64 },

    #[error(
        "no interior minimum on [{lo}, {hi}]: objective is monotone \
         (f(lo) = {f_lo}, f(hi) = {f_hi})"
    )]
    NoInteriorMinimum {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("degenerate iterate: |[f]| = {bracket:e} is below {tol:e} * [|f|]")]
    DegenerateIterate { bracket: f64, tol: f64 },

    #[error(
        "delta/grid pairing is inconsistent in the iteration step: |[g]| = {bracket:e} \
         (delta and f must come from the same grid)"
    )]
    StepInconsistency { bracket: f64 },

    #[error("energy bracket [{e_lo}, {e_hi}] does not bracket a bound state")]
    NoBoundState { e_lo: f64, e_hi: f64 },

    #[error("invalid configuration: {reason}")]
    InvalidConfig { reason: String },

    #[error("grid node count mismatch: expected {expected}, got {got}")]
    NodeCountMismatch { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
