//! Ground states of screened central potentials by a variational fit plus
//! Green-function iterative refinement.
//!
//! The pipeline solves H = -½∇² - e^{-αr}/r (rescaled Yukawa) in two stages:
//!
//! 1. [`variational`] minimizes the energy expectation over the Hulthén
//!    trial family Φ_λ, fixing λ* and the first-order energy E₁.
//! 2. [`iteration`] refines the wavefunction multiplicatively, Ψ = Φ_λ·f,
//!    through nested radial quadratures ([`quadrature`]) of the trial
//!    Green operator, producing E₂, E₃, … with convergence diagnostics.
//!
//! [`oracle`] is an independent shooting-method eigensolver used to validate
//! both stages, and [`potentials`] holds the closed-form ingredients.
//!
//! ```no_run
//! use radix_core::iteration::{solve_ground_state, SolverConfig};
//!
//! let cfg = SolverConfig::default();
//! let (variational, report) = solve_ground_state(0.5, &cfg).unwrap();
//! println!("lambda* = {:.4}", variational.lambda_star);
//! println!("E1 = {:.6}, E2 = {:.6?}", variational.e_1, report.energy(2));
//! ```

pub mod error;
pub mod iteration;
pub mod oracle;
pub mod potentials;
pub mod quadrature;
pub mod variational;

pub use error::{Error, Result};
pub use iteration::{solve_ground_state, IterationReport, SolverConfig, StopReason};
pub use potentials::{HulthenTrial, RadialPotential};
pub use quadrature::{build_grid, GridConfig, GridFunction, RadialGrid};
pub use variational::{minimize_lambda, VariationalResult};
