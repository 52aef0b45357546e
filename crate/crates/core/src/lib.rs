//! Numerical toolkit for a four-compartment eco-epidemiological
//! predator-prey model with vaccination and migration in the prey.
//!
//! The prey population is split into susceptible (`S`), infected (`I`) and
//! vaccinated (`V`) classes, preyed on by a predator (`P`) with
//! Lotka-Volterra (bilinear) functional response. Vaccination moves `S -> V`
//! at rate `phi` and wears off `V -> S` at rate `theta`; each prey class has
//! its own predation, conversion, migration and mortality rates, and the
//! infected class carries an extra disease-induced death rate.
//!
//! The crate provides:
//!
//! * [`model`] — right-hand sides and Jacobians of the full 4-D system and
//!   of its disease-free 3-D restriction, plus the Dulac expression and the
//!   boundedness functional used by the qualitative analysis.
//! * [`poly`] — real-coefficient polynomial utilities: companion-matrix
//!   roots, cubic coefficient recovery by interpolation, bracketed scanning.
//! * [`equilibria`] — all equilibria of both systems with existence
//!   verdicts and residual checks.
//! * [`stability`] — characteristic polynomials, Routh-Hurwitz ledgers,
//!   eigenvalue spectra, the basic reproduction number and per-equilibrium
//!   classification.
//! * [`integrate`] — adaptive embedded Runge-Kutta 5(4) integration with
//!   nonnegativity handling, convergence detection and boundedness checks.
//!
//! All operations are pure functions of their inputs; every returned value
//! is immutable, so the toolkit is safe to drive from parallel workers.

pub mod equilibria;
pub mod error;
pub mod integrate;
pub mod model;
pub mod poly;
pub mod stability;

#[cfg(test)]
pub(crate) mod test_params;

pub use error::{Error, Result};
pub use model::{FullState, ModelParams, ReducedState};
