//! Closed-form limit quantities for reflected Ornstein-Uhlenbeck processes,
//! together with the Monte Carlo machinery needed to verify them empirically.
//!
//! The process family is the mean-reverting diffusion
//!
//! ```text
//! dX = (alpha - gamma X) dt + sqrt(eps) sigma dB
//! ```
//!
//! optionally constrained to `[0, inf)` (reflected, "ROU") or `[0, d]`
//! (doubly reflected, "DROU") by minimal nondecreasing regulator processes
//! `L` (idleness, lower boundary) and `U` (loss, upper boundary).
//!
//! What lives where:
//!
//! * [`model`] — parameter and path types shared by everything else.
//! * [`reflection`] — deterministic Skorokhod maps on discrete paths.
//! * [`simulate`] — seeded projection-Euler simulation of OU/ROU/DROU.
//! * [`variational`] — small-noise decay rates, most likely paths, and the
//!   action functionals they minimize.
//! * [`stationary`] — long-run loss/idleness rates and CLT variances for the
//!   doubly reflected process, by adaptive quadrature.
//! * [`cumulant`] — the limiting cumulant of the loss process via a shooting
//!   method, and its Legendre transform.
//! * [`estimate`] — statistical verification harness (CLT checks, ergodic
//!   quadratic-variation check, tail estimators with confidence intervals).
//! * [`num`] — numerical kernels (normal distribution, quadrature, ODE
//!   integration, root finding, counter-based random streams).
//!
//! The crate is `no_std`-compatible (requires `alloc`); the `std` feature is
//! on by default and `parallel` adds rayon-based batch replication.

#![cfg_attr(not(feature = "std"), no_std)]
#![warn(missing_docs)]

extern crate alloc;

pub mod cumulant;
pub mod estimate;
pub mod model;
pub mod num;
pub mod reflection;
pub mod simulate;
pub mod stationary;
pub mod variational;

pub use model::{Boundary, DiscretePath, ModelParams, QueryParams, ReflectedTriple};
pub use simulate::{Scheme, SimConfig};


use alloc::string::String;

/// Broad classification of an [`Error`], used by callers (e.g. the CLI) to
/// choose an exit path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// A parameter or precondition violation; the computation never started.
    Validation,
    /// A numerical procedure failed to converge or left its admissible range.
    Numerical,
}

/// Error type shared across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A model assumption or operation precondition is violated.
    #[error("{0}")]
    InvalidParams(String),
    /// Adaptive quadrature failed to reach the requested tolerance.
    #[error("quadrature failed to converge: {0}")]
    Quadrature(String),
    /// The adaptive ODE integrator failed (step underflow or step budget).
    #[error("ode integration failed: {0}")]
    Ode(String),
    /// A root bracket could not be established or refined.
    #[error("root finding failed: {0}")]
    Bracket(String),
    /// The Skorokhod fixed-point iteration did not converge.
    #[error("two-sided reflection did not converge: {0}")]
    Reflection(String),
    /// The cumulant shot left the admissible window (`y(d) <= 0`).
    #[error("shot left admissible window: y({at}) <= 0 for psi = {psi}")]
    NonPositiveShot {
        /// Location where positivity of the transformed solution failed.
        at: f64,
        /// The trial value of the limiting cumulant.
        psi: f64,
    },
}

impl Error {
    /// Whether this is a validation failure or a numerical one.
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidParams(_) => ErrorKind::Validation,
            _ => ErrorKind::Numerical,
        }
    }

    pub(crate) fn invalid(msg: impl core::fmt::Display) -> Self {
        Error::InvalidParams(alloc::format!("{msg}"))
    }
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
