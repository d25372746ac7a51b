//! Open-system simulation of photon blockade driven by a three-body
//! photon–qubit–qubit interaction.
//!
//! The crate provides:
//!
//! - [`hilbert`]: dense operators on truncated tensor-product spaces,
//! - [`dynamics`]: Lindblad generators, steady states, propagation, and
//!   second-order correlation functions,
//! - [`models`]: the driven three-body model and the dual-driven
//!   Jaynes–Cummings model used as blockade benchmarks,
//! - [`analytics`]: closed-form steady-state solutions on the two-excitation
//!   manifold and the interference algebra of the Jaynes–Cummings model,
//! - [`circuit`]: coupling strengths and bias conditions for a
//!   flux-tunable three-junction coupler between two transmons and a
//!   coplanar-waveguide resonator.
//!
//! All rates, detunings, and drive strengths share one unit system (the
//! cavity linewidth is the conventional choice of unit) and ħ = 1.

// Validation uses `!(x > 0.0)` so NaN inputs are rejected along with
// out-of-range ones; `x <= 0.0` would wave NaN through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytics;
mod blas;
pub mod circuit;
pub mod dynamics;
mod error;
pub mod hilbert;
pub mod models;

pub use error::{Error, Result};

/// Numerical tolerances used when validating states and solver output.
///
/// The defaults are fixed at construction time; pass a custom value to the
/// `*_with` entry points to override them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Largest admissible entry of |ρ − ρ†| for a density matrix.
    pub hermiticity: f64,
    /// Largest admissible deviation of Tr ρ from one.
    pub trace: f64,
    /// Most negative admissible density-matrix eigenvalue.
    pub positivity: f64,
    /// Relative residual ‖L·vec(ρ)‖₂ / ‖L‖_F accepted for a steady state.
    pub steady_residual: f64,
    /// Largest admissible trace drift under time evolution.
    pub evolve_trace: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermiticity: 1e-10,
            trace: 1e-10,
            positivity: 1e-8,
            steady_residual: 1e-8,
            evolve_trace: 1e-8,
        }
    }
}
