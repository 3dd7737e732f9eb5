//! Simulation of two classically driven two-level atoms crossing a detuned
//! cavity mode, and of the Deutsch-Jozsa protocol built on their effective
//! interaction.
//!
//! Everything is expressed in units of the atom-cavity coupling `g` (times in
//! `1/g`). Dynamics are simulated in the interaction picture, where the
//! Hamiltonian is
//!
//! ```text
//! H_I(t) = Σ_j [ Ω (σ_j⁺ + σ_j⁻) + g (e^{-iδt} a† σ_j⁻ + e^{iδt} a σ_j⁺) ]
//! ```
//!
//! Modules, bottom-up:
//!
//! - [`qcore`]: states, sparse operators, fidelities, thermal ensembles.
//! - [`model`]: Hamiltonians, the closed-form effective evolution and the gate
//!   parameter solver.
//! - [`propagator`]: fixed-step RK4 integration with unitarity and truncation
//!   monitors.
//! - [`gates`]: local gates, schedules, CNOT and the four oracles.
//! - [`djrunner`]: end-to-end Deutsch-Jozsa runs.
//! - [`experiments`]: fidelity sweeps and reports.
//! - [`verify`]: the quick invariant suite behind `djsim verify`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod djrunner;
pub mod error;
pub mod experiments;
pub mod gates;
pub mod model;
pub mod propagator;
pub mod qcore;
pub mod verify;

pub use error::{Error, Result};
