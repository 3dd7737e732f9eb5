//! One-query Deutsch-Jozsa runs on the two atoms.
//!
//! Atom 1 is the query qubit and atom 2 the target. Both start in
//! `|g⟩₁|e⟩₂`, receive a Hadamard, pass through an oracle, and atom 1 gets a
//! second Hadamard before readout: `|g⟩` means constant, `|e⟩` balanced.

use std::fmt;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::Result;
use crate::gates::{execute_mixture, oracle_schedule, CavityInit, ExecMode, LocalGate, Oracle};
use crate::model::GateConstraints;
use crate::propagator::EvolutionStats;
use crate::qcore::{fidelity_pure, kron, Matrix, MixtureState, Space, StateVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    Constant,
    Balanced,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Constant => "Constant",
            Classification::Balanced => "Balanced",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DJResult {
    pub oracle: Oracle,
    /// Probability of reading atom 1 in `|g⟩`.
    pub p0: f64,
    pub p1: f64,
    pub classification: Classification,
    /// Fidelity of the post-oracle state with the ideal phase-kickback state.
    pub state_fidelity: f64,
    pub stats: EvolutionStats,
}

impl DJResult {
    /// Probability that the readout names the right class.
    pub fn p_correct(&self) -> f64 {
        if self.oracle.is_constant() {
            self.p0
        } else {
            self.p1
        }
    }

    pub fn is_correct(&self) -> bool {
        (self.classification == Classification::Constant) == self.oracle.is_constant()
    }
}

/// `½(|g⟩ + |e⟩)(|g⟩ − |e⟩)` in (gg, ge, eg, ee) order.
pub fn initial_atomic() -> [C64; 4] {
    let h = C64::new(0.5, 0.0);
    [h, -h, h, -h]
}

/// `|g⟩₁|e⟩₂` followed by a Hadamard on each atom, times the cavity input.
///
/// Analytic mode uses the atoms-only space.
pub fn prepare_initial(mode: &ExecMode) -> Result<MixtureState> {
    let hh = kron(&LocalGate::Hadamard.matrix(), &LocalGate::Hadamard.matrix());
    let ge = [
        C64::new(0.0, 0.0),
        C64::new(1.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
    ];
    let atomic = hh.apply(&ge);
    match mode {
        ExecMode::Analytic => Ok(MixtureState::pure(StateVector::with_fock(
            Space::atoms_only(),
            &atomic,
            0,
        )?)),
        ExecMode::Physical(settings) => {
            let space = Space::new(settings.fock_cutoff)?;
            match settings.cavity_init {
                CavityInit::Fock(n) => Ok(MixtureState::pure(StateVector::with_fock(space, &atomic, n)?)),
                CavityInit::Thermal(nbar) => MixtureState::thermal(space, &atomic, nbar, settings.thermal_levels()),
            }
        }
    }
}

/// The phase-kickback map `|x⟩|−⟩ → (−1)^{f(x)} |x⟩|−⟩` restricted to inputs
/// with atom 2 in `|−⟩`: a sign on each atom-1 branch.
fn kickback(oracle: Oracle) -> crate::qcore::Mat4 {
    let (f0, f1) = oracle.truth();
    let sign = |f: u8| C64::new(if f == 0 { 1.0 } else { -1.0 }, 0.0);
    kron(&Matrix::diagonal([sign(f0), sign(f1)]), &Matrix::identity())
}

/// Ideal post-oracle atomic state for `oracle`.
pub fn ideal_post_oracle(oracle: Oracle) -> [C64; 4] {
    kickback(oracle).apply(&initial_atomic())
}

/// Prepares, queries `oracle` once, and reads atom 1.
pub fn run_dj(oracle: Oracle, mode: &ExecMode, constraints: &GateConstraints) -> Result<DJResult> {
    run_dj_on(oracle, &prepare_initial(mode)?, mode, constraints)
}

/// [`run_dj`] from an already prepared input, e.g. a thermal mixture in
/// analytic mode.
pub fn run_dj_on(
    oracle: Oracle,
    input: &MixtureState,
    mode: &ExecMode,
    constraints: &GateConstraints,
) -> Result<DJResult> {
    let schedule = oracle_schedule(oracle, constraints)?;
    let run = execute_mixture(&schedule, input, mode)?;

    let ideal = kickback(oracle);
    let mut state_fidelity = 0.0;
    for ((w, before), (_, after)) in input.components().iter().zip(run.output.components()) {
        let mut target = before.clone();
        target.apply_atomic(&ideal);
        state_fidelity += w * fidelity_pure(&target, after)?;
    }

    let h1 = kron(&LocalGate::Hadamard.matrix(), &Matrix::identity());
    let measured = MixtureState::new(
        run.output
            .into_components()
            .into_iter()
            .map(|(w, mut s)| {
                s.apply_atomic(&h1);
                (w, s)
            })
            .collect(),
    )?;
    let (p0, p1) = measured.atom1_outcome_probs();
    Ok(DJResult {
        oracle,
        p0,
        p1,
        classification: if p0 >= 0.5 {
            Classification::Constant
        } else {
            Classification::Balanced
        },
        state_fidelity: state_fidelity.clamp(0.0, 1.0),
        stats: run.stats,
    })
}
