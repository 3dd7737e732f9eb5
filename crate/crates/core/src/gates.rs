//! Gate alphabet, pulse schedules and their execution.
//!
//! A [`Schedule`] lists steps in chronological order; the equivalent matrix is
//! composed right to left (`U = U_k ⋯ U_2 U_1`). Schedules run either in
//! [`ExecMode::Analytic`], where interaction steps are the exact atomic
//! unitaries of the effective model, or in [`ExecMode::Physical`], where they
//! are integrated under the full interaction Hamiltonian.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    interaction_hamiltonian, solve_gate_params, u_interaction_analytic, GateConstraints, GateTarget, GateTiming, Params,
};
use crate::propagator::{evolve, EvolutionStats, IntegratorSettings};
use crate::qcore::{kron, pauli_x, thermal_levels_for, Atom, Mat2, Mat4, Matrix, MixtureState, StateVector};

/// Discarded thermal population allowed when sizing a thermal cavity input.
pub const THERMAL_TAIL_TOL: f64 = 1e-6;

/// Fock levels required above the highest initially populated one.
pub const FOCK_HEADROOM: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum LocalGate {
    /// |g⟩ → (|g⟩ + |e⟩)/√2, |e⟩ → (|g⟩ − |e⟩)/√2.
    Hadamard,
    PauliX,
    /// Computational-basis Z: |g⟩ → |g⟩, |e⟩ → −|e⟩.
    PauliZ,
    /// |g⟩ → e^{iφ}|e⟩, |e⟩ → −e^{−iφ}|g⟩.
    Ramsey(f64),
}

impl LocalGate {
    pub fn matrix(&self) -> Mat2 {
        let c = |x: f64| C64::new(x, 0.0);
        match *self {
            LocalGate::Hadamard => {
                let h = FRAC_1_SQRT_2;
                Matrix([[c(h), c(h)], [c(h), c(-h)]])
            }
            LocalGate::PauliX => pauli_x(),
            LocalGate::PauliZ => Matrix::diagonal([c(1.0), c(-1.0)]),
            LocalGate::Ramsey(phi) => Matrix([
                [c(0.0), -C64::from_polar(1.0, -phi)],
                [C64::from_polar(1.0, phi), c(0.0)],
            ]),
        }
    }

    pub fn inverse(&self) -> LocalGate {
        match *self {
            LocalGate::Ramsey(phi) => LocalGate::Ramsey((phi + PI).rem_euclid(TAU)),
            other => other,
        }
    }
}

pub fn local_matrix(gate: LocalGate) -> Mat2 {
    gate.matrix()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum PulseStep {
    /// Instantaneous single-atom gate.
    Local { atom: Atom, gate: LocalGate },
    /// Both atoms interact with the cavity under the classical drive.
    Interaction { params: Params, timing: GateTiming },
    /// Atoms detuned far off resonance: nothing happens.
    Idle,
}

impl PulseStep {
    pub fn local(atom: Atom, gate: LocalGate) -> PulseStep {
        PulseStep::Local { atom, gate }
    }

    /// Exact atomic unitary of the step in the effective model.
    pub fn analytic_matrix(&self) -> Result<Mat4> {
        match self {
            PulseStep::Local { atom, gate } => Ok(on_atom(*atom, &gate.matrix())),
            PulseStep::Interaction { params, timing } => u_interaction_analytic(params, timing.t),
            PulseStep::Idle => Ok(Mat4::identity()),
        }
    }

    pub fn inverse(&self) -> PulseStep {
        match *self {
            PulseStep::Local { atom, gate } => PulseStep::Local {
                atom,
                gate: gate.inverse(),
            },
            PulseStep::Interaction { params, timing } => PulseStep::Interaction {
                params,
                timing: timing.reversed(),
            },
            PulseStep::Idle => PulseStep::Idle,
        }
    }
}

fn on_atom(atom: Atom, m: &Mat2) -> Mat4 {
    match atom {
        Atom::First => kron(m, &Matrix::identity()),
        Atom::Second => kron(&Matrix::identity(), m),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    steps: Vec<PulseStep>,
}

impl Schedule {
    pub fn new(steps: Vec<PulseStep>) -> Schedule {
        Schedule { steps }
    }

    pub fn steps(&self) -> &[PulseStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, step: PulseStep) {
        self.steps.push(step);
    }

    /// `self` followed by `next`.
    pub fn then(mut self, next: &Schedule) -> Schedule {
        self.steps.extend_from_slice(&next.steps);
        self
    }

    pub fn interaction_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, PulseStep::Interaction { .. }))
            .count()
    }

    /// Steps reversed and individually inverted.
    pub fn inverse(&self) -> Schedule {
        Schedule {
            steps: self.steps.iter().rev().map(PulseStep::inverse).collect(),
        }
    }

    /// `U_k ⋯ U_1`.
    pub fn analytic_matrix(&self) -> Result<Mat4> {
        self.steps
            .iter()
            .try_fold(Mat4::identity(), |acc, step| Ok(step.analytic_matrix()? * acc))
    }

    /// Line-oriented text form, one step per line.
    ///
    /// ```text
    /// LOCAL <atom> H|X|Z|RAMSEY [phase]
    /// INTERACT <delta> <omega> <t> <N>
    /// IDLE
    /// ```
    ///
    /// Quantities are in units of `g`, so interactions must have `g = 1`.
    pub fn to_text(&self) -> Result<String> {
        let mut out = String::new();
        for step in &self.steps {
            match step {
                PulseStep::Local { atom, gate } => {
                    let name = match gate {
                        LocalGate::Hadamard => "H".to_string(),
                        LocalGate::PauliX => "X".to_string(),
                        LocalGate::PauliZ => "Z".to_string(),
                        LocalGate::Ramsey(phi) => format!("RAMSEY {phi}"),
                    };
                    out.push_str(&format!("LOCAL {} {name}\n", atom.label()));
                }
                PulseStep::Interaction { params, timing } => {
                    if params.g() != 1.0 {
                        return Err(Error::InvalidArgument(format!(
                            "schedule text is in units of g; cannot write g = {}",
                            params.g()
                        )));
                    }
                    out.push_str(&format!(
                        "INTERACT {} {} {} {}\n",
                        params.delta(),
                        params.omega(),
                        timing.t,
                        timing.periods
                    ));
                }
                PulseStep::Idle => out.push_str("IDLE\n"),
            }
        }
        Ok(out)
    }

    /// Parses [`Schedule::to_text`] output. Blank lines and `#` comments are ignored.
    pub fn parse_text(text: &str) -> Result<Schedule> {
        let mut steps = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            steps.push(parse_step(line).map_err(|message| Error::Parse { line: k + 1, message })?);
        }
        Ok(Schedule { steps })
    }
}

impl FromStr for Schedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Schedule> {
        Schedule::parse_text(s)
    }
}

fn parse_step(line: &str) -> std::result::Result<PulseStep, String> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let num = |s: &str, what: &str| -> std::result::Result<f64, String> {
        s.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("invalid {what} '{s}'"))
    };
    match fields.as_slice() {
        ["IDLE"] => Ok(PulseStep::Idle),
        ["LOCAL", atom, rest @ ..] => {
            let label: usize = atom.parse().map_err(|_| format!("invalid atom '{atom}'"))?;
            let atom = Atom::from_label(label).map_err(|e| e.to_string())?;
            let gate = match rest {
                ["H"] => LocalGate::Hadamard,
                ["X"] => LocalGate::PauliX,
                ["Z"] => LocalGate::PauliZ,
                ["RAMSEY"] => LocalGate::Ramsey(0.0),
                ["RAMSEY", phase] => LocalGate::Ramsey(num(phase, "phase")?),
                _ => return Err(format!("unknown local gate '{}'", rest.join(" "))),
            };
            Ok(PulseStep::Local { atom, gate })
        }
        ["INTERACT", delta, omega, t, n] => {
            let params =
                Params::unit_coupling(num(delta, "delta")?, num(omega, "omega")?).map_err(|e| e.to_string())?;
            let t = num(t, "duration")?;
            let n: i64 = n.parse().map_err(|_| format!("invalid period count '{n}'"))?;
            let timing = GateTiming::new(&params, t).map_err(|e| e.to_string())?;
            if timing.periods != n {
                return Err(format!("declared {n} periods but δt/2π = {}", timing.periods));
            }
            Ok(PulseStep::Interaction { params, timing })
        }
        _ => Err(format!("unrecognized step '{line}'")),
    }
}

/// The controlled-phase gate: one interaction realizing `diag(−1, 1, 1, 1)`
/// in the |±±⟩ basis.
pub fn controlled_phase_schedule(constraints: &GateConstraints) -> Result<Schedule> {
    let (params, timing) = solve_gate_params(GateTarget::ControlledPhase, constraints)?;
    Ok(Schedule::new(vec![PulseStep::Interaction { params, timing }]))
}

/// One interaction with `λt = π/4` and `Ωt` a multiple of π.
pub fn epr_schedule(constraints: &GateConstraints) -> Result<Schedule> {
    let (params, timing) = solve_gate_params(GateTarget::EprQuarter, constraints)?;
    Ok(Schedule::new(vec![PulseStep::Interaction { params, timing }]))
}

/// CNOT with atom 1 as control: `X₁, H₁, controlled phase, H₁, X₁, Z₁`.
pub fn cnot_schedule(constraints: &GateConstraints) -> Result<Schedule> {
    let cp = controlled_phase_schedule(constraints)?;
    let one = |gate| PulseStep::local(Atom::First, gate);
    Ok(Schedule::new(vec![one(LocalGate::PauliX), one(LocalGate::Hadamard)])
        .then(&cp)
        .then(&Schedule::new(vec![
            one(LocalGate::Hadamard),
            one(LocalGate::PauliX),
            one(LocalGate::PauliZ),
        ])))
}

/// The four one-bit functions of the Deutsch-Jozsa problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Oracle {
    /// f(0) = f(1) = 0.
    F1,
    /// f(0) = f(1) = 1.
    F2,
    /// f(0) = 0, f(1) = 1.
    F3,
    /// f(0) = 1, f(1) = 0.
    F4,
}

impl Oracle {
    pub const ALL: [Oracle; 4] = [Oracle::F1, Oracle::F2, Oracle::F3, Oracle::F4];

    /// `(f(0), f(1))`.
    pub fn truth(self) -> (u8, u8) {
        match self {
            Oracle::F1 => (0, 0),
            Oracle::F2 => (1, 1),
            Oracle::F3 => (0, 1),
            Oracle::F4 => (1, 0),
        }
    }

    pub fn is_constant(self) -> bool {
        let (a, b) = self.truth();
        a == b
    }

    pub fn index(self) -> usize {
        match self {
            Oracle::F1 => 1,
            Oracle::F2 => 2,
            Oracle::F3 => 3,
            Oracle::F4 => 4,
        }
    }
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.index())
    }
}

impl FromStr for Oracle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Oracle> {
        match s.trim().to_ascii_uppercase().as_str() {
            "F1" => Ok(Oracle::F1),
            "F2" => Ok(Oracle::F2),
            "F3" => Ok(Oracle::F3),
            "F4" => Ok(Oracle::F4),
            other => Err(Error::InvalidArgument(format!("unknown oracle '{other}'"))),
        }
    }
}

/// Pulse program realizing `|x⟩|y⟩ → |x⟩|y ⊕ f(x)⟩`.
pub fn oracle_schedule(which: Oracle, constraints: &GateConstraints) -> Result<Schedule> {
    let ramsey = |phi| PulseStep::local(Atom::First, LocalGate::Ramsey(phi));
    Ok(match which {
        Oracle::F1 => Schedule::new(vec![PulseStep::Idle]),
        Oracle::F2 => {
            let cnot = cnot_schedule(constraints)?;
            cnot.clone()
                .then(&Schedule::new(vec![ramsey(0.0)]))
                .then(&cnot)
                .then(&Schedule::new(vec![ramsey(PI)]))
        }
        Oracle::F3 => cnot_schedule(constraints)?,
        Oracle::F4 => Schedule::new(vec![ramsey(0.0)])
            .then(&cnot_schedule(constraints)?)
            .then(&Schedule::new(vec![ramsey(PI)])),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum CavityInit {
    Fock(usize),
    Thermal(f64),
}

/// Settings for executing interactions by full propagation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalSettings {
    pub cavity_init: CavityInit,
    pub fock_cutoff: usize,
    pub integrator: IntegratorSettings,
    /// Shared relative duration error `ε` of every interaction.
    pub pulse_error: f64,
    /// Relative error of the Rabi frequency.
    pub omega_jitter: f64,
}

impl PhysicalSettings {
    pub fn new(cavity_init: CavityInit, fock_cutoff: usize, integrator: IntegratorSettings) -> Result<Self> {
        let s = PhysicalSettings {
            cavity_init,
            fock_cutoff,
            integrator,
            pulse_error: 0.0,
            omega_jitter: 0.0,
        };
        s.validate()?;
        Ok(s)
    }

    /// Smallest cutoff admissible for `cavity_init`.
    pub fn minimum_cutoff(cavity_init: CavityInit) -> usize {
        match cavity_init {
            CavityInit::Fock(n) => n + FOCK_HEADROOM,
            CavityInit::Thermal(nbar) => thermal_levels_for(nbar, THERMAL_TAIL_TOL) + FOCK_HEADROOM,
        }
    }

    pub fn with_pulse_error(mut self, eps: f64) -> Result<Self> {
        self.pulse_error = eps;
        self.validate()?;
        Ok(self)
    }

    pub fn with_omega_jitter(mut self, jitter: f64) -> Result<Self> {
        self.omega_jitter = jitter;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        self.integrator.validate()?;
        if !(-0.2..=0.2).contains(&self.pulse_error) {
            return Err(Error::InvalidArgument(format!(
                "pulse error must lie in [-0.2, 0.2], got {}",
                self.pulse_error
            )));
        }
        if !(-0.5..=0.5).contains(&self.omega_jitter) {
            return Err(Error::InvalidArgument(format!(
                "omega jitter must lie in [-0.5, 0.5], got {}",
                self.omega_jitter
            )));
        }
        if let CavityInit::Thermal(nbar) = self.cavity_init {
            if !(nbar >= 0.0) || !nbar.is_finite() {
                return Err(Error::InvalidArgument(format!("nbar must be >= 0, got {nbar}")));
            }
        }
        let need = Self::minimum_cutoff(self.cavity_init);
        if self.fock_cutoff < need {
            return Err(Error::InvalidArgument(format!(
                "fock_cutoff {} is too small for {:?}; need at least {need}",
                self.fock_cutoff, self.cavity_init
            )));
        }
        Ok(())
    }

    /// Number of thermal components used for a thermal cavity input.
    pub fn thermal_levels(&self) -> usize {
        match self.cavity_init {
            CavityInit::Fock(n) => n + 1,
            CavityInit::Thermal(nbar) => thermal_levels_for(nbar, THERMAL_TAIL_TOL),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ExecMode {
    Analytic,
    Physical(PhysicalSettings),
}

#[derive(Clone, Debug)]
pub struct Execution<S> {
    pub output: S,
    pub stats: EvolutionStats,
}

/// Runs `schedule` on a pure state.
pub fn execute(schedule: &Schedule, input: &StateVector, mode: &ExecMode) -> Result<Execution<StateVector>> {
    match mode {
        ExecMode::Analytic => {
            let u = schedule.analytic_matrix()?;
            let mut output = input.clone();
            output.apply_atomic(&u);
            Ok(Execution {
                output,
                stats: EvolutionStats::default(),
            })
        }
        ExecMode::Physical(settings) => {
            let out = execute_physical(schedule, input, settings, &settings.integrator)?;
            settings.integrator.check(&out.stats)?;
            Ok(out)
        }
    }
}

/// Runs `schedule` on every component of a mixture.
///
/// Leakage is checked on the mixture as a whole (`Σ wᵢ Lᵢ`).
pub fn execute_mixture(schedule: &Schedule, input: &MixtureState, mode: &ExecMode) -> Result<Execution<MixtureState>> {
    match mode {
        ExecMode::Analytic => {
            let u = schedule.analytic_matrix()?;
            let components = input
                .components()
                .iter()
                .map(|(w, s)| {
                    let mut s = s.clone();
                    s.apply_atomic(&u);
                    (*w, s)
                })
                .collect();
            Ok(Execution {
                output: MixtureState::new(components)?,
                stats: EvolutionStats::default(),
            })
        }
        ExecMode::Physical(settings) => {
            let per_component = settings.integrator.without_leakage_monitor();
            let runs = input
                .components()
                .par_iter()
                .map(|(w, s)| Ok((*w, execute_physical(schedule, s, settings, &per_component)?)))
                .collect::<Result<Vec<_>>>()?;
            let mut stats = EvolutionStats::default();
            let mut components = Vec::with_capacity(runs.len());
            for (w, run) in runs {
                stats.steps += run.stats.steps;
                stats.norm_drift = stats.norm_drift.max(run.stats.norm_drift);
                stats.leakage += w * run.stats.leakage;
                components.push((w, run.output));
            }
            settings.integrator.check(&stats)?;
            Ok(Execution {
                output: MixtureState::new(components)?,
                stats,
            })
        }
    }
}

fn execute_physical(
    schedule: &Schedule,
    input: &StateVector,
    settings: &PhysicalSettings,
    integrator: &IntegratorSettings,
) -> Result<Execution<StateVector>> {
    settings.validate()?;
    if input.space().fock_cutoff() != settings.fock_cutoff {
        return Err(Error::DimensionMismatch {
            expected: 4 * settings.fock_cutoff,
            found: input.space().dim(),
        });
    }
    let mut state = input.clone();
    let mut stats = EvolutionStats::default();
    for step in schedule.steps() {
        match step {
            PulseStep::Local { .. } => state.apply_atomic(&step.analytic_matrix()?),
            PulseStep::Idle => {}
            PulseStep::Interaction { params, timing } => {
                if timing.t < 0.0 {
                    return Err(Error::InvalidArgument(
                        "reversed interactions exist only in analytic mode".into(),
                    ));
                }
                let params = params.with_omega(params.omega() * (1.0 + settings.omega_jitter))?;
                let h = interaction_hamiltonian(&params, state.space());
                let duration = timing.t * (1.0 + settings.pulse_error);
                let out = evolve(&h, &state, 0.0, duration, integrator)?;
                state = out.state;
                stats = stats.then(out.stats);
            }
        }
    }
    Ok(Execution { output: state, stats })
}
