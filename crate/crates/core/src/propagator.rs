//! Fixed-step RK4 integration of `i dψ/dt = H(t) ψ` for sparse, explicitly
//! time-dependent Hamiltonians.
//!
//! The step is derived from an a-priori frequency bound of the Hamiltonian, so
//! runs are deterministic. Every run is monitored for norm drift and for
//! population reaching the top two Fock levels of the truncated cavity.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{MixtureState, Space, SparseOperator, StateVector};

/// Number of Fock levels at the top of the basis watched for leakage.
pub const LEAKAGE_LEVELS: usize = 2;

/// A Hamiltonian that can be applied at any time.
pub trait Hamiltonian: Sync {
    fn space(&self) -> Space;

    /// `out = H(t) · psi`.
    fn apply(&self, t: f64, psi: &[C64], out: &mut [C64]);

    /// Upper bound on the angular frequencies present: spectral radius of
    /// `H(t)` for any `t` plus the fastest explicit time dependence.
    fn frequency_bound(&self) -> f64;
}

/// `amplitude · e^{i·frequency·t}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Oscillation {
    pub amplitude: C64,
    pub frequency: f64,
}

impl Oscillation {
    pub fn constant(amplitude: f64) -> Oscillation {
        Oscillation {
            amplitude: C64::new(amplitude, 0.0),
            frequency: 0.0,
        }
    }

    #[inline]
    pub fn at(&self, t: f64) -> C64 {
        if self.frequency == 0.0 {
            self.amplitude
        } else {
            self.amplitude * C64::from_polar(1.0, self.frequency * t)
        }
    }
}

/// `H(t) = Σ_k c_k(t) · O_k` with oscillating scalar coefficients.
#[derive(Clone, Debug)]
pub struct TimeDependentOperator {
    space: Space,
    terms: Vec<(Oscillation, SparseOperator)>,
}

impl TimeDependentOperator {
    pub fn new(space: Space) -> TimeDependentOperator {
        TimeDependentOperator {
            space,
            terms: Vec::new(),
        }
    }

    pub fn with_term(mut self, coefficient: Oscillation, op: SparseOperator) -> Result<Self> {
        if op.space() != self.space {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: op.space().dim(),
            });
        }
        if coefficient.amplitude != C64::new(0.0, 0.0) && op.nnz() > 0 {
            self.terms.push((coefficient, op));
        }
        Ok(self)
    }

    /// Concatenates the terms of two operators on the same space.
    pub fn plus(mut self, other: TimeDependentOperator) -> Result<Self> {
        for (c, op) in other.terms {
            self = self.with_term(c, op)?;
        }
        Ok(self)
    }

    pub fn terms(&self) -> &[(Oscillation, SparseOperator)] {
        &self.terms
    }

    /// The operator frozen at time `t`.
    pub fn at(&self, t: f64) -> SparseOperator {
        self.terms
            .iter()
            .fold(SparseOperator::zero(self.space), |acc, (c, op)| {
                acc.add(&op.scale(c.at(t))).expect("terms share one space")
            })
    }
}

impl Hamiltonian for TimeDependentOperator {
    fn space(&self) -> Space {
        self.space
    }

    #[inline]
    fn apply(&self, t: f64, psi: &[C64], out: &mut [C64]) {
        out.fill(C64::new(0.0, 0.0));
        for (c, op) in &self.terms {
            op.apply_add(c.at(t), psi, out);
        }
    }

    fn frequency_bound(&self) -> f64 {
        let norm: f64 = self
            .terms
            .iter()
            .map(|(c, op)| c.amplitude.norm() * op.max_row_abs_sum())
            .sum();
        let drive = self.terms.iter().map(|(c, _)| c.frequency.abs()).fold(0.0, f64::max);
        norm + drive
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegratorSettings {
    /// Steps per radian of the fastest frequency: `dt = 1 / (steps_per_radian · bound)`.
    pub steps_per_radian: f64,
    pub unitarity_tol: f64,
    pub leakage_tol: f64,
    /// Off for deliberately truncated comparisons where the top levels are populated.
    pub monitor_leakage: bool,
}

impl Default for IntegratorSettings {
    fn default() -> Self {
        IntegratorSettings {
            steps_per_radian: 20.0,
            unitarity_tol: 1e-6,
            leakage_tol: 1e-6,
            monitor_leakage: true,
        }
    }
}

impl IntegratorSettings {
    pub fn new(steps_per_radian: f64, unitarity_tol: f64, leakage_tol: f64) -> Result<Self> {
        let s = IntegratorSettings {
            steps_per_radian,
            unitarity_tol,
            leakage_tol,
            monitor_leakage: true,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_steps_per_radian(mut self, steps_per_radian: f64) -> Result<Self> {
        self.steps_per_radian = steps_per_radian;
        self.validate()?;
        Ok(self)
    }

    pub fn without_leakage_monitor(mut self) -> Self {
        self.monitor_leakage = false;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.steps_per_radian >= 5.0) || !self.steps_per_radian.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "steps_per_radian must be at least 5, got {}",
                self.steps_per_radian
            )));
        }
        for (name, tol) in [("unitarity_tol", self.unitarity_tol), ("leakage_tol", self.leakage_tol)] {
            if !(tol > 0.0 && tol <= 1e-2) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must lie in (0, 1e-2], got {tol}"
                )));
            }
        }
        Ok(())
    }

    /// Fails if `stats` breaks either monitor.
    pub fn check(&self, stats: &EvolutionStats) -> Result<()> {
        if !(stats.norm_drift <= self.unitarity_tol) {
            return Err(Error::NumericalFailure {
                drift: stats.norm_drift,
                tol: self.unitarity_tol,
            });
        }
        if self.monitor_leakage && !(stats.leakage <= self.leakage_tol) {
            return Err(Error::TruncationFailure {
                leakage: stats.leakage,
                tol: self.leakage_tol,
            });
        }
        Ok(())
    }
}

/// Diagnostics of one or more integrations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EvolutionStats {
    pub steps: usize,
    /// `|‖ψ(t1)‖ − ‖ψ(t0)‖|`; accumulated by summation across runs.
    pub norm_drift: f64,
    /// Largest population seen in the top [`LEAKAGE_LEVELS`] Fock levels.
    pub leakage: f64,
}

impl EvolutionStats {
    /// Stats of two runs applied one after the other.
    pub fn then(self, next: EvolutionStats) -> EvolutionStats {
        EvolutionStats {
            steps: self.steps + next.steps,
            norm_drift: self.norm_drift + next.norm_drift,
            leakage: self.leakage.max(next.leakage),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Evolved {
    pub state: StateVector,
    pub stats: EvolutionStats,
}

/// Step count used by [`evolve`] for the interval `[t0, t1]`.
pub fn step_count<H: Hamiltonian + ?Sized>(h: &H, t0: f64, t1: f64, settings: &IntegratorSettings) -> usize {
    let radians = (t1 - t0) * h.frequency_bound();
    (radians * settings.steps_per_radian).ceil().max(1.0) as usize
}

/// Integrates from `t0` to `t1` and enforces the unitarity and leakage monitors.
pub fn evolve<H: Hamiltonian + ?Sized>(
    h: &H,
    psi0: &StateVector,
    t0: f64,
    t1: f64,
    settings: &IntegratorSettings,
) -> Result<Evolved> {
    settings.validate()?;
    if t1 < t0 {
        return Err(Error::InvalidArgument(format!(
            "integration runs forward only (t0 = {t0}, t1 = {t1})"
        )));
    }
    if t1 == t0 {
        return Ok(Evolved {
            state: psi0.clone(),
            stats: EvolutionStats {
                steps: 0,
                norm_drift: 0.0,
                leakage: leakage(psi0),
            },
        });
    }
    let out = integrate_rk4(h, psi0, t0, t1, step_count(h, t0, t1, settings))?;
    settings.check(&out.stats)?;
    Ok(out)
}

/// Component-wise [`evolve`]; weights are untouched. Leakage is the
/// mixture's top-level population `Σ wᵢ Lᵢ`, norm drift the worst component.
pub fn evolve_mixture<H: Hamiltonian + ?Sized>(
    h: &H,
    mix: &MixtureState,
    t0: f64,
    t1: f64,
    settings: &IntegratorSettings,
) -> Result<(MixtureState, EvolutionStats)> {
    let unmonitored = settings.without_leakage_monitor();
    let mut components = Vec::with_capacity(mix.components().len());
    let mut stats = EvolutionStats::default();
    for (w, psi) in mix.components() {
        let out = evolve(h, psi, t0, t1, &unmonitored)?;
        stats.steps += out.stats.steps;
        stats.norm_drift = stats.norm_drift.max(out.stats.norm_drift);
        stats.leakage += w * out.stats.leakage;
        components.push((*w, out.state));
    }
    settings.check(&stats)?;
    Ok((MixtureState::new(components)?, stats))
}

/// Population in the top [`LEAKAGE_LEVELS`] Fock levels; zero when the basis
/// has no levels below them.
pub fn leakage(psi: &StateVector) -> f64 {
    if psi.space().fock_cutoff() <= LEAKAGE_LEVELS {
        0.0
    } else {
        psi.top_population(LEAKAGE_LEVELS)
    }
}

/// Classical RK4 with exactly `steps` equal steps and no monitor checks.
pub fn integrate_rk4<H: Hamiltonian + ?Sized>(
    h: &H,
    psi0: &StateVector,
    t0: f64,
    t1: f64,
    steps: usize,
) -> Result<Evolved> {
    let space = h.space();
    if psi0.space() != space {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: psi0.space().dim(),
        });
    }
    if steps == 0 {
        return Err(Error::InvalidArgument("RK4 needs at least one step".into()));
    }
    let dim = space.dim();
    let dt = (t1 - t0) / steps as f64;
    let half = 0.5 * dt;
    let minus_i = C64::new(0.0, -1.0);
    let watch = space.fock_cutoff() > LEAKAGE_LEVELS;

    let mut y = psi0.amps().to_vec();
    let mut tmp = vec![C64::new(0.0, 0.0); dim];
    let mut k = vec![C64::new(0.0, 0.0); dim];
    let mut acc = vec![C64::new(0.0, 0.0); dim];
    let mut max_leak = leakage(psi0);
    let norm0 = psi0.norm();

    for step in 0..steps {
        let t = t0 + step as f64 * dt;

        h.apply(t, &y, &mut k);
        for i in 0..dim {
            let ki = minus_i * k[i];
            acc[i] = ki;
            tmp[i] = y[i] + half * ki;
        }
        h.apply(t + half, &tmp, &mut k);
        for i in 0..dim {
            let ki = minus_i * k[i];
            acc[i] += 2.0 * ki;
            tmp[i] = y[i] + half * ki;
        }
        h.apply(t + half, &tmp, &mut k);
        for i in 0..dim {
            let ki = minus_i * k[i];
            acc[i] += 2.0 * ki;
            tmp[i] = y[i] + dt * ki;
        }
        h.apply(t + dt, &tmp, &mut k);
        let sixth = dt / 6.0;
        for i in 0..dim {
            y[i] += sixth * (acc[i] + minus_i * k[i]);
        }

        if watch {
            max_leak = max_leak.max(top_population(&y, space));
        }
    }

    let state = StateVector::from_amplitudes(space, y)?;
    let norm_drift = (state.norm() - norm0).abs();
    Ok(Evolved {
        state,
        stats: EvolutionStats {
            steps,
            norm_drift,
            leakage: max_leak,
        },
    })
}

#[inline]
fn top_population(y: &[C64], space: Space) -> f64 {
    let f = space.fock_cutoff();
    let mut p = 0.0;
    for a in 0..4 {
        for n in f - LEAKAGE_LEVELS..f {
            p += y[a * f + n].norm_sqr();
        }
    }
    p
}
