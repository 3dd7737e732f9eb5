//! Hamiltonians of the driven two-atom cavity system, the closed-form
//! effective evolution, and the solver for gate parameters.
//!
//! In the basis `|±⟩ = (|g⟩ ± |e⟩)/√2` the drive `H₀ = Ω Σ_j σ_x,j = 2Ω σ_x`
//! is diagonal, with `σ_x = ½ Σ_j (σ_j⁺ + σ_j⁻)` the collective operator of
//! eigenvalues `s ∈ {+1, 0, 0, −1}` on `|++⟩, |+−⟩, |−+⟩, |−−⟩`. Dropping the
//! terms that oscillate at `2Ω` leaves
//!
//! ```text
//! H_e(t) = g (e^{-iδt} a† + e^{iδt} a) σ_x
//! U_e(t) = e^{-iA σ_x²} e^{-iB σ_x a} e^{-iC σ_x a†}
//! ```
//!
//! Whenever `δt = 2πN` the cavity factors vanish (`B = C = 0`) and the full
//! evolution reduces to the purely atomic
//! `U_I = exp(-i2Ω σ_x t − i2λ σ_x² t)`, `λ = g²/(2δ)`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI, TAU};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::propagator::{Oscillation, TimeDependentOperator};
use crate::qcore::{
    annihilation, creation, embed_atom, embed_atomic, sigma_minus, sigma_plus, Atom, Mat4, Matrix, Space,
    SparseOperator,
};

/// Tolerance on `δt = 2πN`, relative to `max(1, |N|)`.
pub const PERIOD_TOL: f64 = 1e-9;

/// Physical parameters in units of `g`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    g: f64,
    delta: f64,
    omega: f64,
}

impl Params {
    pub fn new(g: f64, delta: f64, omega: f64) -> Result<Params> {
        if !g.is_finite() || g < 0.0 {
            return Err(Error::InvalidArgument(format!("g must be finite and >= 0, got {g}")));
        }
        if !delta.is_finite() || delta == 0.0 {
            return Err(Error::InvalidArgument(format!(
                "detuning must be finite and nonzero, got {delta}"
            )));
        }
        if !omega.is_finite() || omega < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "Rabi frequency must be finite and >= 0, got {omega}"
            )));
        }
        Ok(Params { g, delta, omega })
    }

    /// `g = 1`.
    pub fn unit_coupling(delta: f64, omega: f64) -> Result<Params> {
        Params::new(1.0, delta, omega)
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// `λ = g² / (2δ)`.
    pub fn lambda(&self) -> f64 {
        self.g * self.g / (2.0 * self.delta)
    }

    pub fn with_omega(&self, omega: f64) -> Result<Params> {
        Params::new(self.g, self.delta, omega)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AbcCoefficients {
    pub a: C64,
    pub b: C64,
    pub c: C64,
}

/// Closed-form coefficients of the disentangled effective evolution:
///
/// ```text
/// A = g²[t + (e^{-iδt} − 1)/(iδ)]/δ,  B = g(e^{iδt} − 1)/(iδ),  C = −g(e^{-iδt} − 1)/(iδ)
/// ```
pub fn abc_coefficients(g: f64, delta: f64, t: f64) -> Result<AbcCoefficients> {
    if delta == 0.0 || !delta.is_finite() {
        return Err(Error::InvalidArgument(
            "abc coefficients are singular at zero detuning".into(),
        ));
    }
    let i_delta = C64::new(0.0, delta);
    let fwd = C64::from_polar(1.0, delta * t) - 1.0;
    let back = C64::from_polar(1.0, -delta * t) - 1.0;
    Ok(AbcCoefficients {
        a: g * g * (t + back / i_delta) / delta,
        b: g * fwd / i_delta,
        c: -g * back / i_delta,
    })
}

/// Interaction duration with its derived phases.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateTiming {
    pub t: f64,
    /// `N` in `δt = 2πN`. Negative for reversed (adjoint) steps.
    pub periods: i64,
    pub lambda_t: f64,
    pub omega_t: f64,
}

impl GateTiming {
    /// Timing for duration `t`; fails unless `δt` is a whole number of periods.
    pub fn new(params: &Params, t: f64) -> Result<GateTiming> {
        let periods = whole_periods(params.delta(), t)?;
        Ok(GateTiming {
            t,
            periods,
            lambda_t: params.lambda() * t,
            omega_t: params.omega() * t,
        })
    }

    pub fn from_periods(params: &Params, periods: i64) -> Result<GateTiming> {
        GateTiming::new(params, TAU * periods as f64 / params.delta())
    }

    /// The same step run backwards.
    pub fn reversed(&self) -> GateTiming {
        GateTiming {
            t: -self.t,
            periods: -self.periods,
            lambda_t: -self.lambda_t,
            omega_t: -self.omega_t,
        }
    }
}

fn whole_periods(delta: f64, t: f64) -> Result<i64> {
    let turns = delta * t / TAU;
    let n = turns.round();
    if !turns.is_finite() || (turns - n).abs() > PERIOD_TOL * n.abs().max(1.0) {
        return Err(Error::Precondition(format!(
            "δt = {} is not a whole multiple of 2π (δt/2π = {turns})",
            delta * t
        )));
    }
    Ok(n as i64)
}

/// `½ Σ_j (σ_j⁺ + σ_j⁻) ⊗ I_F`.
pub fn collective_sigma_x(space: Space) -> SparseOperator {
    let half = C64::new(0.5, 0.0);
    sigma_x_sum(space).scale(half)
}

/// `Σ_j (σ_j⁺ + σ_j⁻) ⊗ I_F`.
fn sigma_x_sum(space: Space) -> SparseOperator {
    let sx = sigma_plus().add(&sigma_minus());
    embed_atom(space, Atom::First, &sx)
        .add(&embed_atom(space, Atom::Second, &sx))
        .expect("same space")
}

/// Full interaction-picture Hamiltonian
/// `Σ_j [Ω(σ_j⁺ + σ_j⁻) + g(e^{-iδt} a† σ_j⁻ + e^{iδt} a σ_j⁺)]`.
pub fn interaction_hamiltonian(params: &Params, space: Space) -> TimeDependentOperator {
    let lower = embed_atom(space, Atom::First, &sigma_minus())
        .add(&embed_atom(space, Atom::Second, &sigma_minus()))
        .expect("same space");
    let raise = lower.adjoint();
    let ad_lower = creation(space).matmul(&lower).expect("same space");
    let a_raise = annihilation(space).matmul(&raise).expect("same space");
    TimeDependentOperator::new(space)
        .with_term(Oscillation::constant(params.omega()), sigma_x_sum(space))
        .and_then(|h| h.with_term(coupling(params.g(), -params.delta()), ad_lower))
        .and_then(|h| h.with_term(coupling(params.g(), params.delta()), a_raise))
        .expect("same space")
}

/// Effective Hamiltonian `g (e^{-iδt} a† + e^{iδt} a) σ_x` (fast terms dropped).
pub fn effective_hamiltonian(params: &Params, space: Space) -> TimeDependentOperator {
    let sx = collective_sigma_x(space);
    let ad_sx = creation(space).matmul(&sx).expect("same space");
    let a_sx = annihilation(space).matmul(&sx).expect("same space");
    TimeDependentOperator::new(space)
        .with_term(coupling(params.g(), -params.delta()), ad_sx)
        .and_then(|h| h.with_term(coupling(params.g(), params.delta()), a_sx))
        .expect("same space")
}

/// Drive `H₀ = 2Ω σ_x`.
pub fn drive_hamiltonian(params: &Params, space: Space) -> TimeDependentOperator {
    TimeDependentOperator::new(space)
        .with_term(Oscillation::constant(params.omega()), sigma_x_sum(space))
        .expect("same space")
}

/// `H₀ + H_e`, the model whose exact evolution is [`u_interaction_analytic`].
pub fn effective_model_hamiltonian(params: &Params, space: Space) -> TimeDependentOperator {
    drive_hamiltonian(params, space)
        .plus(effective_hamiltonian(params, space))
        .expect("same space")
}

fn coupling(g: f64, frequency: f64) -> Oscillation {
    Oscillation {
        amplitude: C64::new(g, 0.0),
        frequency,
    }
}

/// `H_I(t)` frozen at time `t`.
pub fn h_interaction(params: &Params, t: f64, space: Space) -> SparseOperator {
    interaction_hamiltonian(params, space).at(t)
}

/// `H_e(t)` frozen at time `t`.
pub fn h_effective(params: &Params, t: f64, space: Space) -> SparseOperator {
    effective_hamiltonian(params, space).at(t)
}

/// `|+⟩` and `|−⟩` in the (g, e) basis.
fn pm_vectors() -> [[C64; 2]; 2] {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

/// Two-atom vector `|s1 s2⟩` for `sk ∈ {0 = +, 1 = −}` in (gg, ge, eg, ee) order.
fn pm_product(s1: usize, s2: usize) -> [C64; 4] {
    let v = pm_vectors();
    let mut out = [C64::new(0.0, 0.0); 4];
    for a in 0..2 {
        for b in 0..2 {
            out[a * 2 + b] = v[s1][a] * v[s2][b];
        }
    }
    out
}

/// Collective σ_x eigenvalue of `|s1 s2⟩`.
fn sigma_x_eigenvalue(s1: usize, s2: usize) -> i32 {
    let sign = |s: usize| if s == 0 { 1 } else { -1 };
    (sign(s1) + sign(s2)) / 2
}

/// Two-atom operator diagonal in the |±±⟩ basis, from a map eigenvalue → phase.
fn sigma_x_function(f: impl Fn(i32) -> C64) -> Mat4 {
    let mut m = Mat4::zeros();
    for s1 in 0..2 {
        for s2 in 0..2 {
            let v = pm_product(s1, s2);
            m = m.add(&Matrix::outer(&v, &v).scale(f(sigma_x_eigenvalue(s1, s2))));
        }
    }
    m
}

/// Projector onto the σ_x eigenspace with eigenvalue `s`.
fn sigma_x_projector(s: i32) -> Mat4 {
    sigma_x_function(|x| C64::new(if x == s { 1.0 } else { 0.0 }, 0.0))
}

/// Atomic operator that is diagonal in the |±±⟩ basis with the given phases,
/// returned in the computational basis. Order: (++, +−, −+, −−).
pub fn pm_diagonal(phases: [C64; 4]) -> Mat4 {
    let mut m = Mat4::zeros();
    for (k, p) in phases.into_iter().enumerate() {
        let v = pm_product(k / 2, k % 2);
        m = m.add(&Matrix::outer(&v, &v).scale(p));
    }
    m
}

/// Closed-form `U_e(t)` on the truncated space.
///
/// Each exponential is block diagonal over σ_x eigenvalues; `e^{-iBs·a}` and
/// `e^{-iCs·a†}` are finite triangular series because the truncated ladder
/// operators are nilpotent.
pub fn u_effective(params: &Params, t: f64, space: Space) -> Result<SparseOperator> {
    let abc = abc_coefficients(params.g(), params.delta(), t)?;
    let f = space.fock_cutoff();
    let mut triplets = Vec::new();
    for s in [-1, 0, 1] {
        let proj = sigma_x_projector(s);
        let cavity = cavity_factor(&abc, s, f);
        for a in 0..4 {
            for b in 0..4 {
                let p = proj.0[a][b];
                if p.norm() < 1e-15 {
                    continue;
                }
                for (m, row) in cavity.iter().enumerate() {
                    for (n, &v) in row.iter().enumerate() {
                        if v != C64::new(0.0, 0.0) {
                            triplets.push((space.flat(a, m), space.flat(b, n), p * v));
                        }
                    }
                }
            }
        }
    }
    SparseOperator::from_triplets(space, triplets)
}

/// `e^{-iAs²} e^{-iBs a} e^{-iCs a†}` as a dense `F × F` matrix.
fn cavity_factor(abc: &AbcCoefficients, s: i32, f: usize) -> Vec<Vec<C64>> {
    let s = s as f64;
    let minus_i = C64::new(0.0, -1.0);
    let x_lower = minus_i * abc.b * s;
    let x_raise = minus_i * abc.c * s;
    // raise[m][n] = ⟨m| e^{x a†} |n⟩ = x^{m−n}/(m−n)! · √(m!/n!)
    let ladder = |x: C64, from: usize, k: usize| -> C64 {
        let mut v = C64::new(1.0, 0.0);
        for j in 1..=k {
            v *= x * ((from + j) as f64).sqrt() / j as f64;
        }
        v
    };
    let mut raise = vec![vec![C64::new(0.0, 0.0); f]; f];
    let mut lower = vec![vec![C64::new(0.0, 0.0); f]; f];
    for n in 0..f {
        for m in n..f {
            raise[m][n] = ladder(x_raise, n, m - n);
            lower[n][m] = ladder(x_lower, n, m - n);
        }
    }
    let phase = (minus_i * abc.a * s * s).exp();
    let mut out = vec![vec![C64::new(0.0, 0.0); f]; f];
    for r in 0..f {
        for c in 0..f {
            let v: C64 = (r.max(c)..f).map(|k| lower[r][k] * raise[k][c]).sum();
            out[r][c] = phase * v;
        }
    }
    out
}

/// Atomic evolution `exp(-i2Ωσ_x t − i2λσ_x² t)` for `δt = 2πN`, in the
/// computational (gg, ge, eg, ee) basis.
///
/// Phases in the |±±⟩ basis: `|++⟩ → e^{-i2Ωt} e^{-i2λt}`, `|+−⟩, |−+⟩ → 1`,
/// `|−−⟩ → e^{+i2Ωt} e^{-i2λt}`. Negative `t` gives the adjoint.
pub fn u_interaction_analytic(params: &Params, t: f64) -> Result<Mat4> {
    whole_periods(params.delta(), t)?;
    Ok(atomic_phase_gate(params.lambda() * t, params.omega() * t))
}

/// [`u_interaction_analytic`] from the phase angles `λt` and `Ωt`.
pub fn atomic_phase_gate(lambda_t: f64, omega_t: f64) -> Mat4 {
    sigma_x_function(|s| {
        let s = s as f64;
        C64::from_polar(1.0, -2.0 * omega_t * s - 2.0 * lambda_t * s * s)
    })
}

/// Embeds an atomic operator into the full space (identity on the cavity).
pub fn atomic_on_space(m: &Mat4, space: Space) -> SparseOperator {
    embed_atomic(space, m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GateTarget {
    /// `diag(−1, 1, 1, 1)` in the (++, +−, −+, −−) basis.
    ControlledPhase,
    /// `λt = π/4` with `Ωt` a multiple of π: turns |gg⟩ into (|gg⟩ − i|ee⟩)/√2.
    EprQuarter,
}

impl GateTarget {
    /// The atomic unitary the solved parameters must realize, up to global phase.
    pub fn target_matrix(self) -> Mat4 {
        let one = C64::new(1.0, 0.0);
        match self {
            GateTarget::ControlledPhase => pm_diagonal([-one, one, one, one]),
            GateTarget::EprQuarter => atomic_phase_gate(FRAC_PI_4, 0.0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateConstraints {
    pub g: f64,
    /// Smallest allowed number of detuning periods.
    pub min_periods: u32,
    /// Ω is chosen as the smallest admissible value with `Ω ≥ ratio · δ`.
    pub omega_over_delta_min: f64,
    /// Pins the detuning instead of deriving it from `min_periods`.
    pub delta: Option<f64>,
}

impl Default for GateConstraints {
    fn default() -> Self {
        GateConstraints {
            g: 1.0,
            min_periods: 1,
            omega_over_delta_min: 20.0,
            delta: None,
        }
    }
}

impl GateConstraints {
    pub fn with_delta(delta: f64, omega_over_delta_min: f64) -> GateConstraints {
        GateConstraints {
            delta: Some(delta),
            omega_over_delta_min,
            ..GateConstraints::default()
        }
    }
}

/// Solves the phase conditions for `target` directly.
///
/// `λt = πN g²/δ²` must equal π/4, so `δ = 2g√N` and `t = 2πN/δ`. For the
/// controlled phase, `e^{-i2(Ω+λ)t} = −1` and `e^{+i2(Ω−λ)t} = 1` then give
/// `Ωt = π/4 + pπ`; for the EPR gate `Ωt = mπ`. The result is checked
/// against [`GateTarget::target_matrix`] before it is returned.
pub fn solve_gate_params(target: GateTarget, constraints: &GateConstraints) -> Result<(Params, GateTiming)> {
    let g = constraints.g;
    if !(g > 0.0) || !g.is_finite() {
        return Err(Error::InvalidArgument(format!("g must be positive, got {g}")));
    }
    if !(constraints.omega_over_delta_min >= 0.0) || !constraints.omega_over_delta_min.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "omega_over_delta_min must be finite and >= 0, got {}",
            constraints.omega_over_delta_min
        )));
    }
    let min_periods = constraints.min_periods.max(1) as i64;
    let (delta, periods) = match constraints.delta {
        None => {
            let n = min_periods;
            (2.0 * g * (n as f64).sqrt(), n)
        }
        Some(delta) => {
            if !(delta > 0.0) || !delta.is_finite() {
                return Err(Error::Infeasible(format!("detuning {delta} must be positive")));
            }
            let n_exact = delta * delta / (4.0 * g * g);
            let n = n_exact.round();
            if (n_exact - n).abs() > PERIOD_TOL * n.max(1.0) || (n as i64) < min_periods {
                return Err(Error::Infeasible(format!(
                    "λt = π/4 needs δ²/(4g²) to be an integer >= {min_periods}; δ = {delta} gives {n_exact}"
                )));
            }
            (delta, n as i64)
        }
    };
    let t = TAU * periods as f64 / delta;
    let min_omega_t = constraints.omega_over_delta_min * delta * t;
    let omega_t = match target {
        GateTarget::ControlledPhase => {
            let p = ((min_omega_t - FRAC_PI_4) / PI - 1e-9).ceil().max(0.0);
            FRAC_PI_4 + p * PI
        }
        GateTarget::EprQuarter => {
            let m = (min_omega_t / PI - 1e-9).ceil().max(1.0);
            m * PI
        }
    };
    let params = Params::new(g, delta, omega_t / t)?;
    let timing = GateTiming::new(&params, t)?;

    let realized = u_interaction_analytic(&params, t)?;
    let tol = phase_tolerance(&timing);
    let distance = realized.distance_up_to_phase(&target.target_matrix());
    if distance > tol {
        return Err(Error::Infeasible(format!(
            "solved parameters miss the {target:?} truth table by {distance:.2e}"
        )));
    }
    Ok((params, timing))
}

/// Achievable agreement for phases of magnitude `2(|Ωt| + |λt|)`: 1e-12, or
/// the double-precision rounding of the phase if that is larger.
pub fn phase_tolerance(timing: &GateTiming) -> f64 {
    let magnitude = 2.0 * (timing.omega_t.abs() + timing.lambda_t.abs());
    1e-12f64.max(16.0 * f64::EPSILON * magnitude)
}
