//! Quick self-check suite: exact gate tables, single-query correctness,
//! closed forms against propagation, and integrator order. Runs in seconds.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::djrunner::{initial_atomic, run_dj, run_dj_on};
use crate::error::Result;
use crate::experiments::stark_point;
use crate::gates::{cnot_schedule, controlled_phase_schedule, oracle_schedule, ExecMode, Oracle, Schedule};
use crate::model::{
    abc_coefficients, effective_hamiltonian, effective_model_hamiltonian, interaction_hamiltonian, pm_diagonal,
    u_effective, u_interaction_analytic, GateConstraints, GateTiming, Params,
};
use crate::propagator::{evolve, integrate_rk4, IntegratorSettings};
use crate::qcore::{fidelity_pure, Mat4, Matrix, MixtureState, Space, StateVector};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn from(name: &'static str, outcome: Result<(bool, String)>) -> Check {
        match outcome {
            Ok((passed, detail)) => Check { name, passed, detail },
            Err(e) => Check {
                name,
                passed: false,
                detail: format!("error: {e}"),
            },
        }
    }
}

type Outcome = Result<(bool, String)>;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn controlled_phase_table() -> Outcome {
    let u = controlled_phase_schedule(&GateConstraints::default())?.analytic_matrix()?;
    let d = u.distance_up_to_phase(&pm_diagonal([c(-1.0), c(1.0), c(1.0), c(1.0)]));
    Ok((d < 1e-12, format!("distance {d:.2e}")))
}

fn cnot_table() -> Outcome {
    let u = cnot_schedule(&GateConstraints::default())?.analytic_matrix()?;
    let mut want = Mat4::zeros();
    for (from, to) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        want.0[to][from] = c(1.0);
    }
    let d = u.distance_up_to_phase(&want);
    Ok((d < 1e-12, format!("distance {d:.2e}")))
}

fn dj_analytic() -> Outcome {
    let mut worst: f64 = 0.0;
    for oracle in Oracle::ALL {
        let r = run_dj(oracle, &ExecMode::Analytic, &GateConstraints::default())?;
        worst = worst
            .max((1.0 - r.p_correct()).abs())
            .max((1.0 - r.state_fidelity).abs());
        if !r.is_correct() {
            return Ok((false, format!("{oracle} misclassified")));
        }
    }
    Ok((worst < 1e-10, format!("max deviation {worst:.2e}")))
}

fn dj_thermal_analytic() -> Outcome {
    let space = Space::new(23)?;
    let input = MixtureState::thermal(space, &initial_atomic(), 0.5, 13)?;
    let mut worst: f64 = 0.0;
    for oracle in Oracle::ALL {
        let r = run_dj_on(oracle, &input, &ExecMode::Analytic, &GateConstraints::default())?;
        worst = worst.max((1.0 - r.p_correct()).abs());
    }
    Ok((worst < 1e-10, format!("max deviation {worst:.2e}")))
}

/// The closed-form coefficients against RK4 on `Ḃ = g e^{iδt}`,
/// `Ċ = g e^{−iδt}`, `Ȧ = iĊB`.
fn abc_vs_ode() -> Outcome {
    let mut worst: f64 = 0.0;
    for &(g, delta, t) in &[(1.0, 1.0, 2.3), (0.7, 2.5, 1.1), (1.3, -3.0, 4.0)] {
        let n = 20_000;
        let h = t / n as f64;
        let i = C64::i();
        let f = |s: f64, y: [C64; 3]| {
            let b = g * C64::from_polar(1.0, delta * s);
            let cdot = g * C64::from_polar(1.0, -delta * s);
            [i * cdot * y[1], b, cdot]
        };
        let mut y = [c(0.0); 3];
        for k in 0..n {
            let s = k as f64 * h;
            let add = |y: [C64; 3], d: [C64; 3], w: f64| [y[0] + d[0] * w, y[1] + d[1] * w, y[2] + d[2] * w];
            let k1 = f(s, y);
            let k2 = f(s + h / 2.0, add(y, k1, h / 2.0));
            let k3 = f(s + h / 2.0, add(y, k2, h / 2.0));
            let k4 = f(s + h, add(y, k3, h));
            for j in 0..3 {
                y[j] += (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]) * (h / 6.0);
            }
        }
        let abc = abc_coefficients(g, delta, t)?;
        worst = worst
            .max((abc.a - y[0]).norm())
            .max((abc.b - y[1]).norm())
            .max((abc.c - y[2]).norm());
    }
    Ok((worst < 1e-8, format!("max deviation {worst:.2e}")))
}

fn u_effective_vs_propagation() -> Outcome {
    let params = Params::unit_coupling(2.0, 0.0)?;
    let space = Space::new(20)?;
    let settings = IntegratorSettings::new(60.0, 1e-6, 1e-6)?;
    let atomic = [c(0.5), c(-0.5), C64::new(0.0, 0.5), c(0.5)];
    let psi = StateVector::with_fock(space, &atomic, 1)?;
    let t = 1.3;
    let exact = u_effective(&params, t, space)?.apply(&psi)?;
    let numeric = evolve(&effective_hamiltonian(&params, space), &psi, 0.0, t, &settings)?.state;
    let f = fidelity_pure(&exact, &numeric)?;
    Ok((f >= 1.0 - 1e-6, format!("fidelity {f:.12}")))
}

fn u_interaction_vs_propagation() -> Outcome {
    let params = Params::unit_coupling(2.0, 3.0)?;
    let space = Space::new(20)?;
    let timing = GateTiming::from_periods(&params, 1)?;
    let settings = IntegratorSettings::new(60.0, 1e-6, 1e-6)?;
    let atomic = [c(0.5), c(0.5), c(-0.5), C64::new(0.0, 0.5)];
    let psi = StateVector::with_fock(space, &atomic, 2)?;
    let numeric = evolve(
        &effective_model_hamiltonian(&params, space),
        &psi,
        0.0,
        timing.t,
        &settings,
    )?
    .state;
    let want = u_interaction_analytic(&params, timing.t)?.apply(&atomic);
    let exact = StateVector::with_fock(space, &want, 2)?;
    let f = fidelity_pure(&exact, &numeric)?;
    Ok((f >= 1.0 - 1e-8, format!("fidelity {f:.12}")))
}

fn schedule_round_trip() -> Outcome {
    let s = oracle_schedule(Oracle::F2, &GateConstraints::default())?;
    let back = Schedule::parse_text(&s.to_text()?)?;
    let inverse = s.clone().then(&s.inverse()).analytic_matrix()?;
    let d = inverse.max_abs_diff(&Matrix::identity());
    Ok((
        back == s && d < 1e-8,
        format!("round trip {}, S·S⁻¹ deviation {d:.2e}", back == s),
    ))
}

fn stark_point_at_sqrt2() -> Outcome {
    let r = stark_point(SQRT_2, 20.0, 30, &crate::experiments::experiment_integrator())?;
    Ok((r.fidelity >= 0.97, format!("fidelity {:.6}", r.fidelity)))
}

/// Observed order of [`integrate_rk4`] on a driven, detuned two-atom
/// problem, from errors at `n` and `2n` steps against a `32n`-step reference.
pub fn rk4_convergence_order() -> Result<f64> {
    let params = Params::unit_coupling(2.0, 1.5)?;
    let space = Space::new(8)?;
    let h = interaction_hamiltonian(&params, space);
    let psi = StateVector::with_fock(space, &[c(1.0), c(0.0), c(0.0), c(0.0)], 0)?;
    let t = PI;
    let n = 200;
    let run = |steps| integrate_rk4(&h, &psi, 0.0, t, steps).map(|e| e.state);
    let reference = run(32 * n)?;
    let err = |s: &StateVector| {
        s.amps()
            .iter()
            .zip(reference.amps())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    };
    let e1 = err(&run(n)?);
    let e2 = err(&run(2 * n)?);
    Ok((e1 / e2).log2())
}

fn convergence_order() -> Outcome {
    let p = rk4_convergence_order()?;
    Ok(((p - 4.0).abs() < 0.3, format!("observed order {p:.3}")))
}

fn epr_closed_form() -> Outcome {
    let params = Params::unit_coupling(2.0, 20.0)?;
    let timing = GateTiming::from_periods(&params, 1)?;
    let u = u_interaction_analytic(&params, timing.t)?;
    let s = FRAC_1_SQRT_2;
    let out = u.apply(&[c(1.0), c(0.0), c(0.0), c(0.0)]);
    let want = [c(s), c(0.0), c(0.0), C64::new(0.0, -s)];
    let overlap: C64 = want.iter().zip(out.iter()).map(|(a, b)| a.conj() * b).sum();
    let f = overlap.norm_sqr();
    Ok(((f - 1.0).abs() < 1e-12, format!("fidelity {f:.15}")))
}

type CheckFn = fn() -> Outcome;

/// Runs every check; the suite passes iff all rows pass.
pub fn run_all() -> Vec<Check> {
    let table: [(&str, CheckFn); 11] = [
        ("controlled-phase truth table", controlled_phase_table),
        ("CNOT truth table", cnot_table),
        ("EPR closed form", epr_closed_form),
        ("single-query DJ (analytic)", dj_analytic),
        ("thermal DJ (analytic)", dj_thermal_analytic),
        ("A, B, C against ODE", abc_vs_ode),
        ("u_effective against propagation", u_effective_vs_propagation),
        ("u_interaction against propagation", u_interaction_vs_propagation),
        ("schedule text and inverse", schedule_round_trip),
        ("Stark error at delta = sqrt(2) g", stark_point_at_sqrt2),
        ("RK4 convergence order", convergence_order),
    ];
    table.iter().map(|(name, f)| Check::from(name, f())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        for check in run_all() {
            assert!(check.passed, "{}: {}", check.name, check.detail);
        }
    }
}
