//! Independent oracles shared by the integration targets.
#![allow(dead_code)]

use djsim_core::propagator::IntegratorSettings;
use djsim_core::qcore::{Space, StateVector, C64};

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// RK4 on `Ȧ = iĊB`, `Ḃ = g e^{iδt}`, `Ċ = g e^{−iδt}` from zero.
pub fn abc_by_ode(g: f64, delta: f64, t: f64) -> [C64; 3] {
    let n = 40_000;
    let h = t / n as f64;
    let rhs = |s: f64, y: [C64; 3]| {
        let cdot = g * C64::from_polar(1.0, -delta * s);
        [C64::i() * cdot * y[1], g * C64::from_polar(1.0, delta * s), cdot]
    };
    let axpy = |y: [C64; 3], k: [C64; 3], w: f64| [y[0] + k[0] * w, y[1] + k[1] * w, y[2] + k[2] * w];
    let mut y = [c(0.0); 3];
    for step in 0..n {
        let s = step as f64 * h;
        let k1 = rhs(s, y);
        let k2 = rhs(s + h / 2.0, axpy(y, k1, h / 2.0));
        let k3 = rhs(s + h / 2.0, axpy(y, k2, h / 2.0));
        let k4 = rhs(s + h, axpy(y, k3, h));
        for j in 0..3 {
            y[j] += (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]) * (h / 6.0);
        }
    }
    y
}

/// `e^{−iΩt(σx₁+σx₂)} · e^{−iλt}(cos λt − i sin λt σx₁σx₂)` with single-atom
/// Pauli matrices, in (gg, ge, eg, ee) order.
pub fn closed_form_u(lambda_t: f64, omega_t: f64) -> [[C64; 4]; 4] {
    let i = C64::i();
    let x = [[c(0.0), c(1.0)], [c(1.0), c(0.0)]];
    let id = [[c(1.0), c(0.0)], [c(0.0), c(1.0)]];
    let kron = |a: [[C64; 2]; 2], b: [[C64; 2]; 2]| {
        let mut m = [[c(0.0); 4]; 4];
        for r in 0..4 {
            for k in 0..4 {
                m[r][k] = a[r / 2][k / 2] * b[r % 2][k % 2];
            }
        }
        m
    };
    let mul = |a: [[C64; 4]; 4], b: [[C64; 4]; 4]| {
        let mut m = [[c(0.0); 4]; 4];
        for r in 0..4 {
            for k in 0..4 {
                m[r][k] = (0..4).map(|j| a[r][j] * b[j][k]).sum();
            }
        }
        m
    };
    let rot = {
        let (co, si) = (omega_t.cos(), omega_t.sin());
        let mut r = [[c(0.0); 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                r[a][b] = co * id[a][b] - i * si * x[a][b];
            }
        }
        r
    };
    let xx = kron(x, x);
    let mut ent = [[c(0.0); 4]; 4];
    let phase = C64::from_polar(1.0, -lambda_t);
    for r in 0..4 {
        for k in 0..4 {
            let idk = if r == k { c(1.0) } else { c(0.0) };
            ent[r][k] = phase * (lambda_t.cos() * idk - i * lambda_t.sin() * xx[r][k]);
        }
    }
    mul(kron(rot, rot), ent)
}

pub fn random_low_state(space: Space, seed: &[(f64, f64)]) -> StateVector {
    // Populates photon numbers 0..=2 only.
    let mut amps = vec![c(0.0); space.dim()];
    for (k, &(re, im)) in seed.iter().enumerate() {
        let (atomic, n) = (k % 4, k / 4);
        amps[space.flat(atomic, n)] = C64::new(re, im);
    }
    let mut s = StateVector::from_amplitudes(space, amps).unwrap();
    s.normalize().unwrap();
    s
}

pub fn fine() -> IntegratorSettings {
    IntegratorSettings::new(80.0, 1e-6, 1e-6).unwrap()
}
