//! Browser bindings for the interactive demo page: three operations that
//! return flat f64 arrays ready for canvas plotting.
//!
//! Build with `wasm-pack build crates/wasm --target web` (or wasm-bindgen-cli
//! on the `wasm32-unknown-unknown` artifact) and serve `www/`.

use lhkit::lh::{PhasePoint, TimeCoefficient};
use lhkit::milne_pinney::{mp_deformed_triple, mp_f2_deformed, pdm_profile};
use lhkit::numkit::{integrate_adaptive, IntegratorConfig};
use lhkit::sisf::sisf_deformed;
use wasm_bindgen::prelude::*;

/// Coupled two-copy deformed Milne–Pinney run.
///
/// Returns rows of six values [t, x1, y1, x2, y2, F2] flattened; F2 is the
/// deformed two-copy invariant, constant along the run. Empty on failure
/// (domain exit or blow-up).
#[wasm_bindgen]
pub fn mp_trajectory(
    z: f64,
    c: f64,
    omega0: f64,
    omega_amp: f64,
    x1: f64,
    y1: f64,
    x2: f64,
    y2: f64,
    t1: f64,
) -> Vec<f64> {
    let tr = mp_deformed_triple(c, z);
    let omega = TimeCoefficient::Sinusoid {
        offset: omega0,
        amplitude: omega_amp,
        omega: 1.0,
        phase: 0.0,
    };
    let ode = {
        let tr = tr.clone();
        move |t: f64, s: &[f64], d: &mut [f64]| {
            let o = omega.eval(t);
            let b = [o * o, 0.0, 1.0];
            tr.coupled_ode_with(move |_| b, 2)(t, s, d)
        }
    };
    let cfg = IntegratorConfig::with_tol(1e-9);
    let run = match integrate_adaptive(&ode, 0.0, t1, &[x1, y1, x2, y2], &cfg, None) {
        Ok(r) => r,
        Err(_) => return Vec::new(),
    };
    let mut out = Vec::with_capacity(run.samples.len() * 6);
    for (t, s) in &run.samples {
        let f2 = mp_f2_deformed(c, z, PhasePoint::new(s[0], s[1]), PhasePoint::new(s[2], s[3]))
            .unwrap_or(f64::NAN);
        out.extend_from_slice(&[*t, s[0], s[1], s[2], s[3], f2]);
    }
    out
}

/// Position-dependent mass and potential curves over x ∈ [x_min, x_max].
///
/// Returns rows of four values [x, mass, u_osc, u_rw] flattened.
#[wasm_bindgen]
pub fn pdm_curves(z: f64, x_min: f64, x_max: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n * 4);
    for k in 0..n {
        let x = x_min + (x_max - x_min) * k as f64 / (n - 1).max(1) as f64;
        if let Ok((m, uo, ur)) = pdm_profile(z, x) {
            out.extend_from_slice(&[x, m, uo, ur]);
        }
    }
    out
}

/// Deformed epidemic run (z = 0 is the classical model).
///
/// Returns rows of three values [t, q, p] flattened; stops early at a domain
/// exit or blow-up, returning the surviving prefix.
#[wasm_bindgen]
pub fn sisf_run(z: f64, c: f64, rho0: f64, q0: f64, p0: f64, t1: f64) -> Vec<f64> {
    let def = sisf_deformed(z, c);
    let ode = def.ode(TimeCoefficient::Constant(rho0));
    let cfg = IntegratorConfig {
        abs_tol: 1e-9,
        rel_tol: 1e-9,
        max_steps: 200_000,
        initial_step: None,
    };
    let samples = match integrate_adaptive(&ode, 0.0, t1, &[q0, p0], &cfg, None) {
        Ok(run) => run.samples,
        Err(lhkit::Error::MaxSteps { t, .. }) | Err(lhkit::Error::DomainExit { t, .. }) => {
            match integrate_adaptive(&ode, 0.0, 0.95 * t, &[q0, p0], &cfg, None) {
                Ok(run) => run.samples,
                Err(_) => return Vec::new(),
            }
        }
        Err(_) => return Vec::new(),
    };
    let mut out = Vec::with_capacity(samples.len() * 3);
    for (t, s) in &samples {
        out.extend_from_slice(&[*t, s[0], s[1]]);
    }
    out
}
