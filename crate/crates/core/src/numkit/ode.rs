//! Fixed-step RK4 and an embedded Dormand–Prince 5(4) pair with proportional
//! step control.
//!
//! Fields are infallible callables writing dy/dt into a slice; the integrators
//! detect non-finite stage values and domain-predicate violations themselves
//! and fail carrying the last valid sample.

use crate::{Error, Result};

/// Right-hand side of a first-order system: (t, state, out-derivative).
pub type OdeField<'a> = dyn Fn(f64, &[f64], &mut [f64]) + 'a;

/// Optional state-space membership predicate checked along the run.
pub type DomainPredicate<'a> = dyn Fn(&[f64]) -> bool + 'a;

/// Tolerances and limits for the adaptive integrator.
#[derive(Debug, Clone)]
pub struct IntegratorConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_steps: usize,
    /// Initial step; `None` selects an automatic estimate.
    pub initial_step: Option<f64>,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_steps: 1_000_000,
            initial_step: None,
        }
    }
}

impl IntegratorConfig {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            abs_tol: tol,
            rel_tol: tol,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(Error::InvalidArgument("tolerances must be strictly positive".into()));
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidArgument("max_steps must be at least 1".into()));
        }
        Ok(())
    }
}

/// Time-ordered samples plus integrator counters.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub samples: Vec<(f64, Vec<f64>)>,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
}

impl Trajectory {
    pub fn last_state(&self) -> &[f64] {
        &self.samples.last().expect("trajectory holds at least the initial sample").1
    }

    pub fn last_time(&self) -> f64 {
        self.samples.last().expect("trajectory holds at least the initial sample").0
    }

    /// State at a sample time, by exact time match within 1e-12.
    pub fn state_at(&self, t: f64) -> Option<&[f64]> {
        self.samples
            .iter()
            .find(|(ts, _)| (ts - t).abs() <= 1e-12 * t.abs().max(1.0))
            .map(|(_, s)| s.as_slice())
    }
}

fn check_state(t: f64, state: &[f64], domain: Option<&DomainPredicate>) -> Result<()> {
    if state.iter().any(|v| !v.is_finite()) || domain.is_some_and(|d| !d(state)) {
        return Err(Error::DomainExit { t, state: state.to_vec() });
    }
    Ok(())
}

/// Classical fourth-order Runge–Kutta with fixed step `dt`; the final step is
/// shortened so the last sample lands exactly on `t1`.
pub fn integrate_fixed_rk4(
    field: &OdeField,
    t0: f64,
    t1: f64,
    s0: &[f64],
    dt: f64,
    domain: Option<&DomainPredicate>,
) -> Result<Trajectory> {
    if !(dt > 0.0) {
        return Err(Error::InvalidArgument("fixed step must be positive".into()));
    }
    if t1 < t0 {
        return Err(Error::InvalidArgument("t1 must not precede t0".into()));
    }
    check_state(t0, s0, domain).map_err(|_| Error::OutOfDomain {
        t: Some(t0),
        state: s0.to_vec(),
    })?;

    let n = s0.len();
    let mut tr = Trajectory {
        samples: vec![(t0, s0.to_vec())],
        accepted_steps: 0,
        rejected_steps: 0,
    };
    let mut t = t0;
    let mut y = s0.to_vec();
    let (mut k1, mut k2, mut k3, mut k4) = (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    let mut tmp = vec![0.0; n];

    while t < t1 - 1e-14 * t1.abs().max(1.0) {
        let h = dt.min(t1 - t);
        field(t, &y, &mut k1);
        for i in 0..n {
            tmp[i] = y[i] + 0.5 * h * k1[i];
        }
        field(t + 0.5 * h, &tmp, &mut k2);
        for i in 0..n {
            tmp[i] = y[i] + 0.5 * h * k2[i];
        }
        field(t + 0.5 * h, &tmp, &mut k3);
        for i in 0..n {
            tmp[i] = y[i] + h * k3[i];
        }
        field(t + h, &tmp, &mut k4);
        for i in 0..n {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        t += h;
        let (t_last, s_last) = tr.samples.last().unwrap();
        if check_state(t, &y, domain).is_err() || k1.iter().any(|v| !v.is_finite()) {
            return Err(Error::DomainExit {
                t: *t_last,
                state: s_last.clone(),
            });
        }
        tr.samples.push((t, y.clone()));
        tr.accepted_steps += 1;
    }
    Ok(tr)
}

// Dormand-Prince 5(4) tableau (FSAL: stage 7 is f at the accepted point).
const A: [[f64; 6]; 6] = [
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const C: [f64; 6] = [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const ER: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Embedded 5(4) pair with proportional step control; the local error per
/// step is kept at or below abs_tol + rel_tol·|state|.
pub fn integrate_adaptive(
    field: &OdeField,
    t0: f64,
    t1: f64,
    s0: &[f64],
    cfg: &IntegratorConfig,
    domain: Option<&DomainPredicate>,
) -> Result<Trajectory> {
    integrate_adaptive_through(field, &[t0, t1], s0, cfg, domain)
}

/// Adaptive run that additionally lands exactly on every checkpoint time.
///
/// `checkpoints` must be non-decreasing; the first entry is t0. The returned
/// trajectory contains every accepted step (checkpoints included as ordinary
/// samples, found via [`Trajectory::state_at`]).
pub fn integrate_adaptive_through(
    field: &OdeField,
    checkpoints: &[f64],
    s0: &[f64],
    cfg: &IntegratorConfig,
    domain: Option<&DomainPredicate>,
) -> Result<Trajectory> {
    cfg.validate()?;
    let (&t0, rest) = checkpoints
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("at least one checkpoint required".into()))?;
    if rest.windows(2).any(|w| w[1] < w[0]) || rest.first().is_some_and(|&t| t < t0) {
        return Err(Error::InvalidArgument("checkpoints must be non-decreasing".into()));
    }
    check_state(t0, s0, domain).map_err(|_| Error::OutOfDomain {
        t: Some(t0),
        state: s0.to_vec(),
    })?;

    let n = s0.len();
    let mut tr = Trajectory {
        samples: vec![(t0, s0.to_vec())],
        accepted_steps: 0,
        rejected_steps: 0,
    };
    let t_end = *checkpoints.last().unwrap();
    if t_end == t0 {
        return Ok(tr);
    }

    let mut t = t0;
    let mut y = s0.to_vec();
    let mut k: Vec<Vec<f64>> = vec![vec![0.0; n]; 7];
    field(t, &y, &mut k[0]);
    if k[0].iter().any(|v| !v.is_finite()) {
        return Err(Error::OutOfDomain {
            t: Some(t0),
            state: s0.to_vec(),
        });
    }

    let mut h = match cfg.initial_step {
        Some(h0) if h0 > 0.0 => h0,
        _ => initial_step_estimate(&y, &k[0], cfg, t_end - t0),
    };

    let mut targets = rest.iter().copied().peekable();
    let mut y_new = vec![0.0; n];
    let mut tmp = vec![0.0; n];
    let mut steps = 0usize;

    while t < t_end - 1e-14 * t_end.abs().max(1.0) {
        // skip over duplicate checkpoint times
        while targets.peek().is_some_and(|&tt| tt <= t + 1e-14 * t.abs().max(1.0)) {
            targets.next();
        }
        let next_target = targets.peek().copied().unwrap_or(t_end);
        if steps >= cfg.max_steps {
            return Err(Error::MaxSteps { t, state: y });
        }
        steps += 1;
        let h_step = h.min(next_target - t).max(1e-14 * t.abs().max(1.0));

        // six derivative stages, then the FSAL stage at the candidate point
        let mut bad = false;
        for s in 0..6 {
            for i in 0..n {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s + 1) {
                    acc += A[s][j] * kj[i];
                }
                tmp[i] = y[i] + h_step * acc;
            }
            field(t + C[s] * h_step, &tmp, &mut k[s + 1]);
            if k[s + 1].iter().any(|v| !v.is_finite()) {
                bad = true;
                break;
            }
        }
        // the 5th-order solution reuses row A[5] (its weights equal B)
        if !bad {
            for i in 0..n {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(6) {
                    acc += A[5][j] * kj[i];
                }
                y_new[i] = y[i] + h_step * acc;
            }
            bad = y_new.iter().any(|v| !v.is_finite());
        }
        if bad {
            // a stage left the representable domain: treat as a rejection
            tr.rejected_steps += 1;
            h = 0.5 * h_step;
            if h < 1e-13 * t.abs().max(1.0) {
                let (tl, sl) = tr.samples.last().unwrap();
                return Err(Error::DomainExit { t: *tl, state: sl.clone() });
            }
            continue;
        }

        field(t + h_step, &y_new, &mut k[6]);
        let mut err = 0.0;
        for i in 0..n {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += ER[j] * kj[i];
            }
            e *= h_step;
            let scale = cfg.abs_tol + cfg.rel_tol * y[i].abs().max(y_new[i].abs());
            err += (e / scale) * (e / scale);
        }
        err = (err / n as f64).sqrt();

        if err <= 1.0 {
            t += h_step;
            std::mem::swap(&mut y, &mut y_new);
            k.swap(0, 6); // FSAL
            if check_state(t, &y, domain).is_err() {
                let (tl, sl) = tr.samples.last().unwrap();
                return Err(Error::DomainExit { t: *tl, state: sl.clone() });
            }
            tr.samples.push((t, y.clone()));
            tr.accepted_steps += 1;
        } else {
            tr.rejected_steps += 1;
        }
        let fac = (0.9 * err.powf(-0.2)).clamp(0.2, 5.0);
        h = (h_step * fac).max(1e-14 * t.abs().max(1.0));
    }
    Ok(tr)
}

fn initial_step_estimate(y: &[f64], f0: &[f64], cfg: &IntegratorConfig, span: f64) -> f64 {
    let sc = |yi: f64| cfg.abs_tol + cfg.rel_tol * yi.abs();
    let d0 = y.iter().map(|&v| (v / sc(v)).powi(2)).sum::<f64>().sqrt();
    let d1 = y
        .iter()
        .zip(f0)
        .map(|(&v, &fv)| (fv / sc(v)).powi(2))
        .sum::<f64>()
        .sqrt();
    let h = if d1 > 1e-10 { 0.01 * d0 / d1 } else { 1e-6 };
    h.clamp(1e-10, span.abs().max(1e-10) / 10.0)
}
