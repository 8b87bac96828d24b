//! Superposition audits: integrate the target and the particular solutions,
//! extract the constants at t₀, and tabulate prediction against truth.

use lhkit::lh::{PhasePoint, TimeCoefficient};
use lhkit::numkit::{integrate_adaptive_through, IntegratorConfig};
use lhkit::oscillators::{damped_field, damped_l3, damped_superpose, DampedCoeffs};
use lhkit::riccati::{so_riccati_field, so_riccati_integrals, so_riccati_superpose, Branch};
use lhkit::sisf::{
    sisf_exact_constants, sisf_field, sisf_superpose_exact, sisf_superpose_iso11,
    sisf_to_iso_plane, EpiState,
};
use lhkit::verify::fmt_float;

use crate::config::{IntegratorCfg, SuperposeCfg};
use crate::{join_row, CliError};

fn constant(v: f64) -> TimeCoefficient {
    TimeCoefficient::Constant(v)
}

fn as_point(v: &[f64], what: &str) -> Result<PhasePoint, CliError> {
    if v.len() != 2 {
        return Err(CliError::Usage(format!("{what} must have two components")));
    }
    Ok(PhasePoint::new(v[0], v[1]))
}

struct Audit {
    /// per grid index: (prediction, truth)
    rows: Vec<(f64, PhasePoint, PhasePoint)>,
}

pub fn run(
    sp: &SuperposeCfg,
    integrator: &Option<IntegratorCfg>,
    plot_data: bool,
) -> Result<(String, f64), CliError> {
    let cfg = IntegratorCfg::build(integrator);
    let grid: Vec<f64> = (0..sp.grid_points)
        .map(|k| sp.t0 + (sp.t1 - sp.t0) * k as f64 / (sp.grid_points - 1).max(1) as f64)
        .collect();
    let audit = match sp.rule.as_str() {
        "riccati2" => riccati2(sp, &cfg, &grid)?,
        "damped" => damped(sp, &cfg, &grid)?,
        "sisf-exact" => sisf_exact(sp, &cfg, &grid)?,
        "sisf-iso11" => sisf_iso11(sp, &cfg, &grid)?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown rule '{other}' (expected riccati2, damped, sisf-exact, sisf-iso11)"
            )))
        }
    };
    let mut out = join_row(
        &["t", "pred_1", "pred_2", "true_1", "true_2", "gap"].map(String::from),
        plot_data,
    ) + "\n";
    let mut sup = 0.0f64;
    for (t, pred, truth) in &audit.rows {
        let gap = (pred.x - truth.x).abs().max((pred.y - truth.y).abs());
        sup = sup.max(gap);
        out.push_str(&join_row(
            &[
                fmt_float(*t),
                fmt_float(pred.x),
                fmt_float(pred.y),
                fmt_float(truth.x),
                fmt_float(truth.y),
                fmt_float(gap),
            ],
            plot_data,
        ));
        out.push('\n');
    }
    Ok((out, sup))
}

fn integrate_diagonal(
    field: &dyn Fn(f64, &[f64], &mut [f64]),
    states: &[PhasePoint],
    grid: &[f64],
    cfg: &IntegratorConfig,
    domain: Option<&dyn Fn(&[f64]) -> bool>,
) -> Result<Vec<Vec<PhasePoint>>, CliError> {
    let mut s0 = Vec::new();
    for p in states {
        s0.push(p.x);
        s0.push(p.y);
    }
    let n = states.len();
    let diag = move |t: f64, s: &[f64], d: &mut [f64]| {
        for k in 0..n {
            field(t, &s[2 * k..2 * k + 2], &mut d[2 * k..2 * k + 2]);
        }
    };
    let tr = integrate_adaptive_through(&diag, grid, &s0, cfg, domain)
        .map_err(|e| CliError::Numerical(format!("integration failed: {e}")))?;
    Ok(grid
        .iter()
        .map(|&t| {
            let s = tr.state_at(t).expect("checkpointed");
            (0..n).map(|k| PhasePoint::new(s[2 * k], s[2 * k + 1])).collect()
        })
        .collect())
}

fn riccati2(sp: &SuperposeCfg, cfg: &IntegratorConfig, grid: &[f64]) -> Result<Audit, CliError> {
    if sp.particulars.len() != 3 {
        return Err(CliError::Usage("riccati2 needs exactly three particular solutions".into()));
    }
    let field = so_riccati_field(
        sp.coeff("a0", constant(1.0)),
        sp.coeff("a1", constant(0.0)),
        sp.coeff("a2", constant(0.1)),
    );
    let single = move |t: f64, s: &[f64], d: &mut [f64]| field.ode()(t, s, d);
    let mut states = vec![as_point(&sp.target, "target")?];
    for (i, p) in sp.particulars.iter().enumerate() {
        states.push(as_point(p, &format!("particular {}", i + 1))?);
    }
    let runs = integrate_diagonal(
        &single,
        &states,
        grid,
        cfg,
        Some(&|s: &[f64]| s.chunks(2).all(|c| c[1] < 0.0)),
    )?;
    let at0 = &runs[0];
    let f = so_riccati_integrals(at0[1], at0[2], at0[3], Some(at0[0]))
        .map_err(CliError::from)?;
    let (k1, k2) = (f.f1.unwrap(), f.f2.unwrap());
    let mut rows = Vec::new();
    for (k, snap) in runs.iter().enumerate() {
        let pred = so_riccati_superpose(snap[1], snap[2], snap[3], k1, k2)?;
        rows.push((grid[k], pred, snap[0]));
    }
    Ok(Audit { rows })
}

fn damped(sp: &SuperposeCfg, cfg: &IntegratorConfig, grid: &[f64]) -> Result<Audit, CliError> {
    if sp.particulars.len() != 3 {
        return Err(CliError::Usage("damped needs exactly three particular solutions".into()));
    }
    let co = DampedCoeffs {
        a: sp.coeff("a", constant(0.1)),
        b: sp.coeff("b", constant(1.0)),
        c: sp.coeff("c", constant(1.0)),
        d: sp.coeff("d", constant(0.0)),
        f: sp.coeff("f", constant(0.0)),
    };
    let field = damped_field(&co);
    let single = move |t: f64, s: &[f64], d: &mut [f64]| field.ode()(t, s, d);
    let mut states = vec![as_point(&sp.target, "target")?];
    for (i, p) in sp.particulars.iter().enumerate() {
        states.push(as_point(p, &format!("particular {}", i + 1))?);
    }
    let runs = integrate_diagonal(&single, &states, grid, cfg, None)?;
    let at0 = &runs[0];
    let l1 = damped_l3(at0[0], at0[1], at0[2]);
    let l2 = damped_l3(at0[0], at0[2], at0[3]);
    let sgn = |v: f64| if v >= 0.0 { Branch::Plus } else { Branch::Minus };
    let mut rows = Vec::new();
    for (k, snap) in runs.iter().enumerate() {
        let pred =
            damped_superpose(snap[1], snap[2], snap[3], l1 * l1, l2 * l2, sgn(l1), sgn(l2))?;
        rows.push((grid[k], pred, snap[0]));
    }
    Ok(Audit { rows })
}

fn sisf_states(
    sp: &SuperposeCfg,
    cfg: &IntegratorConfig,
    grid: &[f64],
    n_particulars: usize,
) -> Result<Vec<Vec<PhasePoint>>, CliError> {
    if sp.particulars.len() != n_particulars {
        return Err(CliError::Usage(format!(
            "{} needs exactly {n_particulars} particular solution(s)",
            sp.rule
        )));
    }
    let rho0 = sp.coeff("rho0", constant(0.8));
    let field = sisf_field(rho0);
    let mut states = vec![as_point(&sp.target, "target")?];
    for (i, p) in sp.particulars.iter().enumerate() {
        states.push(as_point(p, &format!("particular {}", i + 1))?);
    }
    integrate_diagonal(
        &field,
        &states,
        grid,
        cfg,
        Some(&|s: &[f64]| s.chunks(2).all(|c| c[1] != 0.0)),
    )
}

fn sisf_exact(sp: &SuperposeCfg, cfg: &IntegratorConfig, grid: &[f64]) -> Result<Audit, CliError> {
    let runs = sisf_states(sp, cfg, grid, 1)?;
    let at0 = &runs[0];
    let (k1, k2) = sisf_exact_constants(EpiState::from(at0[0]), EpiState::from(at0[1]))?;
    let mut rows = Vec::new();
    for (k, snap) in runs.iter().enumerate() {
        let pred = sisf_superpose_exact(EpiState::from(snap[1]), k1, k2)?;
        rows.push((grid[k], PhasePoint::new(pred.q, pred.p), snap[0]));
    }
    Ok(Audit { rows })
}

fn sisf_iso11(sp: &SuperposeCfg, cfg: &IntegratorConfig, grid: &[f64]) -> Result<Audit, CliError> {
    let runs = sisf_states(sp, cfg, grid, 2)?;
    let at0 = &runs[0];
    let (t0, a0, b0) = (
        sisf_to_iso_plane(EpiState::from(at0[0]))?,
        sisf_to_iso_plane(EpiState::from(at0[1]))?,
        sisf_to_iso_plane(EpiState::from(at0[2]))?,
    );
    let k1 = (t0.x - a0.x) * (t0.y - a0.y);
    let k2 = (t0.x - b0.x) * (t0.y - b0.y);
    let k3 = (b0.x - a0.x) * (b0.y - a0.y);
    // pick the branch matching the target at t0
    let pick = |br: Branch| {
        sisf_superpose_iso11(EpiState::from(at0[1]), EpiState::from(at0[2]), k1, k2, k3, br)
            .map(|s| (s.q - at0[0].x).abs() + (s.p - at0[0].y).abs())
            .unwrap_or(f64::INFINITY)
    };
    let branch = if pick(Branch::Plus) <= pick(Branch::Minus) {
        Branch::Plus
    } else {
        Branch::Minus
    };
    let mut rows = Vec::new();
    for (k, snap) in runs.iter().enumerate() {
        let pred = sisf_superpose_iso11(
            EpiState::from(snap[1]),
            EpiState::from(snap[2]),
            k1,
            k2,
            k3,
            branch,
        )?;
        rows.push((grid[k], PhasePoint::new(pred.q, pred.p), snap[0]));
    }
    Ok(Audit { rows })
}
