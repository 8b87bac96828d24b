//! Trajectory runs and parameter scans.

use lhkit::lh::{casimir_f, PhasePoint, TimeCoefficient};
use lhkit::milne_pinney::{mp_deformed_ode, mp_deformed_triple, mp_f2_deformed, MpParams};
use lhkit::numkit::integrate_adaptive;
use lhkit::oscillators::{damped_field, h4_deformed_field, h4_f2, h4_pair_ode, DampedCoeffs};
use lhkit::sisf::{sisf_deformed, sisf_field, sisf_hamiltonian, EpiState};
use lhkit::sl2::{class_f2_deformed, table42_triple, Sl2Class};
use lhkit::suite::drift_on_survivable_window;
use lhkit::verify::fmt_float;

use crate::config::{IntegratorCfg, ScanCfg, SimulateCfg};
use crate::{join_row, CliError};

type OdeBox = Box<dyn Fn(f64, &[f64], &mut [f64])>;
type InvariantBox = Box<dyn Fn(&[f64]) -> f64>;

struct Run {
    columns: Vec<String>,
    ode: OdeBox,
    invariants: Vec<(String, InvariantBox)>,
    state: Vec<f64>,
}

fn constant(v: f64) -> TimeCoefficient {
    TimeCoefficient::Constant(v)
}

fn pair_state(sim: &SimulateCfg) -> Result<Option<[f64; 4]>, CliError> {
    match &sim.initial2 {
        None => Ok(None),
        Some(s2) => {
            if sim.initial.len() != 2 || s2.len() != 2 {
                return Err(CliError::Usage("initial states must have two components".into()));
            }
            Ok(Some([sim.initial[0], sim.initial[1], s2[0], s2[1]]))
        }
    }
}

fn single_state(sim: &SimulateCfg) -> Result<[f64; 2], CliError> {
    if sim.initial.len() != 2 {
        return Err(CliError::Usage("initial state must have two components".into()));
    }
    Ok([sim.initial[0], sim.initial[1]])
}

fn build(sim: &SimulateCfg) -> Result<Run, CliError> {
    let family = sim.family.as_str();
    match family {
        "mp" | "mp-deformed" => {
            let z = if family == "mp" { 0.0 } else { sim.z };
            let c = sim.c;
            let omega = sim.coeff("omega", constant(1.0));
            let params = MpParams { c, z, omega: omega.clone() };
            match pair_state(sim)? {
                None => {
                    let ode = mp_deformed_ode(&params);
                    let tr = mp_deformed_triple(c, z);
                    Ok(Run {
                        columns: vec!["t".into(), "x".into(), "y".into()],
                        ode: Box::new(ode),
                        invariants: vec![(
                            "Fz".into(),
                            Box::new(move |s: &[f64]| {
                                casimir_f(&tr, tr.ham_values(PhasePoint::new(s[0], s[1])), z)
                            }),
                        )],
                        state: single_state(sim)?.to_vec(),
                    })
                }
                Some(s4) => {
                    let tr = mp_deformed_triple(c, z);
                    let om = omega.clone();
                    let ode = move |t: f64, s: &[f64], d: &mut [f64]| {
                        let o = om.eval(t);
                        let b = [o * o, 0.0, 1.0];
                        tr.coupled_ode_with(move |_| b, 2)(t, s, d);
                    };
                    let trf = mp_deformed_triple(c, z);
                    Ok(Run {
                        columns: vec!["t".into(), "x".into(), "y".into(), "x2".into(), "y2".into()],
                        ode: Box::new(ode),
                        invariants: vec![
                            (
                                "Fz".into(),
                                Box::new(move |s: &[f64]| {
                                    casimir_f(&trf, trf.ham_values(PhasePoint::new(s[0], s[1])), z)
                                }),
                            ),
                            (
                                "Fz2".into(),
                                Box::new(move |s: &[f64]| {
                                    mp_f2_deformed(
                                        c,
                                        z,
                                        PhasePoint::new(s[0], s[1]),
                                        PhasePoint::new(s[2], s[3]),
                                    )
                                    .unwrap_or(f64::NAN)
                                }),
                            ),
                        ],
                        state: s4.to_vec(),
                    })
                }
            }
        }
        "sl2-p2" | "sl2-i4" | "sl2-i5" | "complex-riccati" | "coupled-riccati" => {
            let cls = match family {
                "sl2-p2" | "complex-riccati" => Sl2Class::P2,
                "sl2-i4" | "coupled-riccati" => Sl2Class::I4,
                _ => Sl2Class::I5,
            };
            let z = sim.z;
            let b = [
                sim.coeff("b1", constant(1.0)),
                sim.coeff("b2", constant(0.0)),
                sim.coeff("b3", constant(1.0)),
            ];
            match pair_state(sim)? {
                None => {
                    let tr = table42_triple(cls, z);
                    let field = tr.t_field(&b)?;
                    let trf = table42_triple(cls, z);
                    let ode = move |t: f64, s: &[f64], d: &mut [f64]| {
                        let (dx, dy) = field.eval(t, PhasePoint::new(s[0], s[1]));
                        d[0] = dx;
                        d[1] = dy;
                    };
                    Ok(Run {
                        columns: vec!["t".into(), "x".into(), "y".into()],
                        ode: Box::new(ode),
                        invariants: vec![(
                            "Fz".into(),
                            Box::new(move |s: &[f64]| {
                                casimir_f(&trf, trf.ham_values(PhasePoint::new(s[0], s[1])), z)
                            }),
                        )],
                        state: single_state(sim)?.to_vec(),
                    })
                }
                Some(s4) => {
                    let tr = table42_triple(cls, z);
                    let bc = b.clone();
                    let ode = move |t: f64, s: &[f64], d: &mut [f64]| {
                        let bv = [bc[0].eval(t), bc[1].eval(t), bc[2].eval(t)];
                        tr.coupled_ode_with(move |_| bv, 2)(t, s, d);
                    };
                    Ok(Run {
                        columns: vec!["t".into(), "x".into(), "y".into(), "x2".into(), "y2".into()],
                        ode: Box::new(ode),
                        invariants: vec![(
                            "Fz2".into(),
                            Box::new(move |s: &[f64]| {
                                class_f2_deformed(
                                    cls,
                                    z,
                                    PhasePoint::new(s[0], s[1]),
                                    PhasePoint::new(s[2], s[3]),
                                )
                                .unwrap_or(f64::NAN)
                            }),
                        )],
                        state: s4.to_vec(),
                    })
                }
            }
        }
        "sisf" => {
            let rho0 = sim.coeff("rho0", constant(0.8));
            let f = sisf_field(rho0.clone());
            let r2 = rho0.clone();
            Ok(Run {
                columns: vec!["t".into(), "q".into(), "p".into()],
                ode: Box::new(f),
                invariants: vec![(
                    "h".into(),
                    Box::new(move |s: &[f64]| {
                        sisf_hamiltonian(r2.eval(0.0), EpiState::new(s[0], s[1]))
                            .unwrap_or(f64::NAN)
                    }),
                )],
                state: single_state(sim)?.to_vec(),
            })
        }
        "sisf-deformed" => {
            let (z, c) = (sim.z, sim.c);
            let rho0 = sim.coeff("rho0", constant(0.8));
            match pair_state(sim)? {
                None => {
                    let def = sisf_deformed(z, c);
                    let r = rho0.clone();
                    let ode = move |t: f64, s: &[f64], d: &mut [f64]| def.ode(r.clone())(t, s, d);
                    let deff = sisf_deformed(z, c);
                    Ok(Run {
                        columns: vec!["t".into(), "q".into(), "p".into()],
                        ode: Box::new(ode),
                        invariants: vec![(
                            "F1".into(),
                            Box::new(move |s: &[f64]| {
                                -casimir_f(
                                    &deff.triple,
                                    deff.triple.ham_values(PhasePoint::new(s[0], s[1])),
                                    z,
                                )
                            }),
                        )],
                        state: single_state(sim)?.to_vec(),
                    })
                }
                Some(s4) => {
                    let def = sisf_deformed(z, c);
                    let r = rho0.clone();
                    let ode = move |t: f64, s: &[f64], d: &mut [f64]| {
                        let rv = r.eval(t);
                        def.triple.coupled_ode_with(move |_| [-rv, 1.0, 0.0], 2)(t, s, d);
                    };
                    let deff = sisf_deformed(z, c);
                    Ok(Run {
                        columns: vec!["t".into(), "q".into(), "p".into(), "q2".into(), "p2".into()],
                        ode: Box::new(ode),
                        invariants: vec![(
                            "Fz2".into(),
                            Box::new(move |s: &[f64]| {
                                deff.f2(EpiState::new(s[0], s[1]), EpiState::new(s[2], s[3]))
                                    .unwrap_or(f64::NAN)
                            }),
                        )],
                        state: s4.to_vec(),
                    })
                }
            }
        }
        "h4-deformed" => {
            let z = sim.z;
            let coeffs = [
                sim.coeff("f1", constant(1.0)),
                sim.coeff("f2", constant(0.0)),
                sim.coeff("f3", constant(0.5)),
            ];
            match pair_state(sim)? {
                None => {
                    let field = h4_deformed_field(z, coeffs);
                    let ode = move |t: f64, s: &[f64], d: &mut [f64]| {
                        let (dx, dy) = field.eval(t, PhasePoint::new(s[0], s[1]));
                        d[0] = dx;
                        d[1] = dy;
                    };
                    Ok(Run {
                        columns: vec!["t".into(), "x".into(), "y".into()],
                        ode: Box::new(ode),
                        invariants: vec![],
                        state: single_state(sim)?.to_vec(),
                    })
                }
                Some(s4) => {
                    let ode = h4_pair_ode(z, coeffs);
                    Ok(Run {
                        columns: vec!["t".into(), "x".into(), "y".into(), "x2".into(), "y2".into()],
                        ode: Box::new(ode),
                        invariants: vec![(
                            "Fz2".into(),
                            Box::new(move |s: &[f64]| {
                                h4_f2(z, PhasePoint::new(s[0], s[1]), PhasePoint::new(s[2], s[3]))
                            }),
                        )],
                        state: s4.to_vec(),
                    })
                }
            }
        }
        "damped" => {
            let co = DampedCoeffs {
                a: sim.coeff("a", constant(0.1)),
                b: sim.coeff("b", constant(1.0)),
                c: sim.coeff("c", constant(1.0)),
                d: sim.coeff("d", constant(0.0)),
                f: sim.coeff("f", constant(0.0)),
            };
            let field = damped_field(&co);
            let ode = move |t: f64, s: &[f64], d: &mut [f64]| {
                let (dx, dy) = field.eval(t, PhasePoint::new(s[0], s[1]));
                d[0] = dx;
                d[1] = dy;
            };
            Ok(Run {
                columns: vec!["t".into(), "x".into(), "p".into()],
                ode: Box::new(ode),
                invariants: vec![],
                state: single_state(sim)?.to_vec(),
            })
        }
        other => Err(CliError::Usage(format!(
            "unknown family '{other}' (expected mp, mp-deformed, sl2-p2/i4/i5, complex-riccati, coupled-riccati, sisf, sisf-deformed, h4-deformed, damped)"
        ))),
    }
}

pub fn run(
    sim: &SimulateCfg,
    integrator: &Option<IntegratorCfg>,
    plot_data: bool,
) -> Result<String, CliError> {
    let run = build(sim)?;
    let mut header: Vec<String> = run.columns.clone();
    header.extend(run.invariants.iter().map(|(n, _)| n.clone()));
    let mut out = join_row(&header, plot_data) + "\n";
    if sim.t1 == sim.t0 {
        return Ok(out); // zero-duration run: header only
    }
    if sim.t1 < sim.t0 {
        return Err(CliError::Usage("t1 must not precede t0".into()));
    }
    let cfg = IntegratorCfg::build(integrator);
    let tr = integrate_adaptive(&run.ode, sim.t0, sim.t1, &run.state, &cfg, None)
        .map_err(|e| CliError::Numerical(format!("integration failed: {e}")))?;
    for (t, s) in &tr.samples {
        let mut fields = vec![fmt_float(*t)];
        fields.extend(s.iter().map(|v| fmt_float(*v)));
        fields.extend(run.invariants.iter().map(|(_, f)| fmt_float(f(s))));
        out.push_str(&join_row(&fields, plot_data));
        out.push('\n');
    }
    Ok(out)
}

/// Parameter sweep: one drift row per deformation value, ordered by z.
pub fn scan(scan: &ScanCfg, tol: f64) -> Result<(String, bool), CliError> {
    if scan.initial.len() != 2 || scan.initial2.len() != 2 {
        return Err(CliError::Usage("scan needs two 2-component initial states".into()));
    }
    let s0 = [
        scan.initial[0],
        scan.initial[1],
        scan.initial2[0],
        scan.initial2[1],
    ];
    let mut rows = vec!["z,max_rel_drift,window,pass".to_string()];
    let mut all_ok = true;
    for &z in &scan.z_values {
        let report = match scan.family.as_str() {
            "mp-deformed" => {
                let c = scan.c;
                let tr = mp_deformed_triple(c, z);
                let coeffs = [
                    TimeCoefficient::Constant(1.0),
                    TimeCoefficient::Constant(0.0),
                    TimeCoefficient::Constant(1.0),
                ];
                let ode = tr.coupled_ode(&coeffs, 2);
                let inv = move |s: &[f64]| {
                    mp_f2_deformed(c, z, PhasePoint::new(s[0], s[1]), PhasePoint::new(s[2], s[3]))
                        .unwrap_or(f64::NAN)
                };
                drift_on_survivable_window(
                    &format!("scan z={z}"),
                    &ode,
                    &s0,
                    scan.t1,
                    &inv,
                    tol,
                )
            }
            "sl2-p2" | "sl2-i4" | "sl2-i5" => {
                let cls = match scan.family.as_str() {
                    "sl2-p2" => Sl2Class::P2,
                    "sl2-i4" => Sl2Class::I4,
                    _ => Sl2Class::I5,
                };
                let tr = table42_triple(cls, z);
                let coeffs = [
                    TimeCoefficient::Constant(1.0),
                    TimeCoefficient::Constant(0.0),
                    TimeCoefficient::Constant(1.0),
                ];
                let ode = tr.coupled_ode(&coeffs, 2);
                let inv = move |s: &[f64]| {
                    class_f2_deformed(cls, z, PhasePoint::new(s[0], s[1]), PhasePoint::new(s[2], s[3]))
                        .unwrap_or(f64::NAN)
                };
                drift_on_survivable_window(
                    &format!("scan z={z}"),
                    &ode,
                    &s0,
                    scan.t1,
                    &inv,
                    tol,
                )
            }
            other => {
                return Err(CliError::Usage(format!(
                    "unknown scan family '{other}' (expected mp-deformed or sl2-p2/i4/i5)"
                )))
            }
        };
        all_ok &= report.pass;
        let window = report.worst.first().copied().unwrap_or(f64::NAN);
        rows.push(format!(
            "{},{},{},{}",
            fmt_float(z),
            fmt_float(report.max_rel_err),
            fmt_float(window),
            report.pass
        ));
    }
    Ok((rows.join("\n") + "\n", all_ok))
}
