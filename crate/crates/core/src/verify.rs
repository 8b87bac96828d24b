//! Deterministic property-check harness: bracket tables, commutators,
//! invariant drift, limit orders and superposition residuals, each producing
//! a [`CheckReport`].
//!
//! All checks are deterministic under a fixed seed and byte-stable across
//! runs; sampling uses a self-contained splitmix64 stream so reports never
//! change underneath a dependency upgrade.

use crate::lh::{
    lie_bracket, poisson_bracket, BracketRelation, CommutatorRelation, DomainFn, PhasePoint,
    ScalarFn, ScalarField, VectorField2,
};
use crate::numkit::{integrate_adaptive, IntegratorConfig, OdeField};
use crate::{Error, Result};

/// Deterministic sampling plan: how many points, inside which box, from
/// which seed, and how many rejections to tolerate while looking for
/// in-domain points.
#[derive(Debug, Clone)]
pub struct SampleSpec {
    pub count: usize,
    /// per-coordinate closed intervals [(x_lo, x_hi), (y_lo, y_hi)]
    pub window: [(f64, f64); 2],
    pub seed: u64,
    pub reject_budget: usize,
}

impl Default for SampleSpec {
    fn default() -> Self {
        Self {
            count: 100,
            window: [(-2.0, 2.0), (-2.0, 2.0)],
            seed: 0x5EED_CAFE,
            reject_budget: 100_000,
        }
    }
}

impl SampleSpec {
    pub fn with_window(count: usize, window: [(f64, f64); 2], seed: u64) -> Self {
        Self {
            count,
            window,
            seed,
            reject_budget: 100_000,
        }
    }

    /// Draw `count` in-domain points, erroring when the rejection budget is
    /// exhausted first.
    pub fn sample(&self, domain: &DomainFn) -> Result<Vec<PhasePoint>> {
        let mut state = self.seed;
        let mut out = Vec::with_capacity(self.count);
        let mut rejected = 0;
        while out.len() < self.count {
            let x = uniform(&mut state, self.window[0]);
            let y = uniform(&mut state, self.window[1]);
            let p = PhasePoint::new(x, y);
            if domain(p) {
                out.push(p);
            } else {
                rejected += 1;
                if rejected > self.reject_budget {
                    return Err(Error::SamplingExhausted);
                }
            }
        }
        Ok(out)
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn uniform(state: &mut u64, (lo, hi): (f64, f64)) -> f64 {
    let u = (splitmix64(state) >> 11) as f64 / (1u64 << 53) as f64;
    lo + (hi - lo) * u
}

/// Result of one check: worst errors, the point where they occurred, the
/// declared tolerance and the verdict. `advisory` checks are published but
/// never gate an exit status.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub max_abs_err: f64,
    pub max_rel_err: f64,
    pub worst: Vec<f64>,
    pub tol: f64,
    pub pass: bool,
    pub advisory: bool,
    pub notes: String,
}

impl CheckReport {
    pub fn from_max_rel(name: &str, max_abs: f64, max_rel: f64, worst: Vec<f64>, tol: f64) -> Self {
        Self {
            name: name.to_string(),
            max_abs_err: max_abs,
            max_rel_err: max_rel,
            worst,
            tol,
            pass: max_rel <= tol,
            advisory: false,
            notes: String::new(),
        }
    }

    pub fn advisory(mut self) -> Self {
        self.advisory = true;
        self
    }

    pub fn with_notes(mut self, notes: &str) -> Self {
        self.notes = notes.to_string();
        self
    }
}

/// 17-significant-digit rendering (round-trip exact for f64).
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV serialization of a report batch (header + one row per check).
pub fn reports_to_csv(reports: &[CheckReport]) -> String {
    let mut out = String::from("name,pass,advisory,max_abs_err,max_rel_err,tol,worst,notes\n");
    for r in reports {
        let worst = r
            .worst
            .iter()
            .map(|v| fmt_float(*v))
            .collect::<Vec<_>>()
            .join(";");
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.name,
            r.pass,
            r.advisory,
            fmt_float(r.max_abs_err),
            fmt_float(r.max_rel_err),
            fmt_float(r.tol),
            worst,
            r.notes.replace(',', ";"),
        ));
    }
    out
}

/// Human-readable summary, one line per check.
pub fn reports_to_text(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let verdict = if r.advisory {
            "INFO"
        } else if r.pass {
            "PASS"
        } else {
            "FAIL"
        };
        out.push_str(&format!(
            "[{verdict}] {:<58} max_rel {:.3e} (tol {:.1e}){}\n",
            r.name,
            r.max_rel_err,
            r.tol,
            if r.notes.is_empty() {
                String::new()
            } else {
                format!("  -- {}", r.notes)
            }
        ));
    }
    out
}

/// Whether every non-advisory check passed.
pub fn all_required_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.pass || r.advisory)
}

/// Evaluate {h_i, h_j} − expected at sampled in-domain points with analytic
/// gradients; relative error is scaled by max(1, |expected|).
pub fn check_brackets(
    name: &str,
    hams: &[ScalarField],
    lambda: &ScalarFn,
    domain: &DomainFn,
    relations: &[BracketRelation],
    spec: &SampleSpec,
    tol: f64,
) -> Result<CheckReport> {
    let pts = spec.sample(domain)?;
    let mut max_abs = 0.0f64;
    let mut max_rel = 0.0f64;
    let mut worst = Vec::new();
    for p in pts {
        let values: Vec<f64> = hams.iter().map(|h| h.value(p)).collect();
        for rel in relations {
            let got = poisson_bracket(&hams[rel.i], &hams[rel.j], lambda, p)?;
            let want = (rel.expected)(&values);
            let abs = (got - want).abs();
            let rel_err = abs / want.abs().max(1.0);
            max_abs = max_abs.max(abs);
            if rel_err > max_rel {
                max_rel = rel_err;
                worst = vec![p.x, p.y];
            }
        }
    }
    Ok(CheckReport::from_max_rel(name, max_abs, max_rel, worst, tol))
}

/// Evaluate [X_i, X_j] − Σ coeff_k(p)·X_k at sampled points, Jacobian by
/// central differences of width `step` (≤ 0 selects the default).
pub fn check_commutators(
    name: &str,
    fields: &[VectorField2],
    relations: &[CommutatorRelation],
    domain: &DomainFn,
    spec: &SampleSpec,
    step: f64,
    tol: f64,
) -> Result<CheckReport> {
    let pts = spec.sample(domain)?;
    let mut max_abs = 0.0f64;
    let mut max_rel = 0.0f64;
    let mut worst = Vec::new();
    for p in pts {
        for rel in relations {
            let got = lie_bracket(&fields[rel.i], &fields[rel.j], p, step)?;
            let mut want = (0.0, 0.0);
            for (k, coeff) in &rel.terms {
                let c = coeff(p);
                let v = fields[*k].eval(p);
                want.0 += c * v.0;
                want.1 += c * v.1;
            }
            let abs = (got.0 - want.0).abs().max((got.1 - want.1).abs());
            let scale = want.0.abs().max(want.1.abs()).max(1.0);
            let rel_err = abs / scale;
            max_abs = max_abs.max(abs);
            if rel_err > max_rel {
                max_rel = rel_err;
                worst = vec![p.x, p.y];
            }
        }
    }
    Ok(CheckReport::from_max_rel(name, max_abs, max_rel, worst, tol))
}

/// Integrate the field and report the worst relative excursion of each
/// invariant from its initial value: max |I(t) − I(t₀)| / max(1, |I(t₀)|).
pub fn invariant_drift(
    name: &str,
    field: &OdeField,
    s0: &[f64],
    t_span: (f64, f64),
    cfg: &IntegratorConfig,
    invariants: &[&dyn Fn(&[f64]) -> f64],
    tol: f64,
) -> Result<CheckReport> {
    let tr = integrate_adaptive(field, t_span.0, t_span.1, s0, cfg, None)?;
    let base: Vec<f64> = invariants.iter().map(|f| f(s0)).collect();
    let mut max_rel = 0.0f64;
    let mut max_abs = 0.0f64;
    let mut worst = Vec::new();
    for (t, s) in &tr.samples {
        for (f, b) in invariants.iter().zip(&base) {
            let v = f(s);
            let abs = (v - b).abs();
            let rel = abs / b.abs().max(1.0);
            max_abs = max_abs.max(abs);
            if rel > max_rel {
                max_rel = rel;
                worst = vec![*t];
            }
        }
    }
    Ok(CheckReport::from_max_rel(name, max_abs, max_rel, worst, tol))
}

/// Least-squares slope of log|quantity(z)| against log z over the halving
/// ladder {z₀, z₀/2, ...}; passes when the measured order lies within
/// `order_tol` of `expected_order`.
pub fn convergence_order(
    name: &str,
    quantity: &dyn Fn(f64) -> f64,
    z0: f64,
    halvings: usize,
    expected_order: f64,
    order_tol: f64,
) -> CheckReport {
    let mut logs = Vec::new();
    let mut z = z0;
    for _ in 0..=halvings {
        let q = quantity(z).abs();
        if q > 0.0 && q.is_finite() {
            logs.push((z.ln(), q.ln()));
        }
        z *= 0.5;
    }
    let n = logs.len() as f64;
    let sx: f64 = logs.iter().map(|(a, _)| a).sum();
    let sy: f64 = logs.iter().map(|(_, b)| b).sum();
    let sxx: f64 = logs.iter().map(|(a, _)| a * a).sum();
    let sxy: f64 = logs.iter().map(|(a, b)| a * b).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let err = (slope - expected_order).abs();
    CheckReport {
        name: name.to_string(),
        max_abs_err: err,
        max_rel_err: err,
        worst: vec![slope],
        tol: order_tol,
        pass: err <= order_tol,
        advisory: false,
        notes: format!("measured order {slope:.4}"),
    }
}

/// Sup-norm gap between rule predictions and independently integrated truth
/// over a time grid; the caller supplies (predicted, truth) per grid index.
pub fn superposition_residual<F>(
    name: &str,
    grid_len: usize,
    predict_and_truth: F,
    tol: f64,
) -> CheckReport
where
    F: Fn(usize) -> Result<(Vec<f64>, Vec<f64>)>,
{
    let mut max_abs = 0.0f64;
    let mut worst = Vec::new();
    let mut failure: Option<String> = None;
    for k in 0..grid_len {
        match predict_and_truth(k) {
            Ok((pred, truth)) => {
                for (a, b) in pred.iter().zip(&truth) {
                    let gap = (a - b).abs();
                    if gap > max_abs {
                        max_abs = gap;
                        worst = vec![k as f64];
                    }
                }
            }
            Err(e) => {
                failure = Some(e.to_string());
                break;
            }
        }
    }
    let mut report = CheckReport::from_max_rel(name, max_abs, max_abs, worst, tol);
    if let Some(msg) = failure {
        report.pass = false;
        report.notes = msg;
    }
    report
}

/// Scale one generator so bracket tables must fail: the negative control
/// that proves tolerances are not vacuous.
pub fn corrupt_generator(hams: &[ScalarField], index: usize, factor: f64) -> Vec<ScalarField> {
    hams.iter()
        .enumerate()
        .map(|(i, h)| {
            if i == index {
                let hv = h.clone();
                let hg = h.clone();
                ScalarField::new(
                    move |p| factor * hv.value(p),
                    move |p| {
                        let (gx, gy) = hg.gradient(p);
                        (factor * gx, factor * gy)
                    },
                )
            } else {
                h.clone()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milne_pinney::mp_family;

    #[test]
    fn sampling_is_deterministic_and_respects_domain() {
        let spec = SampleSpec::with_window(50, [(-2.0, 2.0), (-2.0, 2.0)], 42);
        let domain: DomainFn = std::sync::Arc::new(|p: PhasePoint| p.x.abs() > 0.1);
        let a = spec.sample(&domain).unwrap();
        let b = spec.sample(&domain).unwrap();
        assert_eq!(a.len(), 50);
        assert!(a.iter().zip(&b).all(|(p, q)| p == q));
        assert!(a.iter().all(|p| p.x.abs() > 0.1));
    }

    #[test]
    fn sampling_exhaustion_is_an_error() {
        let spec = SampleSpec {
            reject_budget: 10,
            ..SampleSpec::default()
        };
        let empty: DomainFn = std::sync::Arc::new(|_| false);
        assert!(matches!(spec.sample(&empty), Err(Error::SamplingExhausted)));
    }

    #[test]
    fn mp_bracket_check_passes_and_negative_control_fails() {
        let fam = mp_family(4.0);
        let spec = SampleSpec::with_window(200, [(-2.0, 2.0), (-2.0, 2.0)], 7);
        let ok = check_brackets(
            "mp-brackets",
            &fam.hams,
            &fam.symp_density,
            &fam.domain,
            &fam.bracket_table,
            &spec,
            1e-8,
        )
        .unwrap();
        assert!(ok.pass, "max_rel {}", ok.max_rel_err);

        let corrupted = corrupt_generator(&fam.hams, 1, 1.05);
        let bad = check_brackets(
            "mp-brackets-corrupted",
            &corrupted,
            &fam.symp_density,
            &fam.domain,
            &fam.bracket_table,
            &spec,
            1e-8,
        )
        .unwrap();
        assert!(!bad.pass);
        assert!(bad.max_rel_err >= 1e-3, "corruption too weak: {}", bad.max_rel_err);
        assert_eq!(bad.worst.len(), 2, "worst point recorded");
    }

    #[test]
    fn commutator_check_mp_classical_and_zero_fields() {
        let fam = mp_family(2.0);
        let spec = SampleSpec::with_window(60, [(-2.0, 2.0), (-2.0, 2.0)], 11);
        let rep = check_commutators(
            "mp-commutators",
            &fam.fields,
            &fam.commutator_table,
            &fam.domain,
            &spec,
            0.0,
            1e-5,
        )
        .unwrap();
        assert!(rep.pass, "max_rel {}", rep.max_rel_err);

        let zeros = vec![VectorField2::zero(), VectorField2::zero()];
        let triv = vec![CommutatorRelation::with_constant_terms(0, 1, "[0,0]=0", &[])];
        let all: DomainFn = std::sync::Arc::new(|_| true);
        let rep = check_commutators("zero-fields", &zeros, &triv, &all, &spec, 0.0, 1e-12).unwrap();
        assert!(rep.pass && rep.max_abs_err < 1e-12);
    }

    #[test]
    fn deformed_commutator_check_passes_with_single_sinhc_power() {
        let tr = crate::milne_pinney::mp_deformed_triple(4.0, 0.2);
        let spec = SampleSpec::with_window(60, [(0.3, 2.0), (-2.0, 2.0)], 23);
        let rep = check_commutators(
            "mp-deformed-commutators",
            &tr.fields,
            &tr.commutator_table,
            &tr.domain,
            &spec,
            0.0,
            1e-4,
        )
        .unwrap();
        assert!(rep.pass, "max_rel {}", rep.max_rel_err);
    }

    #[test]
    fn drift_of_a_constant_invariant_is_zero() {
        let field = |_t: f64, s: &[f64], d: &mut [f64]| {
            d[0] = s[1];
            d[1] = -s[0];
        };
        let energy = |s: &[f64]| s[0] * s[0] + s[1] * s[1];
        let rep = invariant_drift(
            "circle-energy",
            &field,
            &[1.0, 0.0],
            (0.0, 10.0),
            &IntegratorConfig::with_tol(1e-11),
            &[&energy],
            1e-8,
        )
        .unwrap();
        assert!(rep.pass, "drift {}", rep.max_rel_err);
    }

    #[test]
    fn convergence_order_recovers_exact_powers() {
        let quad = |z: f64| 3.0 * z * z;
        let rep = convergence_order("exact-quadratic", &quad, 0.1, 6, 2.0, 1e-3);
        assert!(rep.pass, "slope {:?}", rep.worst);
        let lin = |z: f64| -0.5 * z;
        let rep = convergence_order("exact-linear", &lin, 0.1, 6, 1.0, 1e-3);
        assert!(rep.pass);
    }

    #[test]
    fn superposition_residual_measures_the_sup_gap() {
        let rep = superposition_residual(
            "toy rule",
            5,
            |k| Ok((vec![k as f64, 0.0], vec![k as f64 + 1e-7, 0.0])),
            1e-6,
        );
        assert!(rep.pass && (rep.max_abs_err - 1e-7).abs() < 1e-12);
        // a target equal to a particular solution yields machine-epsilon gap
        let rep = superposition_residual("self", 3, |k| Ok((vec![k as f64], vec![k as f64])), 1e-15);
        assert!(rep.pass && rep.max_abs_err == 0.0);
        // rule failures surface as non-passing reports with the message
        let rep = superposition_residual("broken", 2, |_| {
            Err(Error::Degenerate("no rule here".into()))
        }, 1.0);
        assert!(!rep.pass && rep.notes.contains("no rule here"));
    }

    #[test]
    fn report_serialization_is_stable() {
        let r = CheckReport::from_max_rel("demo", 1e-9, 2e-9, vec![0.25, -1.5], 1e-8);
        let csv1 = reports_to_csv(&[r.clone()]);
        let csv2 = reports_to_csv(&[r.clone()]);
        assert_eq!(csv1, csv2);
        assert!(csv1.starts_with("name,pass"));
        let txt = reports_to_text(&[r]);
        assert!(txt.contains("PASS"));
    }
}
