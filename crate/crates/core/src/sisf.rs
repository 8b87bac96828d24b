//! The SIS epidemic model with fluctuation variables: classical dynamics and
//! energy, the closed-form solution audit, three superposition rules, the
//! sl(2) embedding and its quantum deformation with two-copy constants.
//!
//! State variables: q = mean infected density, p = inverse standard
//! deviation, with ω = dq∧dp. The classical dynamics is
//! dq/dt = qρ₀ − q² − 1/p², dp/dt = −pρ₀ + 2pq.

use std::sync::Arc;

use crate::lh::{
    casimir_f, mt_deform, BracketRelation, CoproductSpec, DeformedTriple, PhasePoint,
    PlanarLHFamily, ScalarField, TimeCoefficient, VectorField2,
};
use crate::numkit::special::sinhc_raw;
use crate::riccati::Branch;
use crate::{Error, Result};

/// Parameters of a (deformed) SISf run.
#[derive(Debug, Clone)]
pub struct SisfParams {
    pub rho0: TimeCoefficient,
    pub z: f64,
    pub c: f64,
}

/// Epidemic state (q, p) with p ≠ 0. Physically meaningful runs keep
/// q ∈ (0,1) and p > 0; that region is advisory, not enforced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpiState {
    pub q: f64,
    pub p: f64,
}

impl EpiState {
    pub fn new(q: f64, p: f64) -> Self {
        Self { q, p }
    }
}

impl From<EpiState> for PhasePoint {
    fn from(s: EpiState) -> Self {
        PhasePoint::new(s.q, s.p)
    }
}

impl From<PhasePoint> for EpiState {
    fn from(p: PhasePoint) -> Self {
        EpiState::new(p.x, p.y)
    }
}

/// The classical SISf right-hand side for a reproduction coefficient ρ₀(t).
pub fn sisf_field(rho0: TimeCoefficient) -> impl Fn(f64, &[f64], &mut [f64]) {
    move |t, s, d| {
        let (q, p) = (s[0], s[1]);
        let r = rho0.eval(t);
        d[0] = q * r - q * q - 1.0 / (p * p);
        d[1] = -p * r + 2.0 * p * q;
    }
}

/// The conserved energy h = qp(ρ₀ − q) + 1/p for constant ρ₀.
pub fn sisf_hamiltonian(rho0: f64, s: EpiState) -> Result<f64> {
    if s.p == 0.0 || !s.q.is_finite() || !s.p.is_finite() {
        return Err(Error::OutOfDomain {
            t: None,
            state: vec![s.q, s.p],
        });
    }
    Ok(s.q * s.p * (rho0 - s.q) + 1.0 / s.p)
}

/// Fixed point of the constant-ρ₀ flow, (ρ₀/2, 2/ρ₀).
pub fn sisf_fixed_point(rho0: f64) -> EpiState {
    EpiState::new(0.5 * rho0, 2.0 / rho0)
}

/// The displayed closed-form general solution, implemented verbatim under the
/// reading q(t) = [ρ(C₁ρ²−4)e^{2ρt} + 2C₁C₂ρ²] / [(C₁²ρ²−4)e^{2ρt} +
/// 4C₂ρ²(C₁e^{ρt}+C₂)], p(t) = C₁ + (C₁²ρ²−4)/(4ρ²−C₂) + C₂e^{−ρt} with
/// ρ ≡ ρ₀. An audit target only; see [`sisf_closed_form_residual`].
pub fn sisf_closed_form(rho0: f64, c1: f64, c2: f64, t: f64) -> Result<EpiState> {
    let r = rho0;
    let e = (r * t).exp();
    let qden = (c1 * c1 * r * r - 4.0) * e * e + 4.0 * c2 * r * r * (c1 * e + c2);
    let pden = 4.0 * r * r - c2;
    if qden.abs() < 1e-14 || pden.abs() < 1e-14 {
        return Err(Error::Degenerate(
            "vanishing denominator in the closed-form solution".into(),
        ));
    }
    let q = (r * (c1 * r * r - 4.0) * e * e + 2.0 * c1 * c2 * r * r) / qden;
    let p = c1 + (c1 * c1 * r * r - 4.0) / pden + c2 * (-r * t).exp();
    Ok(EpiState::new(q, p))
}

/// Maximum mismatch between the closed form's finite-difference derivative
/// and the SISf right-hand side at time t.
pub fn sisf_closed_form_residual(rho0: f64, c1: f64, c2: f64, t: f64) -> Result<f64> {
    let h = 1e-5;
    let sm = sisf_closed_form(rho0, c1, c2, t - h)?;
    let s0 = sisf_closed_form(rho0, c1, c2, t)?;
    let sp = sisf_closed_form(rho0, c1, c2, t + h)?;
    let dq = (sp.q - sm.q) / (2.0 * h);
    let dp = (sp.p - sm.p) / (2.0 * h);
    let want_dq = s0.q * rho0 - s0.q * s0.q - 1.0 / (s0.p * s0.p);
    let want_dp = -s0.p * rho0 + 2.0 * s0.p * s0.q;
    Ok((dq - want_dq).abs().max((dp - want_dp).abs()))
}

// ---------------------------------------------------------------------------
// Superposition rules
// ---------------------------------------------------------------------------

/// The exact rule: the target from one particular solution and two constants.
///
/// In the translation-dilation plane coordinates of [`sisf_to_iso_plane`] the
/// pair invariants are k₁ = (x₁−x₂)(y₁−y₂) and k₂ = y₁/y₂ (both conserved
/// exactly along the flow for any ρ₀(t)); solving them for the target gives
/// y₁ = k₂y₂, x₁ = x₂ + k₁/(y₂(k₂−1)), mapped back to (q,p). The rule is
/// rational and single-valued, so no root branch arises; a radical-form
/// variant is kept in
/// [`sisf_superpose_exact_display`] as an advisory comparator (it does not
/// reproduce integrated targets).
pub fn sisf_superpose_exact(sol2: EpiState, k1: f64, k2: f64) -> Result<EpiState> {
    if (k2 - 1.0).abs() < 1e-14 {
        return Err(Error::Degenerate(
            "k2 = 1 makes the exact rule degenerate (coincident energies)".into(),
        ));
    }
    let b = sisf_to_iso_plane(sol2)?;
    if b.y.abs() < 1e-14 {
        return Err(Error::Degenerate("particular solution sits on the singular set".into()));
    }
    let y1 = k2 * b.y;
    let x1 = b.x + k1 / (b.y * (k2 - 1.0));
    iso_plane_to_sisf(PhasePoint::new(x1, y1))
}

/// Constants of the exact rule from the target and the particular solution at
/// a common time: (k₁, k₂) = ((x₁−x₂)(y₁−y₂), y₁/y₂) in plane coordinates.
pub fn sisf_exact_constants(target: EpiState, sol2: EpiState) -> Result<(f64, f64)> {
    let a = sisf_to_iso_plane(target)?;
    let b = sisf_to_iso_plane(sol2)?;
    if b.y.abs() < 1e-14 {
        return Err(Error::Degenerate("particular solution sits on the singular set".into()));
    }
    Ok(((a.x - b.x) * (a.y - b.y), a.y / b.y))
}

/// The radical-form variant of the exact rule, kept verbatim with its
/// selectable root branch; advisory only (it does not track integrated
/// targets).
pub fn sisf_superpose_exact_display(
    sol2: EpiState,
    k1: f64,
    k2: f64,
    branch: Branch,
) -> Result<EpiState> {
    let (q2, p2) = (sol2.q, sol2.p);
    if k2.abs() < 1e-14 {
        return Err(Error::Degenerate("k2 = 0 in the displayed exact rule".into()));
    }
    let pq = p2 * q2;
    if (k2 - pq).abs() < 1e-14 {
        return Err(Error::Degenerate("p2 q2 = k2 in the displayed exact rule".into()));
    }
    let disc = 4.0 * k2 * k2 * pq * pq + k1 * k1 * k2 * pq - 4.0 * k2 * k2 * k2 * pq
        - 4.0 * k2 * pq
        + 4.0 * k2 * k2;
    if disc < 0.0 {
        return Err(Error::Degenerate(format!(
            "negative discriminant {disc} in the displayed exact rule"
        )));
    }
    let q1 = -q2 * (k1 * k2 + branch.sign() * disc.sqrt()) / (2.0 * k2 * (-pq + k2));
    let pden = 2.0
        * k2
        * (2.0 * q1 * q1 * q1 * k2 + q1 * q1 * k1 * q2 - 2.0 * q1 * k2 * q2 * q2
            - k1 * q2 * q2 * q2);
    if pden.abs() < 1e-14 {
        return Err(Error::Degenerate(
            "vanishing denominator for p1 in the displayed exact rule".into(),
        ));
    }
    let p1 = (4.0 * q1 * q1 * k2 * k2 + 4.0 * q1 * q2 * k1 * k2 + q2 * q2 * k1 * k1
        - 4.0 * q2 * q2)
        / pden;
    Ok(EpiState::new(q1, p1))
}

/// Constants of the linearized rule from the target and the particular
/// solution at a common time, by inverting the two power laws:
/// with u = ln(q₂p₂) ≠ 0, 1+k₁+k₂ = −u/ln(q₁/q₂) and
/// k₁−k₂ = √2·ln(p₁q₂)(1+k₁+k₂)/u.
pub fn sisf_linear_constants(target: EpiState, sol2: EpiState) -> Result<(f64, f64)> {
    let base = sol2.q * sol2.p;
    if !(base > 0.0) || base == 1.0 || !(target.q / sol2.q > 0.0) || !(target.p * sol2.q > 0.0) {
        return Err(Error::Degenerate(
            "linear-rule constants need positive power-law bases".into(),
        ));
    }
    let u = base.ln();
    let ratio = (target.q / sol2.q).ln();
    if ratio.abs() < 1e-14 {
        return Err(Error::Degenerate("target coincides with the particular solution".into()));
    }
    let s1 = -u / ratio; // 1 + k1 + k2
    let d = std::f64::consts::SQRT_2 * (target.p * sol2.q).ln() * s1 / u;
    let s = s1 - 1.0;
    Ok(((s + d) / 2.0, (s - d) / 2.0))
}

/// The linearized rule q₁ = q₂(q₂p₂)^{−1/(1+k₁+k₂)},
/// p₁ = (1/q₂)(q₂p₂)^{(√2/2)(k₁−k₂)/(1+k₁+k₂)}.
pub fn sisf_superpose_linear(sol2: EpiState, k1: f64, k2: f64) -> Result<EpiState> {
    let (q2, p2) = (sol2.q, sol2.p);
    let denom = 1.0 + k1 + k2;
    if denom.abs() < 1e-14 {
        return Err(Error::Degenerate("1 + k1 + k2 = 0 in the linearized rule".into()));
    }
    let base = q2 * p2;
    if !(base > 0.0) {
        return Err(Error::OutOfDomain {
            t: None,
            state: vec![q2, p2],
        });
    }
    let q1 = q2 * base.powf(-1.0 / denom);
    let p1 = base.powf(0.5 * std::f64::consts::SQRT_2 * (k1 - k2) / denom) / q2;
    Ok(EpiState::new(q1, p1))
}

/// Plane-level translation-dilation rule: the target from two particular
/// solutions and the constants k₁ = (x₁−x₂)(y₁−y₂), k₂ = (x₁−x₃)(y₁−y₃),
/// k₃ = (x₃−x₂)(y₃−y₂):
/// x₁ = ½(x₂+x₃) + (k₂−k₁±B)/(2(y₂−y₃)),
/// y₁ = ½(y₂+y₃) + (k₂−k₁∓B)/(2(x₂−x₃)),
/// B = √(k₁²+k₂²+k₃² − 2(k₁k₂+k₁k₃+k₂k₃)).
pub fn iso11_superpose(
    sol2: PhasePoint,
    sol3: PhasePoint,
    k1: f64,
    k2: f64,
    k3: f64,
    branch: Branch,
) -> Result<PhasePoint> {
    if (sol2.y - sol3.y).abs() < 1e-14 || (sol2.x - sol3.x).abs() < 1e-14 {
        return Err(Error::Degenerate("coincident particular solutions in the plane rule".into()));
    }
    let b2 = k1 * k1 + k2 * k2 + k3 * k3 - 2.0 * (k1 * k2 + k1 * k3 + k2 * k3);
    if b2 < 0.0 {
        return Err(Error::Degenerate(format!("B² = {b2} < 0 in the plane rule")));
    }
    let b = branch.sign() * b2.sqrt();
    Ok(PhasePoint::new(
        0.5 * (sol2.x + sol3.x) + (k2 - k1 + b) / (2.0 * (sol2.y - sol3.y)),
        0.5 * (sol2.y + sol3.y) + (k2 - k1 - b) / (2.0 * (sol2.x - sol3.x)),
    ))
}

/// SISf state into the translation-dilation plane:
/// x = −qp²/(1 − q²p²), y = 1/p − q²p.
///
/// This is the canonical change sending the Hamiltonian pair (−qp, 1/p−q²p)
/// onto (xy, y), so the dynamics becomes ρ₀(t)(−x∂x + y∂y) + ∂x and the pair
/// invariants (x₁−x₂)(y₁−y₂) and y₁/y₂ are exact constants. (The shorter
/// candidate x = −qp fails the bracket correspondence it would need.)
pub fn sisf_to_iso_plane(s: EpiState) -> Result<PhasePoint> {
    let a = s.p * s.q;
    if s.p == 0.0 || a * a == 1.0 || !s.q.is_finite() || !s.p.is_finite() {
        return Err(Error::OutOfDomain {
            t: None,
            state: vec![s.q, s.p],
        });
    }
    Ok(PhasePoint::new(
        -s.q * s.p * s.p / (1.0 - a * a),
        1.0 / s.p - s.q * s.q * s.p,
    ))
}

/// Inverse of [`sisf_to_iso_plane`]: p = (1 − x²y²)/y, q = −xy/p.
pub fn iso_plane_to_sisf(p: PhasePoint) -> Result<EpiState> {
    let xy = p.x * p.y;
    if p.y == 0.0 || (xy * xy - 1.0).abs() < 1e-14 {
        return Err(Error::OutOfDomain {
            t: None,
            state: vec![p.x, p.y],
        });
    }
    let pp = (1.0 - xy * xy) / p.y;
    Ok(EpiState::new(-xy / pp, pp))
}

/// The SISf wrapper of the plane rule: conjugate both particular solutions
/// through the coordinate change, apply [`iso11_superpose`], map back.
pub fn sisf_superpose_iso11(
    sol2: EpiState,
    sol3: EpiState,
    k1: f64,
    k2: f64,
    k3: f64,
    branch: Branch,
) -> Result<EpiState> {
    let a = sisf_to_iso_plane(sol2)?;
    let b = sisf_to_iso_plane(sol3)?;
    iso_plane_to_sisf(iso11_superpose(a, b, k1, k2, k3, branch)?)
}

// ---------------------------------------------------------------------------
// sl(2) embedding and deformation
// ---------------------------------------------------------------------------

/// The SISf pair as a two-generator family with gradient-consistent fields:
/// h₁ = −qp (field (−q, p)) and h₂ = 1/p − q²p (field (−q²−1/p², 2qp)); the
/// classical dynamics is the combination −ρ₀(t)·X_{h₁} + X_{h₂}.
pub fn sisf_family() -> PlanarLHFamily {
    let h1 = ScalarField::new(|p| -p.x * p.y, |p| (-p.y, -p.x));
    let h2 = ScalarField::new(
        |p| 1.0 / p.y - p.x * p.x * p.y,
        |p| (-2.0 * p.x * p.y, -1.0 / (p.y * p.y) - p.x * p.x),
    );
    let fields = vec![
        VectorField2::new(|p| (-p.x, p.y)),
        VectorField2::new(|p| (-p.x * p.x - 1.0 / (p.y * p.y), 2.0 * p.x * p.y)),
    ];
    PlanarLHFamily {
        name: "sisf".into(),
        fields,
        hams: vec![h1, h2],
        symp_density: Arc::new(|_| 1.0),
        domain: Arc::new(|p| p.y != 0.0),
        casimir_c: 0.0,
        bracket_table: vec![BracketRelation::new(0, 1, "{h1,h2} = h2", |v| v[1])],
        commutator_table: Vec::new(),
    }
}

/// The four-generator translation-dilation family behind the plane rule:
/// h₀ = 1, h₁ = y, h₂ = −x, h₃ = xy with {h₁,h₂} = h₀, {h₁,h₃} = −h₁,
/// {h₂,h₃} = h₂.
pub fn iso11_family() -> PlanarLHFamily {
    PlanarLHFamily {
        name: "iso11".into(),
        fields: vec![
            VectorField2::zero(),
            VectorField2::new(|_| (1.0, 0.0)),
            VectorField2::new(|_| (0.0, 1.0)),
            VectorField2::new(|p| (p.x, -p.y)),
        ],
        hams: vec![
            ScalarField::constant(1.0),
            ScalarField::new(|p| p.y, |_| (0.0, 1.0)),
            ScalarField::new(|p| -p.x, |_| (-1.0, 0.0)),
            ScalarField::new(|p| p.x * p.y, |p| (p.y, p.x)),
        ],
        symp_density: Arc::new(|_| 1.0),
        domain: Arc::new(|_| true),
        casimir_c: 0.0,
        bracket_table: vec![
            BracketRelation::new(1, 2, "{h1,h2} = h0", |v| v[0]),
            BracketRelation::new(1, 3, "{h1,h3} = -h1", |v| -v[1]),
            BracketRelation::new(2, 3, "{h2,h3} = h2", |v| v[2]),
        ],
        commutator_table: Vec::new(),
    }
}

/// The sl(2) extension of the SISf pair: h₁ = −qp, h₂ = 1/p − q²p and
/// h₃ = p(c/4 − q²p²)/(1 − q²p²), with
/// {h₁,h₂} = h₂, {h₁,h₃} = −h₃, {h₂,h₃} = 2h₁ and h₂h₃ + h₁² = c/4.
pub fn sisf_sl2_family(c: f64) -> PlanarLHFamily {
    let h1 = ScalarField::new(|p| -p.x * p.y, |p| (-p.y, -p.x));
    let h2 = ScalarField::new(
        |p| 1.0 / p.y - p.x * p.x * p.y,
        |p| (-2.0 * p.x * p.y, -1.0 / (p.y * p.y) - p.x * p.x),
    );
    let g = move |a: f64| (c / 4.0 - a * a) / (1.0 - a * a);
    let gp = move |a: f64| {
        let d = 1.0 - a * a;
        2.0 * a * (c / 4.0 - 1.0) / (d * d)
    };
    let h3 = ScalarField::new(
        move |p| {
            let a = p.x * p.y;
            p.y * g(a)
        },
        move |p| {
            let a = p.x * p.y;
            (p.y * p.y * gp(a), g(a) + a * gp(a))
        },
    );
    let hams = vec![h1, h2, h3];
    let fields: Vec<VectorField2> = hams
        .iter()
        .map(|h| {
            let h = h.clone();
            VectorField2::new(move |p| {
                let (gx, gy) = h.gradient(p);
                (gy, -gx)
            })
        })
        .collect();
    PlanarLHFamily {
        name: "sisf-sl2".into(),
        fields,
        hams,
        symp_density: Arc::new(|_| 1.0),
        domain: Arc::new(|p| p.y != 0.0 && (p.x * p.y).abs() != 1.0),
        casimir_c: c,
        bracket_table: vec![
            BracketRelation::new(0, 1, "{h1,h2} = h2", |v| v[1]),
            BracketRelation::new(0, 2, "{h1,h3} = -h3", |v| -v[2]),
            BracketRelation::new(1, 2, "{h2,h3} = 2h1", |v| 2.0 * v[0]),
        ],
        commutator_table: Vec::new(),
    }
}

/// The deformed embedding, pivot h₂:
/// h_{z;1} = sinhc(2zh₂)·h₁, h_{z;2} = h₂,
/// h_{z;3} = c/(4 sinhc(2zh₂)h₂) − sinhc(2zh₂)h₁²/h₂.
pub struct SisfDeformed {
    pub triple: DeformedTriple,
    pub z: f64,
    pub c: f64,
}

pub fn sisf_deformed(z: f64, c: f64) -> SisfDeformed {
    let fam = sisf_sl2_family(c);
    // canonical engine order with pivot first: (v1, v2, v3) = (h2, h1, -h3),
    // Casimir constant c' = 4(v1 v3 - v2²) = -4(h2h3 + h1²) = -c
    let neg_h3 = {
        let h3 = fam.hams[2].clone();
        ScalarField::new(
            move |p| -h3.value(p),
            {
                let h3 = fam.hams[2].clone();
                move |p| {
                    let (gx, gy) = h3.gradient(p);
                    (-gx, -gy)
                }
            },
        )
    };
    let vfam = PlanarLHFamily {
        name: "sisf-sl2-canonical-order".into(),
        fields: vec![
            fam.fields[1].clone(),
            fam.fields[0].clone(),
            {
                let h = neg_h3.clone();
                VectorField2::new(move |p| {
                    let (gx, gy) = h.gradient(p);
                    (gy, -gx)
                })
            },
        ],
        hams: vec![fam.hams[1].clone(), fam.hams[0].clone(), neg_h3],
        symp_density: fam.symp_density.clone(),
        domain: fam.domain.clone(),
        casimir_c: -c,
        bracket_table: Vec::new(),
        commutator_table: Vec::new(),
    };
    let engine = mt_deform(&vfam, z).expect("three generators");
    // back to family order (h1, h2, h3) = (v2, v1, -v3)
    let hz1 = engine.hams[1].clone();
    let hz2 = engine.hams[0].clone();
    let hz3 = {
        let h = engine.hams[2].clone();
        ScalarField::new(
            move |p| -h.value(p),
            {
                let h = engine.hams[2].clone();
                move |p| {
                    let (gx, gy) = h.gradient(p);
                    (-gx, -gy)
                }
            },
        )
    };
    let grad_field = |h: &ScalarField| {
        let h = h.clone();
        VectorField2::new(move |p| {
            let (gx, gy) = h.gradient(p);
            (gy, -gx)
        })
    };
    let triple = DeformedTriple {
        z,
        fields: [grad_field(&hz1), grad_field(&hz2), grad_field(&hz3)],
        hams: [hz1, hz2.clone(), hz3],
        coproduct: CoproductSpec { pivot: 1 },
        canon: [(1, 1.0), (0, 1.0), (2, -1.0)],
        casimir_c: -c,
        symp_density: fam.symp_density.clone(),
        domain: {
            let base = fam.domain.clone();
            Arc::new(move |p| base(p) && hz2.value(p) != 0.0)
        },
        bracket_table: vec![
            BracketRelation::new(0, 1, "{hz1,hz2} = sinhc(2z hz2) hz2", move |v| {
                sinhc_raw(2.0 * z * v[1]) * v[1]
            }),
            BracketRelation::new(0, 2, "{hz1,hz3} = -cosh(2z hz2) hz3", move |v| {
                -(2.0 * z * v[1]).cosh() * v[2]
            }),
            BracketRelation::new(1, 2, "{hz2,hz3} = 2 hz1", |v| 2.0 * v[0]),
        ],
        commutator_table: Vec::new(),
    };
    SisfDeformed { triple, z, c }
}

impl SisfDeformed {
    /// Deformed dynamics −ρ₀(t)·X_{z,1} + X_{z,2}, whose z → 0 limit is the
    /// classical SISf system.
    pub fn ode(&self, rho0: TimeCoefficient) -> impl Fn(f64, &[f64], &mut [f64]) + '_ {
        move |t, s, d| {
            let p = PhasePoint::new(s[0], s[1]);
            let r = rho0.eval(t);
            let a = self.triple.fields[0].eval(p);
            let b = self.triple.fields[1].eval(p);
            d[0] = -r * a.0 + b.0;
            d[1] = -r * a.1 + b.1;
        }
    }

    /// Total deформed Hamiltonian −ρ₀·h_{z;1} + h_{z;2}.
    pub fn hamiltonian(&self, rho0: f64, s: EpiState) -> f64 {
        let p = PhasePoint::from(s);
        -rho0 * self.triple.hams[0].value(p) + self.triple.hams[1].value(p)
    }

    /// Two-copy constant built on the pivot-h₂ coproduct:
    /// F_z⁽²⁾ = sinhc(2z h₂⁽²⁾)·h₂⁽²⁾·h₃⁽²⁾ + (h₁⁽²⁾)², whose one-copy
    /// analogue is identically c/4.
    pub fn f2(&self, p1: EpiState, p2: EpiState) -> Result<f64> {
        let v = self.triple.chain_copy_values(&[p1.into(), p2.into()])?;
        Ok(-casimir_f(&self.triple, v, self.z))
    }
}

/// Both two-copy constants at a pair of states: the direct pair and the
/// order-swapped pair (the permuted variant; on the coupled three-copy flow
/// the conserved pairs are (1,2) and (2,3)).
pub fn sisf_deformed_constants(
    z: f64,
    c: f64,
    p1: EpiState,
    p2: EpiState,
) -> Result<(f64, f64)> {
    let def = sisf_deformed(z, c);
    Ok((def.f2(p1, p2)?, def.f2(p2, p1)?))
}
