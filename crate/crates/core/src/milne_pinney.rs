//! The Milne–Pinney oscillator as a planar Lie–Hamilton system, its
//! non-standard deformation, the Ray–Reid style two-copy invariants, and the
//! position-dependent-mass reading of the deformed Hamiltonian.
//!
//! Classical data on x ≠ 0 with ω = dx∧dy (y is the conjugate momentum):
//! X₁ = −x∂y, X₂ = ½(y∂y − x∂x), X₃ = y∂x + (c/x³)∂y with
//! h₁ = x²/2, h₂ = −xy/2, h₃ = ½(y² + c/x²); the dynamics is
//! X₃ + Ω²(t)X₁.

use std::sync::Arc;

use crate::lh::{
    mt_deform, DeformedTriple, PhasePoint, PlanarLHFamily, ScalarField, TimeCoefficient,
    VectorField2,
};
use crate::numkit::special::sinhc_raw;
use crate::numkit::{cosh_over_sinhc2, x_coth};
use crate::sl2::{sl2_bracket_table, sl2_commutator_table};
use crate::{Error, Result};

/// Parameters of the (deformed) Milne–Pinney run: the Casimir/centrifugal
/// constant c, the deformation z, and the frequency Ω(t).
#[derive(Debug, Clone)]
pub struct MpParams {
    pub c: f64,
    pub z: f64,
    pub omega: TimeCoefficient,
}

/// The Milne–Pinney family for a given centrifugal constant.
pub fn mp_family(c: f64) -> PlanarLHFamily {
    PlanarLHFamily {
        name: "milne-pinney".into(),
        fields: vec![
            VectorField2::new(|p| (0.0, -p.x)),
            VectorField2::new(|p| (-0.5 * p.x, 0.5 * p.y)),
            VectorField2::new(move |p| (p.y, c / (p.x * p.x * p.x))),
        ],
        hams: vec![
            ScalarField::new(|p| 0.5 * p.x * p.x, |p| (p.x, 0.0)),
            ScalarField::new(|p| -0.5 * p.x * p.y, |p| (-0.5 * p.y, -0.5 * p.x)),
            ScalarField::new(
                move |p| 0.5 * (p.y * p.y + c / (p.x * p.x)),
                move |p| (-c / (p.x * p.x * p.x), p.y),
            ),
        ],
        symp_density: Arc::new(|_| 1.0),
        domain: Arc::new(|p| p.x != 0.0),
        casimir_c: c,
        bracket_table: sl2_bracket_table(),
        commutator_table: sl2_commutator_table(),
    }
}

/// Engine deformation of the family; the closed forms are
/// h_{z,1} = x²/2, h_{z,2} = −½ sinhc(zx²)·xy,
/// h_{z,3} = ½(sinhc(zx²)·y² + c/(x²·sinhc(zx²))).
pub fn mp_deformed_triple(c: f64, z: f64) -> DeformedTriple {
    mt_deform(&mp_family(c), z).expect("the Milne-Pinney family has three generators")
}

/// The deformed Milne–Pinney right-hand side in closed form:
/// dx/dt = sinhc(zx²)·y,
/// dy/dt = −Ω²(t)x + (c/x³)·cosh(zx²)/sinhc²(zx²) + (sinhc−cosh)(zx²)·y²/x.
pub fn mp_deformed_rhs(params: &MpParams) -> impl Fn(f64, PhasePoint) -> Result<(f64, f64)> {
    let MpParams { c, z, omega } = params.clone();
    move |t, p| {
        if p.x == 0.0 || !p.is_finite() {
            return Err(Error::OutOfDomain {
                t: Some(t),
                state: vec![p.x, p.y],
            });
        }
        let u = z * p.x * p.x;
        let s = sinhc_raw(u);
        let om = omega.eval(t);
        let dx = s * p.y;
        let dy = -om * om * p.x
            + c / (p.x * p.x * p.x) * cosh_over_sinhc2(u)
            + (s - u.cosh()) / p.x * p.y * p.y;
        Ok((dx, dy))
    }
}

/// The same right-hand side as a slice-based ODE field for the integrators;
/// domain exits surface as non-finite derivatives the integrator rejects.
pub fn mp_deformed_ode(params: &MpParams) -> impl Fn(f64, &[f64], &mut [f64]) {
    let rhs = mp_deformed_rhs(params);
    move |t, s, d| match rhs(t, PhasePoint::new(s[0], s[1])) {
        Ok((dx, dy)) => {
            d[0] = dx;
            d[1] = dy;
        }
        Err(_) => {
            d[0] = f64::NAN;
            d[1] = f64::NAN;
        }
    }
}

fn check_mp_domain(p: PhasePoint) -> Result<()> {
    if p.x != 0.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            t: None,
            state: vec![p.x, p.y],
        })
    }
}

/// Classical Ray–Reid invariant
/// F⁽²⁾ = ¼(x₁y₂ − x₂y₁)² + (c/4)(x₁²+x₂²)²/(x₁²x₂²).
pub fn mp_f2(c: f64, p1: PhasePoint, p2: PhasePoint) -> Result<f64> {
    check_mp_domain(p1)?;
    check_mp_domain(p2)?;
    let cross = p1.x * p2.y - p2.x * p1.y;
    let s = p1.x * p1.x + p2.x * p2.x;
    Ok(0.25 * cross * cross + 0.25 * c * s * s / (p1.x * p1.x * p2.x * p2.x))
}

/// Deformed Ray–Reid invariant:
/// ¼[sinhc(zx₁²)sinhc(zx₂²)(x₁y₂−x₂y₁)²
///   + c·sinhc²(z(x₁²+x₂²))/(sinhc(zx₁²)sinhc(zx₂²))·(x₁²+x₂²)²/(x₁²x₂²)]
/// ·e^{−zx₁²}e^{zx₂²}.
pub fn mp_f2_deformed(c: f64, z: f64, p1: PhasePoint, p2: PhasePoint) -> Result<f64> {
    check_mp_domain(p1)?;
    check_mp_domain(p2)?;
    let (u1, u2) = (z * p1.x * p1.x, z * p2.x * p2.x);
    let (s1, s2, s12) = (sinhc_raw(u1), sinhc_raw(u2), sinhc_raw(u1 + u2));
    let cross = p1.x * p2.y - p2.x * p1.y;
    let sq = p1.x * p1.x + p2.x * p2.x;
    Ok(0.25
        * (s1 * s2 * cross * cross
            + c * s12 * s12 / (s1 * s2) * sq * sq / (p1.x * p1.x * p2.x * p2.x))
        * (-u1 + u2).exp())
}

/// Position-dependent-mass profile of the deformed oscillator at (z, x):
/// mass m_z = zx²/sinh(zx²), oscillator potential U_osc = sinh(zx²)/z, and
/// the deformed centrifugal shape U_RW = (zx/sinh(zx²))².
pub fn pdm_profile(z: f64, x: f64) -> Result<(f64, f64, f64)> {
    if !x.is_finite() || !z.is_finite() {
        return Err(Error::NonFinite("pdm_profile argument"));
    }
    let u = z * x * x;
    let s = sinhc_raw(u);
    let m = 1.0 / s;
    let u_osc = x * x * s;
    let u_rw = 1.0 / (x * x * s * s);
    Ok((m, u_osc, u_rw))
}

/// Residual of the second-order deformed Milne–Pinney equation
/// x¨ + (1/x − zx/tanh(zx²))·ẋ² + Ω²·x·sinhc(zx²) − cz/(x·tanh(zx²)),
/// written through zx/tanh(zx²) = x_coth(zx²)/x for stability near zx² = 0.
pub fn mp_second_order_residual(
    c: f64,
    z: f64,
    omega_sq: f64,
    x: f64,
    xdot: f64,
    xddot: f64,
) -> f64 {
    let u = z * x * x;
    let xc = x_coth(u);
    xddot + (1.0 - xc) / x * xdot * xdot + omega_sq * x * sinhc_raw(u) - c * xc / (x * x * x)
}
