//! Complex, coupled and second-order Riccati systems, their Milne–Pinney
//! changes of variables, the closed-form deformations, and the five-generator
//! superposition rule.
//!
//! The complex Riccati system is the P₂ class in (u,v) coordinates and the
//! coupled pair is the I₄ class in (u,v); both families and their deformed
//! triples reuse the class data (the deformed coupled two-copy invariant is
//! therefore the class form whose inner exponential weights match the
//! coproduct pipeline).

use std::sync::Arc;

use crate::lh::{
    DeformedTriple, PhasePoint, PlanarLHFamily, ScalarField, TDependentField, TimeCoefficient,
    VectorField2,
};
use crate::sl2::{self, Sl2Class};
use crate::{Error, Result};

/// Root-branch selector for the two-valued changes of variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Self::Plus => 1.0,
            Self::Minus => -1.0,
        }
    }
}

/// Complex Riccati ż = b₁(t) + b₂(t)z + b₃(t)z² split into real coordinates
/// z = u + iv: the P₂ family with c = 4 on v ≠ 0, ω = du∧dv/v².
pub fn complex_riccati_family() -> PlanarLHFamily {
    let mut fam = sl2::sl2_class_family(Sl2Class::P2);
    fam.name = "complex-riccati".into();
    fam
}

/// Deformed complex Riccati triple: h_{z,1} = −1/v,
/// h_{z,2} = −sinhc(2z/v)·u/v, h_{z,3} = −(sinhc²(2z/v)u² + v²)/(sinhc(2z/v)v).
pub fn complex_riccati_deformed(z: f64) -> DeformedTriple {
    sl2::table42_triple(Sl2Class::P2, z)
}

/// Coupled Riccati pair u̇ = a₀ + a₁u + a₂u², v̇ = a₀ + a₁v + a₂v²: the I₄
/// family with c = −1 on u ≠ v, ω = du∧dv/(u−v)².
pub fn coupled_riccati_family() -> PlanarLHFamily {
    let mut fam = sl2::sl2_class_family(Sl2Class::I4);
    fam.name = "coupled-riccati".into();
    fam
}

/// Deformed coupled Riccati triple (the I₄ closed forms).
pub fn coupled_riccati_deformed(z: f64) -> DeformedTriple {
    sl2::table42_triple(Sl2Class::I4, z)
}

/// Riccati-plane point (u,v) to Milne–Pinney (x,y) with c = 4:
/// x = ±√2/√|v|, y = ∓√2·u/√|v|.
pub fn complex_to_mp(p: PhasePoint, branch: Branch) -> Result<PhasePoint> {
    if p.y == 0.0 || !p.is_finite() {
        return Err(Error::OutOfDomain {
            t: None,
            state: vec![p.x, p.y],
        });
    }
    let s = branch.sign();
    let r = 2.0f64.sqrt() / p.y.abs().sqrt();
    Ok(PhasePoint::new(s * r, -s * r * p.x))
}

/// Milne–Pinney (x,y) to the Riccati plane (c = 4): u = −y/x, v = 2/x²
/// (the v > 0 sheet).
pub fn mp_to_complex(p: PhasePoint) -> Result<PhasePoint> {
    if p.x == 0.0 || !p.is_finite() {
        return Err(Error::OutOfDomain {
            t: None,
            state: vec![p.x, p.y],
        });
    }
    Ok(PhasePoint::new(-p.y / p.x, 2.0 / (p.x * p.x)))
}

/// Coupled-Riccati (u,v) to Milne–Pinney (x,y) with c = −1:
/// x = ±√2/√|u−v|, y = ∓√2(u+v)/(2√|u−v|).
pub fn coupled_to_mp(p: PhasePoint, branch: Branch) -> Result<PhasePoint> {
    let d = p.x - p.y;
    if d == 0.0 || !p.is_finite() {
        return Err(Error::OutOfDomain {
            t: None,
            state: vec![p.x, p.y],
        });
    }
    let s = branch.sign();
    let r = 2.0f64.sqrt() / d.abs().sqrt();
    Ok(PhasePoint::new(s * r, -s * r * (p.x + p.y) / 2.0))
}

/// Milne–Pinney (x,y) to the coupled-Riccati plane (c = −1):
/// u = 1/x² − y/x, v = −1/x² − y/x (the u > v sheet).
pub fn mp_to_coupled(p: PhasePoint) -> Result<PhasePoint> {
    if p.x == 0.0 || !p.is_finite() {
        return Err(Error::OutOfDomain {
            t: None,
            state: vec![p.x, p.y],
        });
    }
    let a = 1.0 / (p.x * p.x);
    let b = -p.y / p.x;
    Ok(PhasePoint::new(a + b, -a + b))
}

/// The five-generator system behind Hamiltonian second-order Riccati
/// equations, on the open half plane p < 0 with ω = dx∧dp:
/// X₁ = (1/√(−p))∂x, X₂ = ∂x, X₃ = x∂x − p∂p, X₄ = x²∂x − 2xp∂p,
/// X₅ = (x/√(−p))∂x + 2√(−p)∂p with Hamiltonians
/// h₁ = −2√(−p), h₂ = p, h₃ = xp, h₄ = x²p, h₅ = −2x√(−p) (h₆ = 1 central).
pub fn so_riccati_family() -> PlanarLHFamily {
    let sq = |p: f64| (-p).sqrt();
    PlanarLHFamily {
        name: "second-order-riccati".into(),
        fields: vec![
            VectorField2::new(move |p| (1.0 / sq(p.y), 0.0)),
            VectorField2::new(|_| (1.0, 0.0)),
            VectorField2::new(|p| (p.x, -p.y)),
            VectorField2::new(|p| (p.x * p.x, -2.0 * p.x * p.y)),
            VectorField2::new(move |p| (p.x / sq(p.y), 2.0 * sq(p.y))),
        ],
        hams: vec![
            ScalarField::new(move |p| -2.0 * sq(p.y), move |p| (0.0, 1.0 / sq(p.y))),
            ScalarField::new(|p| p.y, |_| (0.0, 1.0)),
            ScalarField::new(|p| p.x * p.y, |p| (p.y, p.x)),
            ScalarField::new(|p| p.x * p.x * p.y, |p| (2.0 * p.x * p.y, p.x * p.x)),
            ScalarField::new(
                move |p| -2.0 * p.x * sq(p.y),
                move |p| (-2.0 * sq(p.y), p.x / sq(p.y)),
            ),
        ],
        symp_density: Arc::new(|_| 1.0),
        domain: Arc::new(|p| p.y < 0.0),
        casimir_c: 0.0,
        bracket_table: Vec::new(),
        commutator_table: vec![
            crate::lh::CommutatorRelation::with_constant_terms(0, 2, "[X1,X3] = X1/2", &[(0, 0.5)]),
            crate::lh::CommutatorRelation::with_constant_terms(0, 3, "[X1,X4] = X5", &[(4, 1.0)]),
            crate::lh::CommutatorRelation::with_constant_terms(1, 2, "[X2,X3] = X2", &[(1, 1.0)]),
            crate::lh::CommutatorRelation::with_constant_terms(1, 3, "[X2,X4] = 2X3", &[(2, 2.0)]),
            crate::lh::CommutatorRelation::with_constant_terms(1, 4, "[X2,X5] = X1", &[(0, 1.0)]),
            crate::lh::CommutatorRelation::with_constant_terms(2, 3, "[X3,X4] = X4", &[(3, 1.0)]),
            crate::lh::CommutatorRelation::with_constant_terms(2, 4, "[X3,X5] = X5/2", &[(4, 0.5)]),
        ],
    }
}

/// The t-dependent second-order Riccati dynamics X₁ − a₀X₂ − a₁X₃ − a₂X₄,
/// whose integral curves solve dx/dt = 1/√(−p) − a₀ − a₁x − a₂x²,
/// dp/dt = p(a₁ + 2a₂x).
pub fn so_riccati_field(
    a0: TimeCoefficient,
    a1: TimeCoefficient,
    a2: TimeCoefficient,
) -> TDependentField {
    let fam = so_riccati_family();
    let neg = |c: TimeCoefficient| match c {
        TimeCoefficient::Constant(a) => TimeCoefficient::Constant(-a),
        TimeCoefficient::Sinusoid {
            offset,
            amplitude,
            omega,
            phase,
        } => TimeCoefficient::Sinusoid {
            offset: -offset,
            amplitude: -amplitude,
            omega,
            phase,
        },
        TimeCoefficient::Polynomial(cs) => {
            TimeCoefficient::Polynomial(cs.into_iter().map(|c| -c).collect())
        }
        TimeCoefficient::Tabulated(ks) => {
            TimeCoefficient::Tabulated(ks.into_iter().map(|(t, v)| (t, -v)).collect())
        }
    };
    crate::lh::t_dependent_field(
        &fam.fields,
        &[
            TimeCoefficient::Constant(1.0),
            neg(a0),
            neg(a1),
            neg(a2),
            TimeCoefficient::Constant(0.0),
        ],
    )
    .expect("five fields, five coefficients")
}

fn require_negative_momentum(points: &[PhasePoint]) -> Result<()> {
    for p in points {
        if !(p.y < 0.0) || !p.is_finite() {
            return Err(Error::OutOfDomain {
                t: None,
                state: vec![p.x, p.y],
            });
        }
    }
    Ok(())
}

/// The cyclic first integrals of the second-order Riccati system. `f0` needs
/// the three particular solutions only; `f1` and `f2` additionally involve
/// the target point.
#[derive(Debug, Clone, Copy)]
pub struct SoRiccatiIntegrals {
    pub f0: f64,
    pub f1: Option<f64>,
    pub f2: Option<f64>,
}

/// F₀ = (x₂−x₃)√(p₂p₃) + (x₃−x₁)√(p₃p₁) + (x₁−x₂)√(p₁p₂) and, when the
/// target is supplied,
/// F₁ = (x₁−x₂)√(p₁p₂) + (x₂−x₀)√(p₂p₀) + (x₀−x₁)√(p₀p₁),
/// F₂ = (x₁−x₃)√(p₁p₃) + (x₃−x₀)√(p₃p₀) + (x₀−x₁)√(p₀p₁).
pub fn so_riccati_integrals(
    s1: PhasePoint,
    s2: PhasePoint,
    s3: PhasePoint,
    target: Option<PhasePoint>,
) -> Result<SoRiccatiIntegrals> {
    require_negative_momentum(&[s1, s2, s3])?;
    let g = |a: PhasePoint, b: PhasePoint| (a.y * b.y).sqrt();
    let f0 = (s2.x - s3.x) * g(s2, s3) + (s3.x - s1.x) * g(s3, s1) + (s1.x - s2.x) * g(s1, s2);
    let (f1, f2) = match target {
        Some(s0) => {
            require_negative_momentum(&[s0])?;
            let f1 =
                (s1.x - s2.x) * g(s1, s2) + (s2.x - s0.x) * g(s2, s0) + (s0.x - s1.x) * g(s0, s1);
            let f2 =
                (s1.x - s3.x) * g(s1, s3) + (s3.x - s0.x) * g(s3, s0) + (s0.x - s1.x) * g(s0, s1);
            (Some(f1), Some(f2))
        }
        None => (None, None),
    };
    Ok(SoRiccatiIntegrals { f0, f1, f2 })
}

/// Superposition rule of the second-order Riccati system: the target (x₀,p₀)
/// from three particular solutions at a common time and the constants
/// k₁ = F₁, k₂ = F₂.
pub fn so_riccati_superpose(
    s1: PhasePoint,
    s2: PhasePoint,
    s3: PhasePoint,
    k1: f64,
    k2: f64,
) -> Result<PhasePoint> {
    require_negative_momentum(&[s1, s2, s3])?;
    let sq = |p: PhasePoint| (-p.y).sqrt();
    let f0 = so_riccati_integrals(s1, s2, s3, None)?.f0;
    let gamma = |a: PhasePoint, b: PhasePoint| sq(a) * a.x - sq(b) * b.x;
    let denom = k1 * (sq(s1) - sq(s3)) + k2 * (sq(s2) - sq(s1)) - sq(s1) * f0;
    if denom.abs() < 1e-12 || f0.abs() < 1e-12 {
        return Err(Error::Degenerate(
            "vanishing denominator in the second-order Riccati rule".into(),
        ));
    }
    let x0 = (k1 * gamma(s1, s3) + k2 * gamma(s2, s1) - f0 * s1.x * sq(s1)) / denom;
    let root = k1 / f0 * (sq(s3) - sq(s1)) + k2 / f0 * (sq(s1) - sq(s2)) + sq(s1);
    Ok(PhasePoint::new(x0, -root * root))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lh::{casimir_f, lie_bracket, poisson_bracket, two_copy_values};
    use crate::numkit::{integrate_adaptive, integrate_adaptive_through, IntegratorConfig};
    use crate::sl2::class_f2;

    #[test]
    fn complex_family_is_p2_with_unit_casimir_quarter() {
        let fam = complex_riccati_family();
        for p in [PhasePoint::new(0.4, 1.2), PhasePoint::new(-1.0, -0.6)] {
            assert!((fam.casimir_value(p).unwrap() - 1.0).abs() < 1e-12);
        }
        // coincident-copy value of the tabulated two-copy invariant
        let p = PhasePoint::new(0.3, 0.8);
        assert!((class_f2(Sl2Class::P2, p, p).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn coupled_family_casimir_and_coincident_f2() {
        let fam = coupled_riccati_family();
        for p in [PhasePoint::new(1.4, 0.2), PhasePoint::new(-0.3, 0.9)] {
            assert!((fam.casimir_value(p).unwrap() + 0.25).abs() < 1e-12);
        }
        let p = PhasePoint::new(1.4, 0.2);
        assert!((class_f2(Sl2Class::I4, p, p).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn deformed_triples_keep_casimir_constant() {
        for &z in &[0.05, 0.3] {
            let tr = complex_riccati_deformed(z);
            for p in [PhasePoint::new(0.4, 1.2), PhasePoint::new(-1.0, -0.6)] {
                assert!((casimir_f(&tr, tr.ham_values(p), z) - 1.0).abs() < 1e-12);
            }
            let tr = coupled_riccati_deformed(z);
            for p in [PhasePoint::new(1.4, 0.2), PhasePoint::new(-0.3, 0.9)] {
                assert!((casimir_f(&tr, tr.ham_values(p), z) + 0.25).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn complex_map_spot_value_and_round_trip() {
        // branch +, (u,v) = (0,1): (x,y) = (√2, 0)
        let m = complex_to_mp(PhasePoint::new(0.0, 1.0), Branch::Plus).unwrap();
        assert!((m.x - 2.0f64.sqrt()).abs() < 1e-15 && m.y == 0.0);
        // inverse ∘ forward on the v > 0 sheet
        for &(u, v) in &[(0.3, 1.7), (-1.1, 0.4), (2.0, 3.0)] {
            let p = PhasePoint::new(u, v);
            let back = mp_to_complex(complex_to_mp(p, Branch::Plus).unwrap()).unwrap();
            assert!((back.x - u).abs() < 1e-14 && (back.y - v).abs() < 1e-13);
        }
        // forward ∘ inverse on x > 0
        for &(x, y) in &[(1.3, 0.2), (0.8, -1.0)] {
            let p = PhasePoint::new(x, y);
            let fwd = complex_to_mp(mp_to_complex(p).unwrap(), Branch::Plus).unwrap();
            assert!((fwd.x - x).abs() < 1e-14 && (fwd.y - y).abs() < 1e-14);
        }
    }

    #[test]
    fn complex_map_carries_the_two_copy_invariant_exactly() {
        // the Milne-Pinney F² with c = 4 maps onto the P₂ invariant with
        // multiplicative constant 1
        let (m1, m2) = (PhasePoint::new(1.2, 0.4), PhasePoint::new(0.7, -0.9));
        let f_mp = crate::milne_pinney::mp_f2(4.0, m1, m2).unwrap();
        let r1 = mp_to_complex(m1).unwrap();
        let r2 = mp_to_complex(m2).unwrap();
        let f_cr = class_f2(Sl2Class::P2, r1, r2).unwrap();
        assert!((f_mp - f_cr).abs() < 1e-12 * f_cr.abs().max(1.0));
    }

    #[test]
    fn coupled_map_round_trip() {
        for &(u, v) in &[(1.5, 0.2), (0.4, -0.9)] {
            let p = PhasePoint::new(u, v);
            let back = mp_to_coupled(coupled_to_mp(p, Branch::Plus).unwrap()).unwrap();
            assert!((back.x - u).abs() < 1e-13 && (back.y - v).abs() < 1e-13, "{back:?}");
        }
    }

    #[test]
    fn maps_conjugate_the_dynamics() {
        // push a Milne-Pinney trajectory (c = 4, Ω = 1) through the complex
        // map; the image must satisfy the Riccati system with (b₁,b₂,b₃) =
        // (Ω², 0, 1)
        let mp_field = |_t: f64, s: &[f64], d: &mut [f64]| {
            d[0] = s[1];
            d[1] = -s[0] + 4.0 / (s[0] * s[0] * s[0]);
        };
        let dt = 1e-5;
        let probe = |t: f64| {
            let tr = integrate_adaptive(
                &mp_field,
                0.0,
                t,
                &[1.1, 0.3],
                &IntegratorConfig::with_tol(1e-12),
                None,
            )
            .unwrap();
            let s = tr.last_state();
            mp_to_complex(PhasePoint::new(s[0], s[1])).unwrap()
        };
        for &t in &[0.4, 1.0] {
            let (a, b, c) = (probe(t - dt), probe(t), probe(t + dt));
            let du = (c.x - a.x) / (2.0 * dt);
            let dv = (c.y - a.y) / (2.0 * dt);
            let want_du = 1.0 + b.x * b.x - b.y * b.y;
            let want_dv = 2.0 * b.x * b.y;
            assert!((du - want_du).abs() < 1e-6, "du residual {}", du - want_du);
            assert!((dv - want_dv).abs() < 1e-6, "dv residual {}", dv - want_dv);
        }
    }

    #[test]
    fn coupled_map_conjugates_the_dynamics() {
        // push a Milne-Pinney trajectory (c = -1, Ω = 1) through the coupled
        // map; the image must satisfy u̇ = a₀ + a₁u + a₂u² (and likewise v)
        // with (a₀, a₁, a₂) = (Ω², 0, 1)
        let mp_field = |_t: f64, s: &[f64], d: &mut [f64]| {
            d[0] = s[1];
            d[1] = -s[0] - 1.0 / (s[0] * s[0] * s[0]);
        };
        let dt = 1e-5;
        let probe = |t: f64| {
            let tr = integrate_adaptive(
                &mp_field,
                0.0,
                t,
                &[1.4, 0.2],
                &IntegratorConfig::with_tol(1e-12),
                None,
            )
            .unwrap();
            let s = tr.last_state();
            mp_to_coupled(PhasePoint::new(s[0], s[1])).unwrap()
        };
        for &t in &[0.3, 0.8] {
            let (a, b, c) = (probe(t - dt), probe(t), probe(t + dt));
            let du = (c.x - a.x) / (2.0 * dt);
            let dv = (c.y - a.y) / (2.0 * dt);
            assert!((du - (1.0 + b.x * b.x)).abs() < 1e-6, "du residual");
            assert!((dv - (1.0 + b.y * b.y)).abs() < 1e-6, "dv residual");
        }
    }

    #[test]
    fn so_riccati_fields_are_gradient_fields_and_commutators_hold() {
        let fam = so_riccati_family();
        let pts = [PhasePoint::new(1.0, -1.0), PhasePoint::new(-0.5, -2.3)];
        for p in pts {
            for i in 0..5 {
                let v = fam.fields[i].eval(p);
                let g = fam.hams[i].gradient(p);
                assert!((v.0 - g.1).abs() < 1e-12 && (v.1 + g.0).abs() < 1e-12, "X{i}");
            }
        }
        // [X2,X4] = 2X3 at (1,-1)
        let got = lie_bracket(&fam.fields[1], &fam.fields[3], pts[0], 0.0).unwrap();
        let want = fam.fields[2].eval(pts[0]);
        assert!((got.0 - 2.0 * want.0).abs() < 1e-5 && (got.1 - 2.0 * want.1).abs() < 1e-5);
        // h6 = 1 is central: its field vanishes
        let h6 = ScalarField::constant(1.0);
        let f6 = crate::lh::hamiltonian_field(&h6, &fam.symp_density);
        assert_eq!(f6.eval(pts[0]), (0.0, 0.0));
        // brackets of the sl(2) block: {p, xp} = -p under {f,g} := X_g f
        let b = poisson_bracket(&fam.hams[1], &fam.hams[2], &fam.symp_density, pts[1]).unwrap();
        assert!((b + pts[1].y).abs() < 1e-12);
    }

    #[test]
    fn so_riccati_field_matches_hamilton_equations() {
        let f = so_riccati_field(
            TimeCoefficient::Constant(1.0),
            TimeCoefficient::Constant(0.2),
            TimeCoefficient::Constant(0.1),
        );
        for p in [PhasePoint::new(0.5, -1.2), PhasePoint::new(-1.0, -0.4)] {
            let (dx, dp) = f.eval(0.0, p);
            let want_dx = 1.0 / (-p.y).sqrt() - 1.0 - 0.2 * p.x - 0.1 * p.x * p.x;
            let want_dp = p.y * (0.2 + 2.0 * 0.1 * p.x);
            assert!((dx - want_dx).abs() < 1e-13 && (dp - want_dp).abs() < 1e-13);
        }
    }

    #[test]
    fn integrals_special_values() {
        // coincident pair cancels F0
        let a = PhasePoint::new(1.0, -1.0);
        let b = PhasePoint::new(2.0, -4.0);
        let f = so_riccati_integrals(a, a, b, None).unwrap();
        assert!(f.f0.abs() < 1e-14);
        // hand value at ((1,-1),(2,-4),(0,-9)): F0 = 12 - 3 - 2 = 7
        let f = so_riccati_integrals(
            PhasePoint::new(1.0, -1.0),
            PhasePoint::new(2.0, -4.0),
            PhasePoint::new(0.0, -9.0),
            None,
        )
        .unwrap();
        assert!((f.f0 - 7.0).abs() < 1e-13);
        // positive momentum is out of domain
        assert!(so_riccati_integrals(a, b, PhasePoint::new(0.0, 1.0), None).is_err());
    }

    fn integrate_so_riccati(s0: [f64; 2], t1: f64, times: &[f64]) -> Vec<PhasePoint> {
        let field = so_riccati_field(
            TimeCoefficient::Constant(1.0),
            TimeCoefficient::Sinusoid {
                offset: 0.0,
                amplitude: 0.2,
                omega: 1.0,
                phase: 0.0,
            },
            TimeCoefficient::Constant(0.1),
        );
        let ode = field.ode();
        let mut cps = vec![0.0];
        cps.extend_from_slice(times);
        cps.push(t1);
        cps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let tr = integrate_adaptive_through(
            &ode,
            &cps,
            &s0,
            &IntegratorConfig::with_tol(1e-12),
            Some(&|s: &[f64]| s[1] < 0.0),
        )
        .unwrap();
        times
            .iter()
            .map(|&t| {
                let s = tr.state_at(t).expect("checkpointed");
                PhasePoint::new(s[0], s[1])
            })
            .collect()
    }

    #[test]
    fn integrals_conserved_and_superposition_round_trips() {
        let ics = [[0.0, -1.0], [1.0, -2.0], [-1.0, -0.5], [0.5, -4.0]];
        let grid: Vec<f64> = (0..=10).map(|k| 0.5 * k as f64).collect();
        let runs: Vec<Vec<PhasePoint>> =
            ics.iter().map(|&ic| integrate_so_riccati(ic, 5.0, &grid)).collect();
        let at = |i: usize, k: usize| runs[i][k];
        // constants from t = 0
        let f = so_riccati_integrals(at(1, 0), at(2, 0), at(3, 0), Some(at(0, 0))).unwrap();
        let (k1, k2) = (f.f1.unwrap(), f.f2.unwrap());
        let mut worst = 0.0f64;
        for k in 0..grid.len() {
            // conservation of F0, F1, F2 along the flow
            let fk = so_riccati_integrals(at(1, k), at(2, k), at(3, k), Some(at(0, k))).unwrap();
            assert!((fk.f1.unwrap() - k1).abs() < 1e-8);
            assert!((fk.f2.unwrap() - k2).abs() < 1e-8);
            // rule reproduces the target
            let pred = so_riccati_superpose(at(1, k), at(2, k), at(3, k), k1, k2).unwrap();
            worst = worst
                .max((pred.x - at(0, k).x).abs())
                .max((pred.y - at(0, k).y).abs());
        }
        assert!(worst < 1e-5, "sup-norm gap {worst}");
    }

    #[test]
    fn superposition_self_consistency_with_zero_constants() {
        // target equal to the first particular solution makes F1 = F2 = 0
        let (s1, s2, s3) = (
            PhasePoint::new(0.3, -1.1),
            PhasePoint::new(1.2, -0.7),
            PhasePoint::new(-0.8, -2.0),
        );
        let f = so_riccati_integrals(s1, s2, s3, Some(s1)).unwrap();
        assert!(f.f1.unwrap().abs() < 1e-14 && f.f2.unwrap().abs() < 1e-14);
        let pred = so_riccati_superpose(s1, s2, s3, 0.0, 0.0).unwrap();
        assert!((pred.x - s1.x).abs() < 1e-12 && (pred.y - s1.y).abs() < 1e-12);
    }

    #[test]
    fn degenerate_configuration_is_an_error() {
        // p1 = p2 = p3 with x1 = x2 collapses F0
        let s = PhasePoint::new(0.5, -1.0);
        let s3 = PhasePoint::new(0.9, -1.0);
        assert!(matches!(
            so_riccati_superpose(s, s, s3, 0.2, 0.1),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn deformed_complex_riccati_two_copy_matches_pipeline() {
        // the tabulated P₂ deformed invariant in (u,v) coordinates equals the
        // coproduct route (Prop 5.2's display, with the class weights)
        let z = 0.2;
        let tr = complex_riccati_deformed(z);
        let (p1, p2) = (PhasePoint::new(0.4, 1.2), PhasePoint::new(-0.6, 0.9));
        let generic = casimir_f(&tr, two_copy_values(&tr, p1, p2).unwrap(), z);
        let tab = sl2::class_f2_deformed(Sl2Class::P2, z, p1, p2).unwrap();
        assert!((generic - tab).abs() < 1e-12 * tab.abs().max(1.0));
    }
}
