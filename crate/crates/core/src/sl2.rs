//! The three non-diffeomorphic planar sl(2) Lie–Hamilton classes, their
//! closed-form deformations and tabulated two-copy invariants, plus the
//! canonical one-parameter realization.
//!
//! Class data, in canonical basis order (pivot first):
//! - P₂ (c = 4): X₁ = ∂x, X₂ = x∂x + y∂y, X₃ = (x²−y²)∂x + 2xy∂y on y ≠ 0
//!   with ω = dx∧dy/y².
//! - I₄ (c = −1): X₁ = ∂x + ∂y, X₂ = x∂x + y∂y, X₃ = x²∂x + y²∂y on x ≠ y
//!   with ω = dx∧dy/(x−y)².
//! - I₅ (c = 0): X₁ = ∂x, X₂ = x∂x + (y/2)∂y, X₃ = x²∂x + xy∂y on y ≠ 0
//!   with ω = dx∧dy/y³.

use std::sync::Arc;

use crate::lh::{
    BracketRelation, CommutatorRelation, CoproductSpec, DeformedTriple, PhasePoint,
    PlanarLHFamily, ScalarField, VectorField2,
};
use crate::numkit::special::sinhc_raw;
use crate::{Error, Result};

/// Tag for the three planar sl(2) classes; the tag determines the Casimir
/// constant exactly (4, −1, 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sl2Class {
    P2,
    I4,
    I5,
}

impl Sl2Class {
    pub fn casimir_c(self) -> f64 {
        match self {
            Self::P2 => 4.0,
            Self::I4 => -1.0,
            Self::I5 => 0.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::P2 => "P2",
            Self::I4 => "I4",
            Self::I5 => "I5",
        }
    }

    pub const ALL: [Sl2Class; 3] = [Self::P2, Self::I4, Self::I5];
}

/// Canonical bracket table {h₁,h₂} = −h₁, {h₁,h₃} = −2h₂, {h₂,h₃} = −h₃.
pub(crate) fn sl2_bracket_table() -> Vec<BracketRelation> {
    vec![
        BracketRelation::new(0, 1, "{h1,h2} = -h1", |v| -v[0]),
        BracketRelation::new(0, 2, "{h1,h3} = -2h2", |v| -2.0 * v[1]),
        BracketRelation::new(1, 2, "{h2,h3} = -h3", |v| -v[2]),
    ]
}

/// Canonical commutators [X₁,X₂] = X₁, [X₁,X₃] = 2X₂, [X₂,X₃] = X₃.
pub(crate) fn sl2_commutator_table() -> Vec<CommutatorRelation> {
    vec![
        CommutatorRelation::with_constant_terms(0, 1, "[X1,X2] = X1", &[(0, 1.0)]),
        CommutatorRelation::with_constant_terms(0, 2, "[X1,X3] = 2X2", &[(1, 2.0)]),
        CommutatorRelation::with_constant_terms(1, 2, "[X2,X3] = X3", &[(2, 1.0)]),
    ]
}

/// The exact (Xᵢ, hᵢ, ω, domain) data of the requested class.
pub fn sl2_class_family(cls: Sl2Class) -> PlanarLHFamily {
    let c = cls.casimir_c();
    let (fields, hams, symp, domain): (
        Vec<VectorField2>,
        Vec<ScalarField>,
        crate::lh::ScalarFn,
        crate::lh::DomainFn,
    ) = match cls {
        Sl2Class::P2 => (
            vec![
                VectorField2::new(|_| (1.0, 0.0)),
                VectorField2::new(|p| (p.x, p.y)),
                VectorField2::new(|p| (p.x * p.x - p.y * p.y, 2.0 * p.x * p.y)),
            ],
            vec![
                ScalarField::new(|p| -1.0 / p.y, |p| (0.0, 1.0 / (p.y * p.y))),
                ScalarField::new(|p| -p.x / p.y, |p| (-1.0 / p.y, p.x / (p.y * p.y))),
                ScalarField::new(
                    |p| -(p.x * p.x + p.y * p.y) / p.y,
                    |p| (-2.0 * p.x / p.y, (p.x * p.x - p.y * p.y) / (p.y * p.y)),
                ),
            ],
            Arc::new(|p: PhasePoint| 1.0 / (p.y * p.y)),
            Arc::new(|p: PhasePoint| p.y != 0.0),
        ),
        Sl2Class::I4 => (
            vec![
                VectorField2::new(|_| (1.0, 1.0)),
                VectorField2::new(|p| (p.x, p.y)),
                VectorField2::new(|p| (p.x * p.x, p.y * p.y)),
            ],
            vec![
                ScalarField::new(
                    |p| 1.0 / (p.x - p.y),
                    |p| {
                        let d2 = (p.x - p.y) * (p.x - p.y);
                        (-1.0 / d2, 1.0 / d2)
                    },
                ),
                ScalarField::new(
                    |p| (p.x + p.y) / (2.0 * (p.x - p.y)),
                    |p| {
                        let d2 = (p.x - p.y) * (p.x - p.y);
                        (-p.y / d2, p.x / d2)
                    },
                ),
                ScalarField::new(
                    |p| p.x * p.y / (p.x - p.y),
                    |p| {
                        let d2 = (p.x - p.y) * (p.x - p.y);
                        (-p.y * p.y / d2, p.x * p.x / d2)
                    },
                ),
            ],
            Arc::new(|p: PhasePoint| {
                let d = p.x - p.y;
                1.0 / (d * d)
            }),
            Arc::new(|p: PhasePoint| p.x != p.y),
        ),
        Sl2Class::I5 => (
            vec![
                VectorField2::new(|_| (1.0, 0.0)),
                VectorField2::new(|p| (p.x, 0.5 * p.y)),
                VectorField2::new(|p| (p.x * p.x, p.x * p.y)),
            ],
            vec![
                ScalarField::new(|p| -0.5 / (p.y * p.y), |p| (0.0, 1.0 / (p.y * p.y * p.y))),
                ScalarField::new(
                    |p| -0.5 * p.x / (p.y * p.y),
                    |p| (-0.5 / (p.y * p.y), p.x / (p.y * p.y * p.y)),
                ),
                ScalarField::new(
                    |p| -0.5 * p.x * p.x / (p.y * p.y),
                    |p| (-p.x / (p.y * p.y), p.x * p.x / (p.y * p.y * p.y)),
                ),
            ],
            Arc::new(|p: PhasePoint| 1.0 / (p.y * p.y * p.y)),
            Arc::new(|p: PhasePoint| p.y != 0.0),
        ),
    };
    PlanarLHFamily {
        name: format!("sl2-{}", cls.name()),
        fields,
        hams,
        symp_density: symp,
        domain,
        casimir_c: c,
        bracket_table: sl2_bracket_table(),
        commutator_table: sl2_commutator_table(),
    }
}

/// The canonical realization h₁ = x, h₂ = −xy, h₃ = c/(4x) + xy² with λ = 1
/// on x ≠ 0; the coadjoint coordinates restricted to the symplectic leaf of
/// Casimir value c/4.
pub fn sl2_canonical_family(c: f64) -> PlanarLHFamily {
    let h1 = ScalarField::new(|p| p.x, |_| (1.0, 0.0));
    let h2 = ScalarField::new(|p| -p.x * p.y, |p| (-p.y, -p.x));
    let h3 = ScalarField::new(
        move |p| c / (4.0 * p.x) + p.x * p.y * p.y,
        move |p| (-c / (4.0 * p.x * p.x) + p.y * p.y, 2.0 * p.x * p.y),
    );
    let fields = vec![
        VectorField2::new(|_| (0.0, -1.0)),
        VectorField2::new(|p| (-p.x, p.y)),
        VectorField2::new(move |p| (2.0 * p.x * p.y, c / (4.0 * p.x * p.x) - p.y * p.y)),
    ];
    PlanarLHFamily {
        name: "sl2-canonical".into(),
        fields,
        hams: vec![h1, h2, h3],
        symp_density: Arc::new(|_| 1.0),
        domain: Arc::new(|p| p.x != 0.0),
        casimir_c: c,
        bracket_table: sl2_bracket_table(),
        // [X_i, X_j] = −Σ ∂F_ij/∂h_k·X_k gives the same constants as the
        // class realizations even though the fields differ
        commutator_table: sl2_commutator_table(),
    }
}

/// Closed-form deformation of the class, with the deformation argument θ per
/// class: P₂ uses θ = 2z/y, I₄ uses θ = 2z/(x−y), I₅ uses θ = z/y².
///
/// Evenness of sinhc and cosh reconciles the tabulated arguments with the
/// engine's 2z·h₁ (which equals −θ for P₂ and I₅). The I₄ third field uses
/// ½(x²−y²)·sinhc(θ) as the antisymmetric coefficient, the form whose z→0
/// limit recovers the classical X₃.
pub fn table42_triple(cls: Sl2Class, z: f64) -> DeformedTriple {
    let fam = sl2_class_family(cls);
    let c = cls.casimir_c();
    let (hams, fields): ([ScalarField; 3], [VectorField2; 3]) = match cls {
        Sl2Class::P2 => {
            let theta = move |p: PhasePoint| 2.0 * z / p.y;
            let f1 = VectorField2::new(|_| (1.0, 0.0));
            let f2 = VectorField2::new(move |p| {
                let t = theta(p);
                (p.x * t.cosh(), p.y * sinhc_raw(t))
            });
            let f3 = VectorField2::new(move |p| {
                let t = theta(p);
                let s = sinhc_raw(t);
                ((p.x * p.x - p.y * p.y / (s * s)) * t.cosh(), 2.0 * p.x * p.y * s)
            });
            let lam = move |p: PhasePoint| 1.0 / (p.y * p.y);
            (
                [
                    ScalarField::new(|p| -1.0 / p.y, |p| (0.0, 1.0 / (p.y * p.y))),
                    ScalarField::new(
                        move |p| -(p.x / p.y) * sinhc_raw(theta(p)),
                        grad_from_field(f2.clone(), lam),
                    ),
                    ScalarField::new(
                        move |p| {
                            let s = sinhc_raw(theta(p));
                            -(p.x * p.x * s * s + p.y * p.y) / (p.y * s)
                        },
                        grad_from_field(f3.clone(), lam),
                    ),
                ],
                [f1, f2, f3],
            )
        }
        Sl2Class::I4 => {
            let theta = move |p: PhasePoint| 2.0 * z / (p.x - p.y);
            let f1 = VectorField2::new(|_| (1.0, 1.0));
            let f2 = VectorField2::new(move |p| {
                let t = theta(p);
                let a = 0.5 * (p.x + p.y) * t.cosh();
                let b = 0.5 * (p.x - p.y) * sinhc_raw(t);
                (a + b, a - b)
            });
            let f3 = VectorField2::new(move |p| {
                let t = theta(p);
                let s = sinhc_raw(t);
                let d = p.x - p.y;
                let a = 0.25 * t.cosh() * ((p.x + p.y) * (p.x + p.y) + d * d / (s * s));
                let b = 0.5 * (p.x * p.x - p.y * p.y) * s;
                (a + b, a - b)
            });
            let lam = move |p: PhasePoint| {
                let d = p.x - p.y;
                1.0 / (d * d)
            };
            (
                [
                    ScalarField::new(
                        |p| 1.0 / (p.x - p.y),
                        |p| {
                            let d2 = (p.x - p.y) * (p.x - p.y);
                            (-1.0 / d2, 1.0 / d2)
                        },
                    ),
                    ScalarField::new(
                        move |p| (p.x + p.y) * sinhc_raw(theta(p)) / (2.0 * (p.x - p.y)),
                        grad_from_field(f2.clone(), lam),
                    ),
                    ScalarField::new(
                        move |p| {
                            let s = sinhc_raw(theta(p));
                            let d = p.x - p.y;
                            ((p.x + p.y) * (p.x + p.y) * s * s - d * d) / (4.0 * d * s)
                        },
                        grad_from_field(f3.clone(), lam),
                    ),
                ],
                [f1, f2, f3],
            )
        }
        Sl2Class::I5 => {
            let theta = move |p: PhasePoint| z / (p.y * p.y);
            let f1 = VectorField2::new(|_| (1.0, 0.0));
            let f2 = VectorField2::new(move |p| {
                let t = theta(p);
                (p.x * t.cosh(), 0.5 * p.y * sinhc_raw(t))
            });
            let f3 = VectorField2::new(move |p| {
                let t = theta(p);
                (p.x * p.x * t.cosh(), p.x * p.y * sinhc_raw(t))
            });
            let lam = move |p: PhasePoint| 1.0 / (p.y * p.y * p.y);
            (
                [
                    ScalarField::new(|p| -0.5 / (p.y * p.y), |p| (0.0, 1.0 / (p.y * p.y * p.y))),
                    ScalarField::new(
                        move |p| -0.5 * p.x * sinhc_raw(theta(p)) / (p.y * p.y),
                        grad_from_field(f2.clone(), lam),
                    ),
                    ScalarField::new(
                        move |p| -0.5 * p.x * p.x * sinhc_raw(theta(p)) / (p.y * p.y),
                        grad_from_field(f3.clone(), lam),
                    ),
                ],
                [f1, f2, f3],
            )
        }
    };
    let h1 = hams[0].clone();
    DeformedTriple {
        z,
        hams,
        fields,
        coproduct: CoproductSpec { pivot: 0 },
        canon: [(0, 1.0), (1, 1.0), (2, 1.0)],
        casimir_c: c,
        symp_density: fam.symp_density.clone(),
        domain: {
            let base = fam.domain.clone();
            Arc::new(move |p| base(p) && h1.value(p) != 0.0)
        },
        bracket_table: crate::lh::deformed_bracket_table(z),
        commutator_table: Vec::new(),
    }
}

// Gradient recovered from the Hamiltonian field: ι_X ω = dh gives
// ∇h = (−λ·X_y, λ·X_x).
fn grad_from_field<L>(f: VectorField2, lam: L) -> impl Fn(PhasePoint) -> (f64, f64) + Send + Sync
where
    L: Fn(PhasePoint) -> f64 + Send + Sync,
{
    move |p| {
        let (a, b) = f.eval(p);
        let l = lam(p);
        (-l * b, l * a)
    }
}

fn check_domain(cls: Sl2Class, p: PhasePoint) -> Result<()> {
    let ok = match cls {
        Sl2Class::P2 | Sl2Class::I5 => p.y != 0.0,
        Sl2Class::I4 => p.x != p.y,
    };
    if ok && p.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            t: None,
            state: vec![p.x, p.y],
        })
    }
}

/// The tabulated classical two-copy invariant of the class.
pub fn class_f2(cls: Sl2Class, p1: PhasePoint, p2: PhasePoint) -> Result<f64> {
    check_domain(cls, p1)?;
    check_domain(cls, p2)?;
    Ok(match cls {
        Sl2Class::P2 => {
            let dx = p1.x - p2.x;
            let sy = p1.y + p2.y;
            (dx * dx + sy * sy) / (p1.y * p2.y)
        }
        Sl2Class::I4 => -((p2.x - p1.y) * (p1.x - p2.y)) / ((p1.x - p1.y) * (p2.x - p2.y)),
        Sl2Class::I5 => {
            let dx = p1.x - p2.x;
            dx * dx / (4.0 * p1.y * p1.y * p2.y * p2.y)
        }
    })
}

/// The tabulated deformed two-copy invariant of the class.
pub fn class_f2_deformed(cls: Sl2Class, z: f64, p1: PhasePoint, p2: PhasePoint) -> Result<f64> {
    check_domain(cls, p1)?;
    check_domain(cls, p2)?;
    Ok(match cls {
        Sl2Class::P2 => {
            let (t1, t2) = (2.0 * z / p1.y, 2.0 * z / p2.y);
            let (s1, s2, s12) = (sinhc_raw(t1), sinhc_raw(t2), sinhc_raw(t1 + t2));
            let e = (t1 - t2).exp();
            let dx = p1.x - p2.x;
            let sy = p1.y + p2.y;
            (dx * dx / (p1.y * p2.y)) * s1 * s2 * e
                + (sy * sy / (p1.y * p2.y)) * (s12 * s12 / (s1 * s2)) * e
        }
        Sl2Class::I4 => {
            let (d1, d2) = (p1.x - p1.y, p2.x - p2.y);
            let (t1, t2) = (2.0 * z / d1, 2.0 * z / d2);
            let (s1, s2, s12) = (sinhc_raw(t1), sinhc_raw(t2), sinhc_raw(t1 + t2));
            let e = (-t1 + t2).exp();
            let a = p1.x - p2.x + p1.y - p2.y;
            let b = p1.x + p2.x - p1.y - p2.y;
            (a * a / (4.0 * d1 * d2)) * s1 * s2 * e
                - (b * s12 / (4.0 * d1 * d2)) * (t2.exp() * d1 / s1 + (-t1).exp() * d2 / s2)
        }
        Sl2Class::I5 => {
            let (t1, t2) = (z / (p1.y * p1.y), z / (p2.y * p2.y));
            let (s1, s2) = (sinhc_raw(t1), sinhc_raw(t2));
            let dx = p1.x - p2.x;
            (dx * dx / (4.0 * p1.y * p1.y * p2.y * p2.y)) * s1 * s2 * (t1 - t2).exp()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lh::{casimir_f, mt_deform, poisson_bracket, two_copy_values};
    use crate::numkit::central_gradient;

    fn sample_points(cls: Sl2Class) -> Vec<PhasePoint> {
        match cls {
            Sl2Class::P2 | Sl2Class::I5 => vec![
                PhasePoint::new(0.7, 1.3),
                PhasePoint::new(-1.2, 0.4),
                PhasePoint::new(2.0, -0.8),
                PhasePoint::new(0.1, 2.5),
            ],
            Sl2Class::I4 => vec![
                PhasePoint::new(1.5, 0.3),
                PhasePoint::new(-0.4, 0.9),
                PhasePoint::new(2.2, -1.0),
                PhasePoint::new(0.6, 0.1),
            ],
        }
    }

    #[test]
    fn one_copy_casimir_matches_class_constants() {
        for cls in Sl2Class::ALL {
            let fam = sl2_class_family(cls);
            for p in sample_points(cls) {
                let f = fam.casimir_value(p).unwrap();
                assert!(
                    (f - cls.casimir_c() / 4.0).abs() < 1e-12,
                    "{}: F = {f} at {p:?}",
                    cls.name()
                );
            }
        }
    }

    #[test]
    fn analytic_gradients_match_finite_differences() {
        for cls in Sl2Class::ALL {
            let fam = sl2_class_family(cls);
            for p in sample_points(cls) {
                for (i, h) in fam.hams.iter().enumerate() {
                    let (ax, ay) = h.gradient(p);
                    let (nx, ny) = central_gradient(|q| h.value(q), p, 0.0).unwrap();
                    assert!(
                        (ax - nx).abs() < 1e-6 * ax.abs().max(1.0)
                            && (ay - ny).abs() < 1e-6 * ay.abs().max(1.0),
                        "{} h{i} at {p:?}",
                        cls.name()
                    );
                }
            }
        }
    }

    #[test]
    fn bracket_tables_hold_with_analytic_gradients() {
        for cls in Sl2Class::ALL {
            let fam = sl2_class_family(cls);
            for p in sample_points(cls) {
                let vals = fam.ham_values(p);
                for rel in &fam.bracket_table {
                    let got =
                        poisson_bracket(&fam.hams[rel.i], &fam.hams[rel.j], &fam.symp_density, p)
                            .unwrap();
                    let want = (rel.expected)(&vals);
                    assert!(
                        (got - want).abs() < 1e-10 * want.abs().max(1.0),
                        "{} {}: {got} vs {want}",
                        cls.name(),
                        rel.label
                    );
                }
            }
        }
    }

    #[test]
    fn p2_bracket_example_value() {
        // {h2,h3} at (1,1) equals -h3(1,1) = 2
        let fam = sl2_class_family(Sl2Class::P2);
        let p = PhasePoint::new(1.0, 1.0);
        let got = poisson_bracket(&fam.hams[1], &fam.hams[2], &fam.symp_density, p).unwrap();
        assert!((got - 2.0).abs() < 1e-12);
    }

    #[test]
    fn canonical_family_constraint_and_brackets() {
        for &c in &[4.0, -1.0, 0.0, 2.5] {
            let fam = sl2_canonical_family(c);
            for p in [PhasePoint::new(2.0, 3.0), PhasePoint::new(-0.7, 1.1)] {
                assert!((fam.casimir_value(p).unwrap() - c / 4.0).abs() < 1e-12);
                let vals = fam.ham_values(p);
                for rel in &fam.bracket_table {
                    let got =
                        poisson_bracket(&fam.hams[rel.i], &fam.hams[rel.j], &fam.symp_density, p)
                            .unwrap();
                    assert!(((rel.expected)(&vals) - got).abs() < 1e-10);
                }
            }
        }
        // c = 0 degenerates h3 to xy²
        let fam = sl2_canonical_family(0.0);
        let p = PhasePoint::new(1.7, -0.4);
        assert!((fam.hams[2].value(p) - 1.7 * 0.16).abs() < 1e-12);
    }

    #[test]
    fn table42_reduces_to_classical_at_z_zero() {
        for cls in Sl2Class::ALL {
            let fam = sl2_class_family(cls);
            let tr = table42_triple(cls, 0.0);
            for p in sample_points(cls) {
                for i in 0..3 {
                    assert!(
                        (tr.hams[i].value(p) - fam.hams[i].value(p)).abs() < 1e-13,
                        "{} h{i}",
                        cls.name()
                    );
                    let a = tr.fields[i].eval(p);
                    let b = fam.fields[i].eval(p);
                    assert!((a.0 - b.0).abs() < 1e-13 && (a.1 - b.1).abs() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn table42_agrees_with_engine_deformation() {
        for cls in Sl2Class::ALL {
            let fam = sl2_class_family(cls);
            for &z in &[0.05, 0.2, 1.0] {
                let a = table42_triple(cls, z);
                let b = mt_deform(&fam, z).unwrap();
                for p in sample_points(cls) {
                    for i in 0..3 {
                        let (ha, hb) = (a.hams[i].value(p), b.hams[i].value(p));
                        assert!(
                            (ha - hb).abs() < 1e-10 * hb.abs().max(1.0),
                            "{} z={z} h{i} at {p:?}: {ha} vs {hb}",
                            cls.name()
                        );
                        let (fa, fb) = (a.fields[i].eval(p), b.fields[i].eval(p));
                        assert!(
                            (fa.0 - fb.0).abs() < 1e-10 * fb.0.abs().max(1.0)
                                && (fa.1 - fb.1).abs() < 1e-10 * fb.1.abs().max(1.0),
                            "{} z={z} X{i} at {p:?}",
                            cls.name()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn p2_deformed_h2_spot_value() {
        // h_{z,2}(1,2) at z = 0.1 is -(1/2)·sinhc(0.1)
        let tr = table42_triple(Sl2Class::P2, 0.1);
        let got = tr.hams[1].value(PhasePoint::new(1.0, 2.0));
        assert!((got - (-0.5 * sinhc_raw(0.1))).abs() < 1e-15);
        assert!((got + 0.500_833_7).abs() < 5e-7);
    }

    #[test]
    fn tabulated_f2_special_values() {
        // coincident copies: I4 -> -1, I5 -> 0, P2 (z=0) -> 4
        let p = PhasePoint::new(0.8, 1.7);
        assert!((class_f2(Sl2Class::I4, p, p).unwrap() + 1.0).abs() < 1e-12);
        assert!(class_f2(Sl2Class::I5, p, p).unwrap().abs() < 1e-15);
        assert!((class_f2_deformed(Sl2Class::P2, 0.0, p, p).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn deformed_f2_tends_to_classical_linearly() {
        let (p1, p2) = (PhasePoint::new(0.9, 1.4), PhasePoint::new(1.6, 0.7));
        for cls in Sl2Class::ALL {
            let f0 = class_f2(cls, p1, p2).unwrap();
            let mut z = 0.1;
            let mut prev = (class_f2_deformed(cls, z, p1, p2).unwrap() - f0).abs();
            for _ in 0..5 {
                z *= 0.5;
                let cur = (class_f2_deformed(cls, z, p1, p2).unwrap() - f0).abs();
                let ratio = prev / cur;
                assert!(ratio > 1.6 && ratio < 2.4, "{}: halving ratio {ratio}", cls.name());
                prev = cur;
            }
        }
    }

    #[test]
    fn tabulated_f2_equals_coproduct_casimir_route() {
        // the tabulated invariants match the generic coproduct pipeline with
        // proportionality constant exactly 1, classically and deformed
        let (p1, p2) = (PhasePoint::new(0.9, 1.4), PhasePoint::new(1.6, 0.7));
        for cls in Sl2Class::ALL {
            for &z in &[0.0, 0.1, 0.5] {
                let tr = table42_triple(cls, z);
                let generic = casimir_f(&tr, two_copy_values(&tr, p1, p2).unwrap(), z);
                let tab = class_f2_deformed(cls, z, p1, p2).unwrap();
                assert!(
                    (generic - tab).abs() < 1e-11 * tab.abs().max(1.0),
                    "{} z={z}: generic {generic} vs tabulated {tab}",
                    cls.name()
                );
            }
        }
    }

    #[test]
    fn domain_violations_are_errors() {
        assert!(
            class_f2(Sl2Class::P2, PhasePoint::new(1.0, 0.0), PhasePoint::new(0.0, 1.0)).is_err()
        );
        assert!(
            class_f2(Sl2Class::I4, PhasePoint::new(1.0, 1.0), PhasePoint::new(0.0, 1.0)).is_err()
        );
    }
}
