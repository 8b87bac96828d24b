//! The two-photon realization on the plane, the damped harmonic oscillator
//! and its superposition rule, and the h4/h6 quantum deformations with their
//! constants of motion.
//!
//! Plane realization with ω = dx∧dy: v₀ = 1, v₁ = y, v₂ = −x, v₃ = xy,
//! v₄ = y²/2, v₅ = −x²/2 with fields X₁ = ∂x, X₂ = ∂y, X₃ = x∂x − y∂y,
//! X₄ = y∂x, X₅ = x∂y (and the zero field for the central v₀).

use std::sync::Arc;

use crate::lh::{
    t_dependent_field, BracketRelation, CommutatorRelation, PhasePoint, PlanarLHFamily,
    ScalarField, TDependentField, TimeCoefficient, VectorField2,
};
use crate::riccati::Branch;
use crate::{Error, Result};

/// The six-generator two-photon family (index 0 is the central constant).
pub fn h6_family() -> PlanarLHFamily {
    PlanarLHFamily {
        name: "h6".into(),
        fields: vec![
            VectorField2::zero(),
            VectorField2::new(|_| (1.0, 0.0)),
            VectorField2::new(|_| (0.0, 1.0)),
            VectorField2::new(|p| (p.x, -p.y)),
            VectorField2::new(|p| (p.y, 0.0)),
            VectorField2::new(|p| (0.0, p.x)),
        ],
        hams: vec![
            ScalarField::constant(1.0),
            ScalarField::new(|p| p.y, |_| (0.0, 1.0)),
            ScalarField::new(|p| -p.x, |_| (-1.0, 0.0)),
            ScalarField::new(|p| p.x * p.y, |p| (p.y, p.x)),
            ScalarField::new(|p| 0.5 * p.y * p.y, |p| (0.0, p.y)),
            ScalarField::new(|p| -0.5 * p.x * p.x, |p| (-p.x, 0.0)),
        ],
        symp_density: Arc::new(|_| 1.0),
        domain: Arc::new(|_| true),
        casimir_c: 0.0,
        bracket_table: h6_bracket_table(),
        commutator_table: vec![
            CommutatorRelation::with_constant_terms(1, 3, "[X1,X3] = X1", &[(1, 1.0)]),
            CommutatorRelation::with_constant_terms(1, 5, "[X1,X5] = X2", &[(2, 1.0)]),
            CommutatorRelation::with_constant_terms(2, 3, "[X2,X3] = -X2", &[(2, -1.0)]),
            CommutatorRelation::with_constant_terms(2, 4, "[X2,X4] = X1", &[(1, 1.0)]),
            CommutatorRelation::with_constant_terms(3, 4, "[X3,X4] = -2X4", &[(4, -2.0)]),
            CommutatorRelation::with_constant_terms(3, 5, "[X3,X5] = 2X5", &[(5, 2.0)]),
            CommutatorRelation::with_constant_terms(4, 5, "[X4,X5] = -X3", &[(3, -1.0)]),
        ],
    }
}

fn h6_bracket_table() -> Vec<BracketRelation> {
    vec![
        BracketRelation::new(1, 2, "{v1,v2} = v0", |v| v[0]),
        BracketRelation::new(1, 3, "{v1,v3} = -v1", |v| -v[1]),
        BracketRelation::new(1, 4, "{v1,v4} = 0", |_| 0.0),
        BracketRelation::new(1, 5, "{v1,v5} = -v2", |v| -v[2]),
        BracketRelation::new(2, 3, "{v2,v3} = v2", |v| v[2]),
        BracketRelation::new(2, 4, "{v2,v4} = -v1", |v| -v[1]),
        BracketRelation::new(2, 5, "{v2,v5} = 0", |_| 0.0),
        BracketRelation::new(3, 4, "{v3,v4} = 2v4", |v| 2.0 * v[4]),
        BracketRelation::new(3, 5, "{v3,v5} = -2v5", |v| -2.0 * v[5]),
        BracketRelation::new(4, 5, "{v4,v5} = v3", |v| v[3]),
    ]
}

/// Classical cubic Casimir C₃ = 2(v₁²v₅ − v₂²v₄ − v₁v₂v₃) − v₀(v₃² + 4v₄v₅);
/// its plane realization vanishes identically.
pub fn h6_classical_c3(v: &[f64; 6]) -> f64 {
    2.0 * (v[1] * v[1] * v[5] - v[2] * v[2] * v[4] - v[1] * v[2] * v[3])
        - v[0] * (v[3] * v[3] + 4.0 * v[4] * v[5])
}

/// Coefficients of the damped harmonic oscillator
/// dx/dt = a(t)x + b(t)p + f(t), dp/dt = −a(t)p − c(t)x − d(t).
#[derive(Debug, Clone)]
pub struct DampedCoeffs {
    pub a: TimeCoefficient,
    pub b: TimeCoefficient,
    pub c: TimeCoefficient,
    pub d: TimeCoefficient,
    pub f: TimeCoefficient,
}

/// The damped-oscillator field f·X₁ − d·X₂ + a·X₃ + b·X₄ − c·X₅.
pub fn damped_field(co: &DampedCoeffs) -> TDependentField {
    let fam = h6_family();
    let neg = |c: &TimeCoefficient| match c.clone() {
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
            TimeCoefficient::Polynomial(cs.into_iter().map(|x| -x).collect())
        }
        TimeCoefficient::Tabulated(ks) => {
            TimeCoefficient::Tabulated(ks.into_iter().map(|(t, v)| (t, -v)).collect())
        }
    };
    t_dependent_field(
        &fam.fields,
        &[
            TimeCoefficient::Constant(0.0),
            co.f.clone(),
            neg(&co.d),
            co.a.clone(),
            co.b.clone(),
            neg(&co.c),
        ],
    )
    .expect("six fields, six coefficients")
}

/// Signed three-copy linear invariant
/// L = (x₂−x₃)p₁ + (x₃−x₁)p₂ + (x₁−x₂)p₃; the tabulated constant is its
/// square.
pub fn damped_l3(s1: PhasePoint, s2: PhasePoint, s3: PhasePoint) -> f64 {
    (s2.x - s3.x) * s1.y + (s3.x - s1.x) * s2.y + (s1.x - s2.x) * s3.y
}

/// F⁽³⁾ = L(s1,s2,s3)².
pub fn damped_f3(s1: PhasePoint, s2: PhasePoint, s3: PhasePoint) -> f64 {
    let l = damped_l3(s1, s2, s3);
    l * l
}

/// Index-permuted variant on copies (2,3,4):
/// F⁽³⁾₁₄ = ((x₂−x₃)p₄ + (x₃−x₄)p₂ + (x₄−x₂)p₃)².
pub fn damped_f3_14(s2: PhasePoint, s3: PhasePoint, s4: PhasePoint) -> f64 {
    let l = damped_l3(s4, s2, s3);
    l * l
}

/// Index-permuted variant on copies (1,3,4):
/// F⁽³⁾₂₄ = ((x₃−x₄)p₁ + (x₄−x₁)p₃ + (x₁−x₃)p₄)².
pub fn damped_f3_24(s1: PhasePoint, s3: PhasePoint, s4: PhasePoint) -> f64 {
    let l = damped_l3(s1, s3, s4);
    l * l
}

/// Superposition rule of the damped oscillator: the target (x₁,p₁) from the
/// particular solutions 2, 3, 4 and the constants k₁ = F⁽³⁾, k₂ = F⁽³⁾₂₄.
///
/// The displayed rule is written through square roots; the roots of k₁, k₂
/// carry the signs of the underlying linear invariants, selected by
/// `sign1`/`sign2`, while √F⁽³⁾₁₄ is taken as the signed linear form of the
/// three particulars (computable from the inputs, so unambiguous).
pub fn damped_superpose(
    sol2: PhasePoint,
    sol3: PhasePoint,
    sol4: PhasePoint,
    k1: f64,
    k2: f64,
    sign1: Branch,
    sign2: Branch,
) -> Result<PhasePoint> {
    if k1 < 0.0 || k2 < 0.0 {
        return Err(Error::InvalidArgument(
            "the squared constants of the damped rule cannot be negative".into(),
        ));
    }
    if (sol2.x - sol3.x).abs() < 1e-14 {
        return Err(Error::Degenerate("x2 = x3 in the damped-oscillator rule".into()));
    }
    let l14 = damped_l3(sol4, sol2, sol3);
    if l14.abs() < 1e-14 {
        return Err(Error::Degenerate("F3_14 vanishes in the damped-oscillator rule".into()));
    }
    let r1 = sign1.sign() * k1.sqrt();
    let r2 = sign2.sign() * k2.sqrt();
    let x1 = sol3.x + ((sol4.x - sol3.x) * r1 + (sol2.x - sol3.x) * r2) / l14;
    let p1 = r1 / (sol2.x - sol3.x)
        + sol3.y
        + r2 * (sol2.y - sol3.y) / l14
        + r1 * (sol2.y - sol3.y) * (sol4.x - sol3.x) / (l14 * (sol2.x - sol3.x));
    Ok(PhasePoint::new(x1, p1))
}

// ---------------------------------------------------------------------------
// h4 deformation
// ---------------------------------------------------------------------------

/// Deformed four-generator oscillator subfamily on the plane:
/// v_{0,z} = 1, v_{1,z} = e^{−zx}y, v_{2,z} = −x, v_{3,z} = (1−e^{−zx})y/z.
pub struct H4Deformed {
    pub z: f64,
    pub hams: [ScalarField; 4],
    pub fields: [VectorField2; 4],
    pub bracket_table: Vec<BracketRelation>,
}

pub fn h4_deformed_family(z: f64) -> H4Deformed {
    let hams = [
        ScalarField::constant(1.0),
        ScalarField::new(
            move |p| (-z * p.x).exp() * p.y,
            move |p| {
                let e = (-z * p.x).exp();
                (-z * e * p.y, e)
            },
        ),
        ScalarField::new(|p| -p.x, |_| (-1.0, 0.0)),
        ScalarField::new(
            move |p| em1r(z, p.x) * p.y,
            move |p| ((-z * p.x).exp() * p.y, em1r(z, p.x)),
        ),
    ];
    let fields = std::array::from_fn(|i| {
        let h = hams[i].clone();
        VectorField2::new(move |p| {
            let (gx, gy) = h.gradient(p);
            (gy, -gx)
        })
    });
    H4Deformed {
        z,
        hams,
        fields,
        bracket_table: vec![
            BracketRelation::new(1, 2, "{v1z,v2z} = v0 e^{z v2z}", move |v| {
                v[0] * (z * v[2]).exp()
            }),
            BracketRelation::new(1, 3, "{v1z,v3z} = -v1z", |v| -v[1]),
            BracketRelation::new(2, 3, "{v2z,v3z} = (e^{z v2z}-1)/z", move |v| exp_ratio(z, v[2])),
        ],
    }
}

// (1 - e^{-zx})/z continued to x at z = 0
fn em1r(z: f64, x: f64) -> f64 {
    crate::numkit::expm1_ratio(z, x).unwrap_or(f64::NAN)
}

// (e^{za} - 1)/z continued to a at z = 0
fn exp_ratio(z: f64, a: f64) -> f64 {
    crate::numkit::expm1_scaled(z, a)
}

/// The deformed h4 dynamics for coefficients (f₁, f₂, f₃):
/// dx/dt = e^{−zx}f₁ + (1−e^{−zx})/z·f₃,
/// dy/dt = yze^{−zx}f₁ + f₂ − ye^{−zx}f₃.
pub fn h4_deformed_field(z: f64, coeffs: [TimeCoefficient; 3]) -> TDependentField {
    let fam = h4_deformed_family(z);
    let [f1, f2, f3] = coeffs;
    t_dependent_field(
        &fam.fields[1..4],
        &[f1, f2, f3],
    )
    .expect("three fields, three coefficients")
}

/// Realized two-copy generators (v₀⁽²⁾, v₁⁽²⁾, v₂⁽²⁾, v₃⁽²⁾) of the deformed
/// oscillator subalgebra, from the Poisson–Hopf coproduct of the dual group:
/// with E₂ := e^{z v₂(p₂)},
/// v₁⁽²⁾ = v₁(p₁)E₂ + v₁(p₂) − zE₂·v₃(p₁),
/// v₂⁽²⁾ = v₂(p₁) + v₂(p₂), v₃⁽²⁾ = v₃(p₁)E₂ + v₃(p₂), v₀⁽²⁾ = 2.
///
/// These close the deformed brackets on the product plane with central value
/// 2 (the operator-level coproduct of the quantum algebra does not — its
/// ordering corrections are not Poisson corrections).
pub fn h4_two_copy_values(z: f64, p1: PhasePoint, p2: PhasePoint) -> [f64; 4] {
    let fam = h4_deformed_family(z);
    let e2 = (-z * p2.x).exp();
    let (f1, f2) = (fam.hams[1].value(p1), fam.hams[1].value(p2));
    let (g1, g2) = (fam.hams[3].value(p1), fam.hams[3].value(p2));
    [
        2.0,
        f1 * e2 + f2 - z * e2 * g1,
        -(p1.x + p2.x),
        g1 * e2 + g2,
    ]
}

/// One- and two-copy constants of the deformed h4 system.
///
/// The first component is the display-form one-copy expression
/// (e^{−zx}/z)(zx + e^{−zx} − 1)·y at p1, which scales as O(z); the one-copy
/// realization of the deformed Casimir itself is identically zero (as
/// classically), so the displayed form is kept for the limit checks and its
/// trajectory drift is reported separately.
///
/// The second component is the realized two-copy Casimir
/// C⁽²⁾ = v₀⁽²⁾v₃⁽²⁾ + (1 − e^{−z v₂⁽²⁾})/z·v₁⁽²⁾ with classical limit
/// (x₁−x₂)(y₁−y₂); it is conserved along [`h4_pair_ode`].
pub fn h4_invariants(z: f64, p1: PhasePoint, p2: PhasePoint) -> (f64, f64) {
    (h4_f1_display(z, p1), h4_f2(z, p1, p2))
}

/// The displayed one-copy expression (e^{−zx}/z)(zx + e^{−zx} − 1)·y, with
/// value 0 at z = 0 (its limit).
pub fn h4_f1_display(z: f64, p: PhasePoint) -> f64 {
    if z == 0.0 {
        return 0.0;
    }
    (-z * p.x).exp() * (z * p.x + f64::exp_m1(-z * p.x)) * p.y / z
}

/// Realized two-copy deformed Casimir; conserved along the coupled two-copy
/// h4 flow and tending to (x₁−x₂)(y₁−y₂) as z → 0.
pub fn h4_f2(z: f64, p1: PhasePoint, p2: PhasePoint) -> f64 {
    // C = v₀v₃ + (1 − e^{−z v₂})/z·v₁ on the two-copy values
    let v = h4_two_copy_values(z, p1, p2);
    v[0] * v[3] - exp_ratio(z, -v[2]) * v[1]
}

/// One-copy realization of the deformed h4 Casimir
/// C = v₀v₃ + (1−e^{−zv₂})/z·v₁; identically zero on the plane, kept for the
/// drift harness.
pub fn h4_f1_casimir(z: f64, p: PhasePoint) -> f64 {
    em1r(z, p.x) * p.y + -(exp_ratio(z, p.x) * (-z * p.x).exp() * p.y)
}

/// The display-form two-copy h4 expression, kept verbatim as an advisory
/// comparator for [`h4_f2`].
pub fn h4_f2_display(z: f64, p1: PhasePoint, p2: PhasePoint) -> f64 {
    if z == 0.0 {
        return (p1.x - p2.x) * (p1.y - p2.y);
    }
    let s = p1.x + p2.x;
    (2.0 * (p1.y + p2.y)
        - (-z * s).exp() * (2.0 + z * s) * (p1.y * (z * p2.x).exp() + p2.y * (z * p1.x).exp()))
        / z
}

/// Coupled two-copy h4 flow: the Hamiltonian vector field of
/// H = f₁·v₁⁽²⁾ + f₂·v₂⁽²⁾ + f₃·v₃⁽²⁾ on the product plane, with analytic
/// gradients. At z = 0 it is two independent copies of the classical system.
pub fn h4_pair_ode(z: f64, coeffs: [TimeCoefficient; 3]) -> impl Fn(f64, &[f64], &mut [f64]) {
    move |t, s, d| {
        let b = [coeffs[0].eval(t), coeffs[1].eval(t), coeffs[2].eval(t)];
        let p1 = PhasePoint::new(s[0], s[1]);
        let p2 = PhasePoint::new(s[2], s[3]);
        let (e1, e2) = ((-z * p1.x).exp(), (-z * p2.x).exp());
        let (f1, g1) = (e1 * p1.y, em1r(z, p1.x) * p1.y);
        // per-copy gradients of v₁ = e^{-zx}y and v₃ = (1-e^{-zx})y/z
        let df = |e: f64, y: f64| (-z * e * y, e);
        let dg = |e: f64, x: f64, y: f64| (e * y, em1r(z, x));
        let (df1, df2) = (df(e1, p1.y), df(e2, p2.y));
        let (dg1, dg2) = (dg(e1, p1.x, p1.y), dg(e2, p2.x, p2.y));
        // v1(2) = f1 E2 + f2 - z E2 g1 ; v3(2) = g1 E2 + g2 ; E2 = e^{-z x2}
        let v1_p1 = (e2 * (df1.0 - z * dg1.0), e2 * (df1.1 - z * dg1.1));
        let v1_p2 = (df2.0 + (f1 - z * g1) * (-z * e2), df2.1);
        let v3_p1 = (e2 * dg1.0, e2 * dg1.1);
        let v3_p2 = (dg2.0 + g1 * (-z * e2), dg2.1);
        let v2_p = (-1.0, 0.0);
        let hx1 = b[0] * v1_p1.0 + b[1] * v2_p.0 + b[2] * v3_p1.0;
        let hy1 = b[0] * v1_p1.1 + b[1] * v2_p.1 + b[2] * v3_p1.1;
        let hx2 = b[0] * v1_p2.0 + b[1] * v2_p.0 + b[2] * v3_p2.0;
        let hy2 = b[0] * v1_p2.1 + b[1] * v2_p.1 + b[2] * v3_p2.1;
        d[0] = hy1;
        d[1] = -hx1;
        d[2] = hy2;
        d[3] = -hx2;
    }
}

// ---------------------------------------------------------------------------
// h6 deformation
// ---------------------------------------------------------------------------

/// Deformed two-photon generators on the plane:
/// v_{0,z} = 1, v_{1,z} = e^{−zx}y, v_{2,z} = −x, v_{3,z} = (1−e^{−zx})y/z,
/// v_{4,z} = ½e^{−zx}y², v_{5,z} = −½((e^{zx}−1)/z)².
pub struct H6Deformed {
    pub z: f64,
    pub hams: [ScalarField; 6],
    pub fields: [VectorField2; 6],
    pub bracket_table: Vec<BracketRelation>,
}

pub fn h6_deformed_family(z: f64) -> H6Deformed {
    let h4 = h4_deformed_family(z);
    let hams: [ScalarField; 6] = [
        h4.hams[0].clone(),
        h4.hams[1].clone(),
        h4.hams[2].clone(),
        h4.hams[3].clone(),
        ScalarField::new(
            move |p| 0.5 * (-z * p.x).exp() * p.y * p.y,
            move |p| {
                let e = (-z * p.x).exp();
                (-0.5 * z * e * p.y * p.y, e * p.y)
            },
        ),
        ScalarField::new(
            move |p| {
                let q = exp_ratio(z, p.x);
                -0.5 * q * q
            },
            move |p| {
                let q = exp_ratio(z, p.x);
                (-q * (z * p.x).exp(), 0.0)
            },
        ),
    ];
    let fields = std::array::from_fn(|i| {
        let h = hams[i].clone();
        VectorField2::new(move |p| {
            let (gx, gy) = h.gradient(p);
            (gy, -gx)
        })
    });
    H6Deformed {
        z,
        hams,
        fields,
        bracket_table: h6_deformed_bracket_table(z),
    }
}

fn h6_deformed_bracket_table(z: f64) -> Vec<BracketRelation> {
    let ez = move |v2: f64| (z * v2).exp();
    vec![
        BracketRelation::new(1, 2, "{v1z,v2z} = v0 e^{z v2z}", move |v| v[0] * ez(v[2])),
        BracketRelation::new(1, 3, "{v1z,v3z} = -v1z", |v| -v[1]),
        BracketRelation::new(1, 4, "{v1z,v4z} = -z v1z²/2", move |v| -0.5 * z * v[1] * v[1]),
        BracketRelation::new(1, 5, "{v1z,v5z} = (e^{-z v2z}-1)/z", move |v| {
            exp_ratio(z, -v[2])
        }),
        BracketRelation::new(2, 3, "{v2z,v3z} = (e^{z v2z}-1)/z", move |v| exp_ratio(z, v[2])),
        BracketRelation::new(
            2,
            4,
            "{v2z,v4z} = -v1z(1+e^{z v2z})/2 - z e^{z v2z} v0 (2v3z+v0-1)/4",
            move |v| {
                -0.5 * v[1] * (1.0 + ez(v[2]))
                    - 0.25 * z * ez(v[2]) * v[0] * (2.0 * v[3] + v[0] - 1.0)
            },
        ),
        BracketRelation::new(2, 5, "{v2z,v5z} = 0", |_| 0.0),
        BracketRelation::new(
            3,
            4,
            "{v3z,v4z} = 2v4z - z v1z (2v3z+v0-1)/4",
            move |v| 2.0 * v[4] - 0.25 * z * v[1] * (2.0 * v[3] + v[0] - 1.0),
        ),
        BracketRelation::new(3, 5, "{v3z,v5z} = -2v5z", |v| -2.0 * v[5]),
        BracketRelation::new(
            4,
            5,
            "{v4z,v5z} = v3z(1+e^{-z v2z})/2 + (v0-1)(e^{-z v2z}-1)/4 - z v1z v5z",
            move |v| {
                0.5 * v[3] * (1.0 + (-z * v[2]).exp())
                    + 0.25 * (v[0] - 1.0) * ((-z * v[2]).exp() - 1.0)
                    - z * v[1] * v[5]
            },
        ),
    ]
}

/// The deformed five-coefficient dynamics:
/// dx/dt = e^{−zx}f₁ + (1−e^{−zx})/z·f₃ + ye^{−zx}f₄,
/// dy/dt = yze^{−zx}f₁ + f₂ − ye^{−zx}f₃ + ½y²ze^{−zx}f₄ + e^{zx}(e^{zx}−1)/z·f₅.
pub fn h6_deformed_field(z: f64, coeffs: [TimeCoefficient; 5]) -> TDependentField {
    let fam = h6_deformed_family(z);
    let [f1, f2, f3, f4, f5] = coeffs;
    t_dependent_field(&fam.fields[1..6], &[f1, f2, f3, f4, f5])
        .expect("five fields, five coefficients")
}

/// Deformed cubic Casimir of the h6 deformation as a function of abstract
/// generator values.
///
/// The display variant's trailing term is not Casimir-compatible; the form
/// implemented here is the one forced by the Casimir requirement (checked on
/// both the one- and the two-copy realizations), with classical limit
/// exactly C₃:
/// C_{3,z} = z v₀v₁v₅(2v₃+v₀−1) − 2v₄(e^{zv₂}−1)²e^{−2zv₂}/z² + 2v₁²v₅
///           − v₀v₃² − 4v₀v₄v₅ − v₁v₃(e^{2zv₂}−1)e^{−2zv₂}/z.
pub fn h6_c3z(z: f64, v: &[f64; 6]) -> f64 {
    if z == 0.0 {
        return h6_classical_c3(v);
    }
    let e = (z * v[2]).exp();
    let em1 = f64::exp_m1(z * v[2]);
    z * v[0] * v[1] * v[5] * (2.0 * v[3] + v[0] - 1.0)
        - 2.0 * v[4] * em1 * em1 / (e * e * z * z)
        + 2.0 * v[1] * v[1] * v[5]
        - v[0] * v[3] * v[3]
        - 4.0 * v[0] * v[4] * v[5]
        - v[1] * v[3] * f64::exp_m1(2.0 * z * v[2]) / (e * e * z)
}

/// The display variant of the deformed Casimir, kept verbatim for the
/// advisory comparison report.
pub fn h6_c3z_display(z: f64, v: &[f64; 6]) -> f64 {
    let e = (z * v[2]).exp();
    let em1 = f64::exp_m1(z * v[2]);
    z * v[0] * v[1] * v[5] * (2.0 * v[3] + v[0] - 1.0)
        - 2.0 * v[4] * em1 * em1 / (e * e * z * z)
        + 2.0 * v[1] * v[1] * v[5]
        - v[0] * v[3] * v[3]
        - 4.0 * v[0] * v[4] * v[5]
        - em1 * (2.0 * v[3] * (e + 1.0) + (v[0] - 1.0) * (1.0 - e)) / (z * e * e)
}

/// Classical three-copy constant
/// F⁽³⁾ = (x₁(y₂−y₃) + x₂(y₃−y₁) + x₃(y₁−y₂))².
pub fn h6_f3(p1: PhasePoint, p2: PhasePoint, p3: PhasePoint) -> f64 {
    let l = p1.x * (p2.y - p3.y) + p2.x * (p3.y - p1.y) + p3.x * (p1.y - p2.y);
    l * l
}

/// The displayed deformed two-copy constant of the h6 system, verbatim (the
/// unparseable exponent in the source display is read as e^{2z(x₁+x₂)});
/// advisory only, its drift is reported rather than asserted. At z = 0 the
/// stated limit 0 is returned.
pub fn h6_f3_deformed(z: f64, p1: PhasePoint, p2: PhasePoint) -> f64 {
    if z == 0.0 {
        return 0.0;
    }
    let (x1, y1, x2, y2) = (p1.x, p1.y, p2.x, p2.y);
    let ez = |a: f64| (z * a).exp();
    let term1 = (-z * (x1 + x2)).exp() / (2.0 * z)
        * (4.0 * ez(x1) - 2.0 * ez(2.0 * x1) + 4.0 * ez(x2) - 2.0 * ez(-2.0 * x2)
            + ez(2.0 * (x1 + x2))
            - 2.0 * ez(x1 + x2)
            - 3.0)
        * (y1 * ez(x2) + y2 * ez(x1));
    let term2 = -y1 * y1 / (z * z) * ez(-2.0 * x1) * (ez(2.0 * x1) - 1.0) * (ez(x2) - 1.0);
    let term3 = -y2 * y2 / (z * z) * (ez(2.0 * x2) - 1.0) * (ez(x1) - 1.0) * ez(-2.0 * x2);
    let term4 = y1 * y2 / (z * z)
        * (-z * (x1 + x2)).exp()
        * (ez(2.0 * x1 + 3.0 * x2) + ez(3.0 * x1 + 2.0 * x2)
            - 2.0 * ez(x1 + 2.0 * x2)
            - 2.0 * ez(2.0 * x1 + x2)
            - 2.0 * ez(2.0 * (x1 + x2))
            + 4.0 * ez(x1 + x2)
            - 2.0 * ez(3.0 * x2)
            + 6.0 * ez(2.0 * x2)
            - 5.0 * ez(x2)
            - 2.0 * ez(3.0 * x1)
            + 6.0 * ez(2.0 * x1)
            - 5.0 * ez(x1)
            + 2.0);
    term1 + term2 + term3 + term4
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lh::{lie_bracket, poisson_bracket};
    use crate::numkit::{integrate_adaptive, IntegratorConfig};

    const PTS: [PhasePoint; 4] = [
        PhasePoint { x: 1.0, y: 2.0 },
        PhasePoint { x: -0.6, y: 0.9 },
        PhasePoint { x: 2.0, y: 3.0 },
        PhasePoint { x: 0.3, y: -1.4 },
    ];

    #[test]
    fn h6_bracket_table_holds() {
        let fam = h6_family();
        for p in PTS {
            let vals = fam.ham_values(p);
            for rel in &fam.bracket_table {
                let got =
                    poisson_bracket(&fam.hams[rel.i], &fam.hams[rel.j], &fam.symp_density, p)
                        .unwrap();
                let want = (rel.expected)(&vals);
                assert!((got - want).abs() < 1e-12, "{} at {p:?}", rel.label);
            }
        }
    }

    #[test]
    fn h6_commutator_example() {
        // [X4,X5] = -X3 at (2,3)
        let fam = h6_family();
        let p = PhasePoint::new(2.0, 3.0);
        let got = lie_bracket(&fam.fields[4], &fam.fields[5], p, 0.0).unwrap();
        assert!((got.0 + 2.0).abs() < 1e-5 && (got.1 - 3.0).abs() < 1e-5);
        // [X3,X4] = -2X4 at (1,2)
        let p = PhasePoint::new(1.0, 2.0);
        let got = lie_bracket(&fam.fields[3], &fam.fields[4], p, 0.0).unwrap();
        assert!((got.0 + 4.0).abs() < 1e-5 && got.1.abs() < 1e-5);
    }

    #[test]
    fn classical_c3_realizes_to_zero_and_commutes() {
        let fam = h6_family();
        for p in PTS {
            let vals: [f64; 6] = fam.ham_values(p).try_into().unwrap();
            assert!(h6_classical_c3(&vals).abs() < 1e-13);
        }
    }

    #[test]
    fn damped_field_components() {
        let co = DampedCoeffs {
            a: TimeCoefficient::Constant(0.1),
            b: TimeCoefficient::Constant(1.0),
            c: TimeCoefficient::Constant(1.0),
            d: TimeCoefficient::Constant(0.2),
            f: TimeCoefficient::Constant(0.3),
        };
        let field = damped_field(&co);
        let p = PhasePoint::new(0.5, -1.0);
        let (dx, dp) = field.eval(0.0, p);
        assert!((dx - (0.1 * 0.5 + 1.0 * -1.0 + 0.3)).abs() < 1e-14);
        assert!((dp - (-0.1 * -1.0 - 1.0 * 0.5 - 0.2)).abs() < 1e-14);
    }

    #[test]
    fn f3_special_values() {
        // coincident pair cancels
        let (a, b) = (PhasePoint::new(0.2, 1.0), PhasePoint::new(1.5, -0.7));
        assert_eq!(damped_f3(a, b, b), 0.0);
        // hand value ((0,1),(1,0),(2,-1)) -> 0
        assert_eq!(
            damped_f3(
                PhasePoint::new(0.0, 1.0),
                PhasePoint::new(1.0, 0.0),
                PhasePoint::new(2.0, -1.0)
            ),
            0.0
        );
    }

    #[test]
    fn f3_conserved_along_three_solutions() {
        let co = DampedCoeffs {
            a: TimeCoefficient::Constant(0.1),
            b: TimeCoefficient::Constant(1.0),
            c: TimeCoefficient::Constant(1.0),
            d: TimeCoefficient::Constant(0.0),
            f: TimeCoefficient::Constant(0.0),
        };
        let field = damped_field(&co);
        let ode = field.diagonal_ode(3);
        let s0 = [1.0, 0.0, 0.0, 1.0, 1.0, 1.0];
        let tr = integrate_adaptive(&ode, 0.0, 4.0, &s0, &IntegratorConfig::with_tol(1e-11), None)
            .unwrap();
        let f = |s: &[f64]| {
            damped_f3(
                PhasePoint::new(s[0], s[1]),
                PhasePoint::new(s[2], s[3]),
                PhasePoint::new(s[4], s[5]),
            )
        };
        let drift = (f(tr.last_state()) - f(&s0)).abs() / f(&s0).abs().max(1.0);
        assert!(drift < 1e-9, "F3 drift {drift}");
    }

    #[test]
    fn damped_superposition_round_trip() {
        let co = DampedCoeffs {
            a: TimeCoefficient::Constant(0.1),
            b: TimeCoefficient::Constant(1.0),
            c: TimeCoefficient::Constant(1.0),
            d: TimeCoefficient::Sinusoid {
                offset: 0.0,
                amplitude: 0.2,
                omega: 1.3,
                phase: 0.0,
            },
            f: TimeCoefficient::Constant(0.3),
        };
        let field = damped_field(&co);
        let ode = field.diagonal_ode(4);
        // target, then particulars 2..4
        let s0 = [1.0, 0.0, 0.0, 1.0, 1.0, 1.0, -0.5, 0.7];
        let at = |t: f64| {
            let tr = integrate_adaptive(
                &ode,
                0.0,
                t,
                &s0,
                &IntegratorConfig::with_tol(1e-12),
                None,
            )
            .unwrap();
            let s = tr.last_state().to_vec();
            [
                PhasePoint::new(s[0], s[1]),
                PhasePoint::new(s[2], s[3]),
                PhasePoint::new(s[4], s[5]),
                PhasePoint::new(s[6], s[7]),
            ]
        };
        let p0 = at(0.0);
        let l1 = damped_l3(p0[0], p0[1], p0[2]);
        let l2 = damped_l3(p0[0], p0[2], p0[3]);
        let (k1, k2) = (l1 * l1, l2 * l2);
        let sgn = |v: f64| if v >= 0.0 { Branch::Plus } else { Branch::Minus };
        let mut worst = 0.0f64;
        for &t in &[0.0, 1.0, 2.0, 3.5, 5.0] {
            let p = at(t);
            let pred = damped_superpose(p[1], p[2], p[3], k1, k2, sgn(l1), sgn(l2)).unwrap();
            worst = worst.max((pred.x - p[0].x).abs()).max((pred.y - p[0].y).abs());
        }
        assert!(worst < 1e-5, "damped rule sup gap {worst}");
    }

    #[test]
    fn damped_invariant_pair_is_functionally_independent() {
        // the (F3, F3_24) pair has a rank-2 Jacobian in (x1, p1)
        let (s2, s3, s4) = (
            PhasePoint::new(0.3, 1.1),
            PhasePoint::new(1.2, -0.4),
            PhasePoint::new(-0.8, 0.6),
        );
        let f = |x: f64, p: f64| {
            let s1 = PhasePoint::new(x, p);
            (damped_f3(s1, s2, s3), damped_f3_24(s1, s3, s4))
        };
        let h = 1e-6;
        let (x, p) = (0.7, 0.9);
        let (a0, b0) = f(x, p);
        let (ax, bx) = f(x + h, p);
        let (ap, bp) = f(x, p + h);
        let det = (ax - a0) / h * (bp - b0) / h - (ap - a0) / h * (bx - b0) / h;
        assert!(det.abs() > 1e-6, "rank-deficient invariant pair, det = {det}");
    }

    #[test]
    fn damped_superposition_trivial_and_degenerate_cases() {
        let (s2, s3, s4) = (
            PhasePoint::new(0.0, 1.0),
            PhasePoint::new(1.0, 1.0),
            PhasePoint::new(-0.5, 0.7),
        );
        // zero constants collapse onto solution 3
        let p = damped_superpose(s2, s3, s4, 0.0, 0.0, Branch::Plus, Branch::Plus).unwrap();
        assert!((p.x - s3.x).abs() < 1e-14 && (p.y - s3.y).abs() < 1e-14);
        // x2 = x3 is degenerate
        assert!(damped_superpose(
            PhasePoint::new(1.0, 0.2),
            PhasePoint::new(1.0, 0.9),
            s4,
            1.0,
            1.0,
            Branch::Plus,
            Branch::Plus
        )
        .is_err());
        // negative squared constants are rejected
        assert!(
            damped_superpose(s2, s3, s4, -1.0, 0.0, Branch::Plus, Branch::Plus).is_err()
        );
    }

    #[test]
    fn h4_brackets_hold_and_limit_recovers_classical() {
        let z = 0.3;
        let fam = h4_deformed_family(z);
        let lam: crate::lh::ScalarFn = Arc::new(|_| 1.0);
        for p in PTS {
            let vals: Vec<f64> = fam.hams.iter().map(|h| h.value(p)).collect();
            for rel in &fam.bracket_table {
                let got = poisson_bracket(&fam.hams[rel.i], &fam.hams[rel.j], &lam, p).unwrap();
                let want = (rel.expected)(&vals);
                assert!((got - want).abs() < 1e-12, "{} at {p:?}", rel.label);
            }
        }
        // z -> 0: v3z -> x·y
        let fam0 = h4_deformed_family(0.0);
        for p in PTS {
            assert!((fam0.hams[3].value(p) - p.x * p.y).abs() < 1e-14);
            assert!((fam0.hams[1].value(p) - p.y).abs() < 1e-14);
        }
    }

    #[test]
    fn h4_field_matches_displayed_dynamics() {
        let z = 0.4;
        let field = h4_deformed_field(
            z,
            [
                TimeCoefficient::Constant(1.0),
                TimeCoefficient::Constant(0.5),
                TimeCoefficient::Constant(0.7),
            ],
        );
        for p in PTS {
            let (dx, dy) = field.eval(0.0, p);
            let e = (-z * p.x).exp();
            let want_dx = e * 1.0 + (1.0 - e) / z * 0.7;
            let want_dy = p.y * z * e * 1.0 + 0.5 - p.y * e * 0.7;
            assert!((dx - want_dx).abs() < 1e-13 && (dy - want_dy).abs() < 1e-13);
        }
    }

    #[test]
    fn h4_one_copy_casimir_realizes_to_zero() {
        for &z in &[0.05, 0.3, 1.0] {
            for p in PTS {
                assert!(h4_f1_casimir(z, p).abs() < 1e-12, "z={z} p={p:?}");
            }
        }
    }

    #[test]
    fn h4_f1_display_scales_linearly_in_z() {
        let p = PhasePoint::new(1.3, 0.8);
        let mut z = 0.1;
        let mut prev = h4_f1_display(z, p).abs();
        for _ in 0..5 {
            z *= 0.5;
            let cur = h4_f1_display(z, p).abs();
            let r = prev / cur;
            assert!(r > 1.6 && r < 2.4, "halving ratio {r}");
            prev = cur;
        }
        assert_eq!(h4_f1_display(0.0, p), 0.0);
    }

    #[test]
    fn h4_f2_classical_limit() {
        let (p1, p2) = (PhasePoint::new(1.0, 2.0), PhasePoint::new(-0.5, 0.3));
        let want = (p1.x - p2.x) * (p1.y - p2.y);
        let mut z = 0.1;
        let mut prev = (h4_f2(z, p1, p2) - want).abs();
        for _ in 0..5 {
            z *= 0.5;
            let cur = (h4_f2(z, p1, p2) - want).abs();
            let r = prev / cur;
            assert!(r > 1.5 && r < 2.5, "halving ratio {r}");
            prev = cur;
        }
    }

    #[test]
    fn h4_f2_conserved_on_coupled_flow() {
        let z = 0.2;
        let coeffs = [
            TimeCoefficient::Constant(1.0),
            TimeCoefficient::Sinusoid {
                offset: 0.0,
                amplitude: 1.0,
                omega: 1.0,
                phase: 0.0,
            },
            TimeCoefficient::Constant(0.5),
        ];
        let ode = h4_pair_ode(z, coeffs);
        let s0 = [0.4, 0.8, -0.3, 1.1];
        let tr = integrate_adaptive(&ode, 0.0, 6.0, &s0, &IntegratorConfig::with_tol(1e-11), None)
            .unwrap();
        let f = |s: &[f64]| h4_f2(z, PhasePoint::new(s[0], s[1]), PhasePoint::new(s[2], s[3]));
        let (f0, f1) = (f(&s0), f(tr.last_state()));
        assert!(
            ((f1 - f0) / f0.abs().max(1.0)).abs() < 1e-8,
            "coupled h4 F2 drift {}",
            f1 - f0
        );
    }

    #[test]
    fn h4_pair_flow_reduces_to_independent_copies_at_z_zero() {
        let coeffs = || {
            [
                TimeCoefficient::Constant(0.7),
                TimeCoefficient::Constant(-0.2),
                TimeCoefficient::Constant(0.4),
            ]
        };
        let pair = h4_pair_ode(0.0, coeffs());
        let single = h4_deformed_field(0.0, coeffs());
        let s = [0.5, -0.3, 1.2, 0.9];
        let mut d = [0.0; 4];
        pair(0.3, &s, &mut d);
        let a = single.eval(0.3, PhasePoint::new(s[0], s[1]));
        let b = single.eval(0.3, PhasePoint::new(s[2], s[3]));
        assert!((d[0] - a.0).abs() < 1e-12 && (d[1] - a.1).abs() < 1e-12);
        assert!((d[2] - b.0).abs() < 1e-12 && (d[3] - b.1).abs() < 1e-12);
    }

    #[test]
    fn h6_deformed_brackets_hold() {
        let z = 0.25;
        let fam = h6_deformed_family(z);
        let lam: crate::lh::ScalarFn = Arc::new(|_| 1.0);
        for p in [PhasePoint::new(1.0, 1.0), PhasePoint::new(-0.4, 0.7)] {
            let vals: Vec<f64> = fam.hams.iter().map(|h| h.value(p)).collect();
            for rel in &fam.bracket_table {
                let got = poisson_bracket(&fam.hams[rel.i], &fam.hams[rel.j], &lam, p).unwrap();
                let want = (rel.expected)(&vals);
                assert!(
                    (got - want).abs() < 1e-12 * want.abs().max(1.0),
                    "{} at {p:?}: {got} vs {want}",
                    rel.label
                );
            }
        }
    }

    #[test]
    fn h6_deformed_limits_recover_classical() {
        let fam = h6_deformed_family(0.0);
        let cl = h6_family();
        for p in PTS {
            for i in 0..6 {
                assert!((fam.hams[i].value(p) - cl.hams[i].value(p)).abs() < 1e-13, "v{i}");
                let a = fam.fields[i].eval(p);
                let b = cl.fields[i].eval(p);
                assert!((a.0 - b.0).abs() < 1e-13 && (a.1 - b.1).abs() < 1e-13, "X{i}");
            }
        }
    }

    #[test]
    fn h6_deformed_field_matches_displayed_dynamics() {
        let z = 0.3;
        let field = h6_deformed_field(
            z,
            [
                TimeCoefficient::Constant(0.2),
                TimeCoefficient::Constant(-0.4),
                TimeCoefficient::Constant(0.6),
                TimeCoefficient::Constant(0.8),
                TimeCoefficient::Constant(-1.0),
            ],
        );
        for p in PTS {
            let (dx, dy) = field.eval(0.0, p);
            let e = (-z * p.x).exp();
            let want_dx = e * 0.2 + (1.0 - e) / z * 0.6 + p.y * e * 0.8;
            let want_dy = p.y * z * e * 0.2 + (-0.4) - p.y * e * 0.6
                + 0.5 * p.y * p.y * z * e * 0.8
                + (z * p.x).exp() * f64::exp_m1(z * p.x) / z * (-1.0);
            assert!(
                (dx - want_dx).abs() < 1e-12 && (dy - want_dy).abs() < 1e-12,
                "at {p:?}: ({dx},{dy}) vs ({want_dx},{want_dy})"
            );
        }
    }

    #[test]
    fn corrected_c3z_realizes_to_a_constant_on_one_copy() {
        for &z in &[0.1, 0.4] {
            let fam = h6_deformed_family(z);
            let mut vals = Vec::new();
            for p in PTS {
                let v: [f64; 6] = std::array::from_fn(|i| fam.hams[i].value(p));
                vals.push(h6_c3z(z, &v));
            }
            for w in vals.windows(2) {
                assert!(
                    (w[0] - w[1]).abs() < 1e-10,
                    "one-copy C3z not constant: {vals:?}"
                );
            }
            // the displayed form is not constant (it is kept for the report)
            let v0: [f64; 6] = std::array::from_fn(|i| fam.hams[i].value(PTS[0]));
            let v1: [f64; 6] = std::array::from_fn(|i| fam.hams[i].value(PTS[2]));
            assert!((h6_c3z_display(z, &v0) - h6_c3z_display(z, &v1)).abs() > 1e-6);
        }
    }

    #[test]
    fn corrected_c3z_poisson_commutes_with_all_generators() {
        // finite-difference bracket of the realized C3z with each v_{j,z}
        let z = 0.3;
        let fam = h6_deformed_family(z);
        let c3 = |p: PhasePoint| {
            let v: [f64; 6] = std::array::from_fn(|i| fam.hams[i].value(p));
            h6_c3z(z, &v)
        };
        for p in [PhasePoint::new(0.8, 1.1), PhasePoint::new(-0.5, 0.6)] {
            let (cx, cy) = crate::numkit::central_gradient(c3, p, 0.0).unwrap();
            for (j, h) in fam.hams.iter().enumerate() {
                let (hx, hy) = h.gradient(p);
                let bracket = hy * cx - hx * cy;
                assert!(bracket.abs() < 1e-6, "{{C3z, v{j}}} = {bracket} at {p:?}");
            }
        }
    }

    #[test]
    fn h4_two_copy_values_close_the_deformed_brackets() {
        // finite-difference product brackets of the coproduct functions must
        // reproduce the deformed algebra with central value 2
        let z = 0.2;
        let s = [0.4, 0.8, -0.3, 1.1];
        let val = |q: &[f64], k: usize| {
            h4_two_copy_values(z, PhasePoint::new(q[0], q[1]), PhasePoint::new(q[2], q[3]))[k]
        };
        let bracket = |i: usize, j: usize| {
            let h = 1e-6;
            let mut di = [0.0; 4];
            let mut dj = [0.0; 4];
            for k in 0..4 {
                let mut sp = s;
                sp[k] += h;
                let mut sm = s;
                sm[k] -= h;
                di[k] = (val(&sp, i) - val(&sm, i)) / (2.0 * h);
                dj[k] = (val(&sp, j) - val(&sm, j)) / (2.0 * h);
            }
            (di[0] * dj[1] - di[1] * dj[0]) + (di[2] * dj[3] - di[3] * dj[2])
        };
        let v = h4_two_copy_values(z, PhasePoint::new(s[0], s[1]), PhasePoint::new(s[2], s[3]));
        assert!((bracket(1, 2) - v[0] * (z * v[2]).exp()).abs() < 1e-8);
        assert!((bracket(1, 3) + v[1]).abs() < 1e-8);
        assert!((bracket(2, 3) - f64::exp_m1(z * v[2]) / z).abs() < 1e-8);
    }

    #[test]
    fn h6_f3_deformed_limit_is_small_for_small_z() {
        let (p1, p2) = (PhasePoint::new(0.7, 0.4), PhasePoint::new(-0.3, 1.2));
        assert_eq!(h6_f3_deformed(0.0, p1, p2), 0.0);
        // the verbatim display stays finite and shrinks with z
        let a = h6_f3_deformed(0.05, p1, p2).abs();
        let b = h6_f3_deformed(0.025, p1, p2).abs();
        assert!(b < a, "display does not shrink: {a} -> {b}");
    }

    #[test]
    fn classical_f3_coincident_pair_vanishes() {
        let (p1, p2) = (PhasePoint::new(0.7, 0.4), PhasePoint::new(-0.3, 1.2));
        assert_eq!(h6_f3(p1, p2, p2), 0.0);
    }
}
