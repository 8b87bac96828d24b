//! Property tests for the structural invariants: symmetry of the special
//! functions, antisymmetry of the bracket, exactness of the Casimir identity
//! and the coproduct limits, over randomized inputs.

use lhkit::lh::{casimir_f, poisson_bracket, two_copy_values, PhasePoint, ScalarField};
use lhkit::milne_pinney::{mp_deformed_triple, mp_f2, mp_f2_deformed};
use lhkit::numkit::{expm1_ratio, sinhc};
use lhkit::riccati::{complex_to_mp, mp_to_complex, Branch};
use lhkit::sl2::{class_f2_deformed, table42_triple, Sl2Class};
use proptest::prelude::*;

fn finite_coord() -> impl Strategy<Value = f64> {
    prop_oneof![-3.0..3.0f64, -0.5..0.5f64]
}

proptest! {
    #[test]
    fn sinhc_is_even_and_at_least_one(x in -20.0..20.0f64) {
        let a = sinhc(x).unwrap();
        let b = sinhc(-x).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(a >= 1.0);
    }

    #[test]
    fn expm1_ratio_limit_is_linear(x in -3.0..3.0f64, z in 1e-8..1e-2f64) {
        let v = expm1_ratio(z, x).unwrap();
        // (1 − e^{−zx})/z = x − z·x²/2 + z²x³/6 − ...
        let remainder = z * z * x.abs().powi(3);
        prop_assert!((v - x + z * x * x / 2.0).abs() < remainder.max(1e-12));
    }

    #[test]
    fn poisson_bracket_is_antisymmetric(
        x in finite_coord(),
        y in finite_coord(),
        a in -2.0..2.0f64,
        b in -2.0..2.0f64,
    ) {
        let f = ScalarField::new(
            move |p: PhasePoint| a * p.x * p.x + p.y,
            move |p: PhasePoint| (2.0 * a * p.x, 1.0),
        );
        let g = ScalarField::new(
            move |p: PhasePoint| b * p.x * p.y,
            move |p: PhasePoint| (b * p.y, b * p.x),
        );
        let lam: lhkit::lh::ScalarFn = std::sync::Arc::new(|_| 1.0);
        let p = PhasePoint::new(x, y);
        let fg = poisson_bracket(&f, &g, &lam, p).unwrap();
        let gf = poisson_bracket(&g, &f, &lam, p).unwrap();
        prop_assert!((fg + gf).abs() < 1e-12 * fg.abs().max(1.0));
    }

    #[test]
    fn one_copy_casimir_identity_is_exact(
        c in -3.0..5.0f64,
        z in 0.0..0.8f64,
        x in 0.4..2.0f64,
        y in -2.0..2.0f64,
    ) {
        let tr = mp_deformed_triple(c, z);
        let f = casimir_f(&tr, tr.ham_values(PhasePoint::new(x, y)), z);
        prop_assert!((f - c / 4.0).abs() < 1e-11, "F = {f}, c/4 = {}", c / 4.0);
    }

    #[test]
    fn two_copy_values_reduce_to_sums_at_zero_deformation(
        x1 in 0.4..2.0f64, y1 in -2.0..2.0f64,
        x2 in 0.4..2.0f64, y2 in -2.0..2.0f64,
    ) {
        let tr = mp_deformed_triple(4.0, 0.0);
        let (p1, p2) = (PhasePoint::new(x1, y1), PhasePoint::new(x2, y2));
        let v = two_copy_values(&tr, p1, p2).unwrap();
        for k in 0..3 {
            let want = tr.hams[k].value(p1) + tr.hams[k].value(p2);
            prop_assert!((v[k] - want).abs() < 1e-12 * want.abs().max(1.0));
        }
    }

    #[test]
    fn deformed_two_copy_invariant_tends_to_classical(
        x1 in 0.5..1.8f64, y1 in -1.5..1.5f64,
        x2 in 0.5..1.8f64, y2 in -1.5..1.5f64,
    ) {
        let (p1, p2) = (PhasePoint::new(x1, y1), PhasePoint::new(x2, y2));
        let f0 = mp_f2(4.0, p1, p2).unwrap();
        let fz = mp_f2_deformed(4.0, 1e-6, p1, p2).unwrap();
        prop_assert!((fz - f0).abs() < 1e-4 * f0.abs().max(1.0));
    }

    #[test]
    fn riccati_change_of_variables_round_trips(
        u in -2.0..2.0f64,
        v in 0.05..3.0f64,
    ) {
        let p = PhasePoint::new(u, v);
        let back = mp_to_complex(complex_to_mp(p, Branch::Plus).unwrap()).unwrap();
        prop_assert!((back.x - u).abs() < 1e-10 && (back.y - v).abs() < 1e-10);
    }

    #[test]
    fn tabulated_deformed_invariant_matches_generic_pipeline(
        z in 0.0..0.6f64,
        x1 in -1.5..1.5f64, y1 in 0.4..2.0f64,
        x2 in -1.5..1.5f64, y2 in 0.4..2.0f64,
    ) {
        let (p1, p2) = (PhasePoint::new(x1, y1), PhasePoint::new(x2, y2));
        let tr = table42_triple(Sl2Class::P2, z);
        let generic = casimir_f(&tr, two_copy_values(&tr, p1, p2).unwrap(), z);
        let tab = class_f2_deformed(Sl2Class::P2, z, p1, p2).unwrap();
        prop_assert!((generic - tab).abs() < 1e-9 * tab.abs().max(1.0));
    }
}
