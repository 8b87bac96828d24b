//! Acceptance suite: every structural identity the library promises, run at
//! its stated tolerance through the named batteries of [`lhkit::suite`],
//! one pass/fail line per check.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use lhkit::suite;
use lhkit::verify::{reports_to_text, CheckReport};

const SEED: u64 = 0xACCE_5501;

fn emit(criterion: &str, reports: &[CheckReport]) {
    for r in reports {
        print!("[ACCEPT {criterion}] {}", reports_to_text(std::slice::from_ref(r)));
    }
    for r in reports {
        assert!(
            r.pass || r.advisory,
            "criterion {criterion} failed: {} (max_rel {:.3e}, tol {:.1e}) {}",
            r.name,
            r.max_rel_err,
            r.tol,
            r.notes
        );
    }
}

#[test]
fn acceptance_01_field_hamiltonian_consistency() {
    emit("1", &suite::suite_field_consistency(SEED));
}

#[test]
fn acceptance_02_bracket_tables() {
    emit("2", &suite::suite_brackets(SEED));
}

#[test]
fn acceptance_02b_commutator_tables() {
    emit("2b", &suite::suite_commutators(SEED));
}

#[test]
fn acceptance_03_engine_matches_tabulated_deformation() {
    emit("3", &suite::suite_sl2_tables(SEED));
}

#[test]
fn acceptance_04_one_copy_casimir_identity() {
    emit("4", &suite::suite_casimir(SEED));
}

#[test]
fn acceptance_05_invariant_drift() {
    emit("5", &suite::suite_drift());
}

#[test]
fn acceptance_06_classical_limits() {
    emit("6", &suite::suite_limits());
}

#[test]
fn acceptance_07_superposition_rules() {
    emit("7", &suite::suite_superposition());
}

#[test]
fn acceptance_08_chebyshev_orthogonality() {
    emit("8", &suite::suite_chebyshev());
}

#[test]
fn acceptance_09_coupled_chebyshev_preset() {
    emit("9", &suite::suite_coupled_preset());
}

#[test]
fn acceptance_10_advisory_audits() {
    // advisory magnitudes are published and never gate
    emit("10", &suite::suite_advisory());
}

#[test]
fn acceptance_11_negative_controls() {
    emit("11", &suite::suite_negative_controls(SEED));
}
