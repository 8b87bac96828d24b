//! Error type shared by all modules.

use thiserror::Error;

/// Failures surfaced by the numerical and structural operations.
///
/// Domain violations are hard errors throughout: every singular set in the
/// model (x = 0, y = 0, u = v, p ≥ 0, p²q² = 1, ...) is structural, never
/// clamped.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("point outside the family domain{}", fmt_state(.t, .state))]
    OutOfDomain { t: Option<f64>, state: Vec<f64> },

    #[error("symplectic density vanishes at the queried point")]
    SingularForm,

    #[error("singular realization: pivot Hamiltonian vanishes at the queried point")]
    SingularRealization,

    #[error("maximum step count exceeded at t = {t}")]
    MaxSteps { t: f64, state: Vec<f64> },

    #[error("integration left the domain; last valid sample at t = {t}")]
    DomainExit { t: f64, state: Vec<f64> },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no in-domain sample found within the rejection budget")]
    SamplingExhausted,
}

fn fmt_state(t: &Option<f64>, state: &[f64]) -> String {
    match t {
        Some(t) => format!(" at t = {t}, state = {state:?}"),
        None => format!(": state = {state:?}"),
    }
}
