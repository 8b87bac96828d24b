//! Planar Lie–Hamilton systems and their Poisson–Hopf deformations.
//!
//! The crate models finite families of Hamiltonian vector fields on the plane
//! together with their Hamiltonian functions and symplectic density, deforms
//! the sl(2)-type families through the non-standard quantum deformation, and
//! checks every structural identity numerically: bracket tables, commutators,
//! Casimir constancy, invariant drift along trajectories, classical limits and
//! superposition rules.
//!
//! Module map:
//! - [`numkit`]: special functions, finite differences, quadrature, fixed and
//!   adaptive Runge–Kutta integrators.
//! - [`lh`]: phase-space data model, symplectic calculus and the generic
//!   deformation engine with its coproduct machinery.
//! - [`sl2`]: the three non-diffeomorphic planar sl(2) classes, their closed
//!   form deformations and tabulated two-copy invariants.
//! - [`milne_pinney`]: the Milne–Pinney oscillator, its deformation and the
//!   position-dependent-mass reading.
//! - [`riccati`]: complex, coupled and second-order Riccati systems with the
//!   Milne–Pinney changes of variables and the five-generator superposition
//!   rule.
//! - [`oscillators`]: the two-photon algebra realization, the damped harmonic
//!   oscillator rule, and the h4/h6 quantum deformations.
//! - [`sisf`]: the SIS epidemic model with fluctuations, its superposition
//!   rules, sl(2) embedding and deformation.
//! - [`noether`]: the sl(2)-invariant deformed scalar and coupled equations of
//!   Appendix-style form, with Chebyshev special functions.
//! - [`verify`]: the deterministic property-check harness producing pass/fail
//!   reports.

pub mod error;
pub mod lh;
pub mod milne_pinney;
pub mod noether;
pub mod numkit;
pub mod oscillators;
pub mod riccati;
pub mod sisf;
pub mod sl2;
pub mod suite;
pub mod verify;

pub use error::Error;
pub use lh::PhasePoint;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
