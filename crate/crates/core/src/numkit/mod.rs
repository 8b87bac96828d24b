//! Numerically stable special functions, finite differences, quadrature and
//! ODE integrators shared by the system modules.
//!
//! Everything here is pure and double precision; values are freely shareable
//! across threads.

mod diff;
mod ode;
mod quad;
pub(crate) mod special;

pub use diff::{central_gradient, central_gradient_step, central_jacobian};
pub use ode::{
    integrate_adaptive, integrate_adaptive_through, integrate_fixed_rk4, IntegratorConfig,
    OdeField, Trajectory,
};
pub use quad::quad_chebyshev_weight;
pub use special::{cosh_over_sinhc2, expm1_ratio, expm1_scaled, sinhc, sinhc_prime, x_coth};
