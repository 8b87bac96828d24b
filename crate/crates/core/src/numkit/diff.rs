//! Central finite differences on the plane.

use crate::lh::PhasePoint;
use crate::{Error, Result};

/// Default per-axis step: eps^{1/3}·max(1, |coordinate|).
pub fn central_gradient_step(coord: f64) -> f64 {
    f64::EPSILON.cbrt() * coord.abs().max(1.0)
}

/// Central-difference gradient of a scalar function on the plane.
///
/// `step` ≤ 0 selects the default per-axis step. Non-finite samples are
/// treated as evaluation outside the domain.
pub fn central_gradient<F>(f: F, p: PhasePoint, step: f64) -> Result<(f64, f64)>
where
    F: Fn(PhasePoint) -> f64,
{
    let hx = if step > 0.0 { step } else { central_gradient_step(p.x) };
    let hy = if step > 0.0 { step } else { central_gradient_step(p.y) };
    let fx1 = f(PhasePoint::new(p.x + hx, p.y));
    let fx0 = f(PhasePoint::new(p.x - hx, p.y));
    let fy1 = f(PhasePoint::new(p.x, p.y + hy));
    let fy0 = f(PhasePoint::new(p.x, p.y - hy));
    let g = ((fx1 - fx0) / (2.0 * hx), (fy1 - fy0) / (2.0 * hy));
    if !g.0.is_finite() || !g.1.is_finite() {
        return Err(Error::OutOfDomain {
            t: None,
            state: vec![p.x, p.y],
        });
    }
    Ok(g)
}

/// Central-difference Jacobian of a planar vector field, row-major
/// [[∂a/∂x, ∂a/∂y], [∂b/∂x, ∂b/∂y]].
pub fn central_jacobian<F>(f: F, p: PhasePoint, step: f64) -> Result<[[f64; 2]; 2]>
where
    F: Fn(PhasePoint) -> (f64, f64),
{
    let hx = if step > 0.0 { step } else { central_gradient_step(p.x) };
    let hy = if step > 0.0 { step } else { central_gradient_step(p.y) };
    let (ax1, bx1) = f(PhasePoint::new(p.x + hx, p.y));
    let (ax0, bx0) = f(PhasePoint::new(p.x - hx, p.y));
    let (ay1, by1) = f(PhasePoint::new(p.x, p.y + hy));
    let (ay0, by0) = f(PhasePoint::new(p.x, p.y - hy));
    let j = [
        [(ax1 - ax0) / (2.0 * hx), (ay1 - ay0) / (2.0 * hy)],
        [(bx1 - bx0) / (2.0 * hx), (by1 - by0) / (2.0 * hy)],
    ];
    if j.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::OutOfDomain {
            t: None,
            state: vec![p.x, p.y],
        });
    }
    Ok(j)
}
