//! Quadrature against the Chebyshev weight (1-x²)^{-1/2} on [-1, 1].

use crate::{Error, Result};

/// ∫_{-1}^{1} f(x)·(1-x²)^{-1/2} dx via the substitution x = cos θ and the
/// composite midpoint rule on θ ∈ [0, π] with `n_nodes` panels.
///
/// The substitution removes the endpoint singularity; for trigonometric
/// polynomial integrands the midpoint rule is exact up to aliasing order.
pub fn quad_chebyshev_weight<F>(f: F, n_nodes: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if n_nodes == 0 {
        return Err(Error::InvalidArgument("quadrature needs at least one node".into()));
    }
    let h = std::f64::consts::PI / n_nodes as f64;
    let mut acc = 0.0;
    for k in 0..n_nodes {
        let theta = (k as f64 + 0.5) * h;
        acc += f(theta.cos());
    }
    Ok(acc * h)
}
