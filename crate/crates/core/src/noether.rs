//! sl(2)-invariant deformations of second-order linear equations: the scalar
//! deformed equation with its two quadratic invariants, the coupled planar
//! deformation, and the Chebyshev special functions with orthogonality
//! checks.
//!
//! The base equation is y″ = (g′/2g)y′ − g·y for a nonvanishing coefficient
//! g(x) with independent solutions (T, U); the deformation adds the inverse
//! cubic forcing 2αg/y³ that preserves the sl(2) Noether subalgebra.

use std::sync::Arc;

use crate::numkit::{integrate_adaptive, quad_chebyshev_weight, IntegratorConfig, Trajectory};
use crate::{Error, Result};

/// T_n(x) = cos(n·arccos x) on [−1, 1].
pub fn chebyshev_t(n: u32, x: f64) -> Result<f64> {
    check_unit_interval(x)?;
    Ok((n as f64 * x.acos()).cos())
}

/// U_n(x) = sin(n·arccos x) on [−1, 1] (the sine convention, not the
/// standard second-kind polynomial).
pub fn chebyshev_u(n: u32, x: f64) -> Result<f64> {
    check_unit_interval(x)?;
    Ok((n as f64 * x.acos()).sin())
}

fn check_unit_interval(x: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::OutOfDomain {
            t: None,
            state: vec![x],
        });
    }
    Ok(())
}

/// Which product family the orthogonality integral uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChebKind {
    /// cos-convention products T_n·T_m (values π, π/2, 0)
    First,
    /// sin-convention products U_n·U_m (values 0, π/2, 0)
    Second,
}

/// ∫_{-1}^{1} f_n f_m (1−x²)^{−1/2} dx for the selected kind, by the cosine
/// substitution with `n_nodes` midpoint panels.
pub fn chebyshev_orthogonality(n: u32, m: u32, kind: ChebKind, n_nodes: usize) -> Result<f64> {
    match kind {
        ChebKind::First => quad_chebyshev_weight(
            |x| (n as f64 * x.acos()).cos() * (m as f64 * x.acos()).cos(),
            n_nodes,
        ),
        ChebKind::Second => quad_chebyshev_weight(
            |x| (n as f64 * x.acos()).sin() * (m as f64 * x.acos()).sin(),
            n_nodes,
        ),
    }
}

type Fn1 = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Coefficient g with its derivative and a pair of independent solutions
/// (T, U) of the base equation, with their derivatives.
#[derive(Clone)]
pub struct GTriple {
    g: Fn1,
    g_prime: Fn1,
    t: Fn1,
    t_prime: Fn1,
    u: Fn1,
    u_prime: Fn1,
}

impl GTriple {
    /// Wrap a user-supplied triple, validating on the given grid that both
    /// T and U satisfy the base equation to 1e-8 (second derivatives by
    /// central differences of the supplied first derivatives) and that the
    /// Wronskian does not vanish.
    pub fn new<G, GP, T, TP, U, UP>(
        g: G,
        g_prime: GP,
        t: T,
        t_prime: TP,
        u: U,
        u_prime: UP,
        validation_grid: &[f64],
    ) -> Result<Self>
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
        GP: Fn(f64) -> f64 + Send + Sync + 'static,
        T: Fn(f64) -> f64 + Send + Sync + 'static,
        TP: Fn(f64) -> f64 + Send + Sync + 'static,
        U: Fn(f64) -> f64 + Send + Sync + 'static,
        UP: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let triple = Self {
            g: Arc::new(g),
            g_prime: Arc::new(g_prime),
            t: Arc::new(t),
            t_prime: Arc::new(t_prime),
            u: Arc::new(u),
            u_prime: Arc::new(u_prime),
        };
        triple.validate(validation_grid)?;
        Ok(triple)
    }

    fn validate(&self, grid: &[f64]) -> Result<()> {
        let h = 1e-6;
        for &x in grid {
            let g = (self.g)(x);
            if g == 0.0 || !g.is_finite() {
                return Err(Error::InvalidArgument(format!("g vanishes at x = {x}")));
            }
            for (f, fp, name) in [
                (&self.t, &self.t_prime, "T"),
                (&self.u, &self.u_prime, "U"),
            ] {
                let second = (fp(x + h) - fp(x - h)) / (2.0 * h);
                let residual = second - (self.g_prime)(x) / (2.0 * g) * fp(x) + g * f(x);
                if residual.abs() > 1e-8 * (1.0 + g.abs()) {
                    return Err(Error::InvalidArgument(format!(
                        "{name} fails the base equation at x = {x} (residual {residual})"
                    )));
                }
            }
            if self.wronskian(x).abs() < 1e-12 {
                return Err(Error::InvalidArgument(format!("Wronskian vanishes at x = {x}")));
            }
        }
        Ok(())
    }

    pub fn g(&self, x: f64) -> f64 {
        (self.g)(x)
    }

    pub fn g_prime(&self, x: f64) -> f64 {
        (self.g_prime)(x)
    }

    pub fn t(&self, x: f64) -> f64 {
        (self.t)(x)
    }

    pub fn t_prime(&self, x: f64) -> f64 {
        (self.t_prime)(x)
    }

    pub fn u(&self, x: f64) -> f64 {
        (self.u)(x)
    }

    pub fn u_prime(&self, x: f64) -> f64 {
        (self.u_prime)(x)
    }

    /// W = T·U′ − U·T′; proportional to √g along solutions.
    pub fn wronskian(&self, x: f64) -> f64 {
        self.t(x) * self.u_prime(x) - self.u(x) * self.t_prime(x)
    }

    /// g = 1 with (T, U) = (sin, cos).
    pub fn preset_unit() -> Self {
        Self {
            g: Arc::new(|_| 1.0),
            g_prime: Arc::new(|_| 0.0),
            t: Arc::new(f64::sin),
            t_prime: Arc::new(f64::cos),
            u: Arc::new(f64::cos),
            u_prime: Arc::new(|x| -x.sin()),
        }
    }

    /// g = x on x > 0 with (T, U) = (sin, cos) of ⅔x^{3/2}.
    pub fn preset_monomial() -> Self {
        let phase = |x: f64| 2.0 / 3.0 * x * x.sqrt();
        Self {
            g: Arc::new(|x| x),
            g_prime: Arc::new(|_| 1.0),
            t: Arc::new(move |x| phase(x).sin()),
            t_prime: Arc::new(move |x| x.sqrt() * phase(x).cos()),
            u: Arc::new(move |x| phase(x).cos()),
            u_prime: Arc::new(move |x| -x.sqrt() * phase(x).sin()),
        }
    }

    /// g = n²/(1−x²) on (−1, 1) with (T, U) = (U_n, T_n) in the sine
    /// convention; the derivatives follow T_n′ = nU_n/√(1−x²),
    /// U_n′ = −nT_n/√(1−x²).
    pub fn preset_chebyshev(n: u32) -> Self {
        let nf = n as f64;
        Self {
            g: Arc::new(move |x| nf * nf / (1.0 - x * x)),
            g_prime: Arc::new(move |x| {
                let d = 1.0 - x * x;
                2.0 * nf * nf * x / (d * d)
            }),
            t: Arc::new(move |x| (nf * x.acos()).sin()),
            t_prime: Arc::new(move |x| -nf * (nf * x.acos()).cos() / (1.0 - x * x).sqrt()),
            u: Arc::new(move |x| (nf * x.acos()).cos()),
            u_prime: Arc::new(move |x| nf * (nf * x.acos()).sin() / (1.0 - x * x).sqrt()),
        }
    }
}

/// The base equation as a first-order field on (y, y′): y″ = (g′/2g)y′ − gy.
pub fn ge3_ode(gt: &GTriple) -> impl Fn(f64, &[f64], &mut [f64]) + '_ {
    move |x, s, d| {
        let g = gt.g(x);
        d[0] = s[1];
        d[1] = gt.g_prime(x) / (2.0 * g) * s[1] - g * s[0];
    }
}

/// The deformed equation: y″ = (g′/2g)y′ − gy + 2αg/y³.
pub fn deformed_ge3_ode(gt: &GTriple, alpha: f64) -> impl Fn(f64, &[f64], &mut [f64]) + '_ {
    move |x, s, d| {
        let g = gt.g(x);
        d[0] = s[1];
        d[1] = gt.g_prime(x) / (2.0 * g) * s[1] - g * s[0] + 2.0 * alpha * g / (s[0] * s[0] * s[0]);
    }
}

/// Integrate the deformed scalar equation, failing with a clear error if y
/// crosses a sign-change bracket around zero between accepted samples.
pub fn integrate_deformed_ge3(
    gt: &GTriple,
    alpha: f64,
    x0: f64,
    x1: f64,
    y0: f64,
    yp0: f64,
    cfg: &IntegratorConfig,
) -> Result<Trajectory> {
    let ode = deformed_ge3_ode(gt, alpha);
    let tr = integrate_adaptive(&ode, x0, x1, &[y0, yp0], cfg, Some(&|s: &[f64]| s[0] != 0.0))?;
    for w in tr.samples.windows(2) {
        if w[0].1[0] * w[1].1[0] < 0.0 {
            return Err(Error::DomainExit {
                t: w[0].0,
                state: w[0].1.clone(),
            });
        }
    }
    Ok(tr)
}

/// The two quadratic constants of the deformed scalar equation at a state:
/// ψ₀ = (W/√g)·(((y′)²/g + y²)/2 + α/y²) and the cross invariant
/// ψ₃ = ψ₁ψ₂ + 2αTU/y² with ψ₁ = (y′T − yT′)/√g, ψ₂ = (y′U − yU′)/√g.
///
/// Both are conserved along the deformed flow for arbitrary g; ψ₀ scales
/// linearly under a rescale of the Wronskian.
pub fn psi_invariants(gt: &GTriple, alpha: f64, x: f64, y: f64, yp: f64) -> Result<(f64, f64)> {
    let g = gt.g(x);
    if g == 0.0 {
        return Err(Error::SingularForm);
    }
    if y == 0.0 {
        return Err(Error::OutOfDomain {
            t: Some(x),
            state: vec![y, yp],
        });
    }
    let sq = g.abs().sqrt();
    let psi0 = gt.wronskian(x) / sq * (0.5 * (yp * yp / g + y * y) + alpha / (y * y));
    let psi1 = (yp * gt.t(x) - y * gt.t_prime(x)) / sq;
    let psi2 = (yp * gt.u(x) - y * gt.u_prime(x)) / sq;
    let psi3 = psi1 * psi2 + 2.0 * alpha * gt.t(x) * gt.u(x) / (y * y);
    Ok((psi0, psi3))
}

/// The coupled planar deformation as a 4-state field on (y₁, y₁′, y₂, y₂′),
/// the Euler–Lagrange equations of
/// L = (1/2√g)·((y₁′)² + (y₂′)² − g(y₁²+y₂²) − (g/y₁²)φ(y₂/y₁)):
/// y₁″ = (g′/2g)y₁′ − gy₁ + (g/y₁³)φ(s) + (gy₂/(2y₁⁴))φ′(s),
/// y₂″ = (g′/2g)y₂′ − gy₂ − (g/(2y₁³))φ′(s) with s = y₂/y₁.
///
/// (The displayed equations carry the deformation with the opposite sign,
/// contradicting their own Lagrangian; that sign makes the coupling
/// attractive and the quoted α = 0.21 run collapses onto y₁ = 0 before
/// x = 0.15 instead of oscillating to x = 0.9.)
pub fn coupled_deformed_ode<'a>(
    gt: &'a GTriple,
    phi: impl Fn(f64) -> f64 + 'a,
    phi_prime: impl Fn(f64) -> f64 + 'a,
) -> impl Fn(f64, &[f64], &mut [f64]) + 'a {
    move |x, s, d| {
        let g = gt.g(x);
        let damp = gt.g_prime(x) / (2.0 * g);
        let (y1, y1p, y2, y2p) = (s[0], s[1], s[2], s[3]);
        let r = y2 / y1;
        d[0] = y1p;
        d[1] = damp * y1p - g * y1
            + g / (y1 * y1 * y1) * phi(r)
            + g * y2 / (2.0 * y1 * y1 * y1 * y1) * phi_prime(r);
        d[2] = y2p;
        d[3] = damp * y2p - g * y2 - g / (2.0 * y1 * y1 * y1) * phi_prime(r);
    }
}

/// The degree-7 Chebyshev preset of the coupled system: g = 49/(1−x²) with
/// the quadratic coupling φ(s) = α·s².
pub fn coupled_chebyshev7_ode(alpha: f64) -> impl Fn(f64, &[f64], &mut [f64]) {
    let gt = GTriple::preset_chebyshev(7);
    move |x, s, d| {
        let ode = coupled_deformed_ode(&gt, |r| alpha * r * r, |r| 2.0 * alpha * r);
        ode(x, s, d);
    }
}
