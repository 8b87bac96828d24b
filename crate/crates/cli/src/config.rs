//! Declarative run configuration (TOML).

use std::collections::BTreeMap;

use lhkit::lh::TimeCoefficient;
use lhkit::numkit::IntegratorConfig;
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub seed: Option<u64>,
    pub integrator: Option<IntegratorCfg>,
    pub simulate: Option<SimulateCfg>,
    pub superpose: Option<SuperposeCfg>,
    pub scan: Option<ScanCfg>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorCfg {
    pub abs_tol: Option<f64>,
    pub rel_tol: Option<f64>,
    pub max_steps: Option<usize>,
    pub initial_step: Option<f64>,
}

impl IntegratorCfg {
    pub fn build(cfg: &Option<IntegratorCfg>) -> IntegratorConfig {
        let mut out = IntegratorConfig::default();
        if let Some(c) = cfg {
            if let Some(v) = c.abs_tol {
                out.abs_tol = v;
            }
            if let Some(v) = c.rel_tol {
                out.rel_tol = v;
            }
            if let Some(v) = c.max_steps {
                out.max_steps = v;
            }
            out.initial_step = c.initial_step;
        }
        out
    }
}

/// One scalar coefficient of time.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CoefficientCfg {
    Constant {
        value: f64,
    },
    Sinusoid {
        offset: f64,
        amplitude: f64,
        omega: f64,
        #[serde(default)]
        phase: f64,
    },
    Polynomial {
        coeffs: Vec<f64>,
    },
    Tabulated {
        knots: Vec<(f64, f64)>,
    },
}

impl From<CoefficientCfg> for TimeCoefficient {
    fn from(c: CoefficientCfg) -> Self {
        match c {
            CoefficientCfg::Constant { value } => TimeCoefficient::Constant(value),
            CoefficientCfg::Sinusoid {
                offset,
                amplitude,
                omega,
                phase,
            } => TimeCoefficient::Sinusoid {
                offset,
                amplitude,
                omega,
                phase,
            },
            CoefficientCfg::Polynomial { coeffs } => TimeCoefficient::Polynomial(coeffs),
            CoefficientCfg::Tabulated { knots } => TimeCoefficient::Tabulated(knots),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateCfg {
    pub family: String,
    #[serde(default)]
    pub c: f64,
    #[serde(default)]
    pub z: f64,
    #[serde(default)]
    pub t0: f64,
    pub t1: f64,
    pub initial: Vec<f64>,
    pub initial2: Option<Vec<f64>>,
    #[serde(default)]
    pub coefficients: BTreeMap<String, CoefficientCfg>,
}

impl SimulateCfg {
    pub fn coeff(&self, name: &str, default: TimeCoefficient) -> TimeCoefficient {
        self.coefficients
            .get(name)
            .cloned()
            .map(TimeCoefficient::from)
            .unwrap_or(default)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuperposeCfg {
    pub rule: String,
    #[serde(default)]
    pub t0: f64,
    pub t1: f64,
    #[serde(default = "default_grid_points")]
    pub grid_points: usize,
    pub target: Vec<f64>,
    pub particulars: Vec<Vec<f64>>,
    #[serde(default)]
    pub coefficients: BTreeMap<String, CoefficientCfg>,
}

fn default_grid_points() -> usize {
    21
}

impl SuperposeCfg {
    pub fn coeff(&self, name: &str, default: TimeCoefficient) -> TimeCoefficient {
        self.coefficients
            .get(name)
            .cloned()
            .map(TimeCoefficient::from)
            .unwrap_or(default)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanCfg {
    pub family: String,
    pub z_values: Vec<f64>,
    #[serde(default)]
    pub c: f64,
    pub t1: f64,
    pub initial: Vec<f64>,
    pub initial2: Vec<f64>,
    #[serde(default)]
    pub coefficients: BTreeMap<String, CoefficientCfg>,
}
