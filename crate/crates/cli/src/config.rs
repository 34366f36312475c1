use std::path::Path;

use bosonic_synth::applications::AppParams;
use bosonic_synth::product_formulas::{linear_grid, log_grid};
use serde::{Deserialize, Serialize};

use crate::error::{BenchError, Result};

/// Timestep grid of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    #[serde(default = "default_true")]
    pub log: bool,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(BenchError::Config("grid bounds must be finite".into()));
        }
        if self.min >= self.max {
            return Err(BenchError::Config(format!("grid min {} must be below max {}", self.min, self.max)));
        }
        if self.points < 4 {
            return Err(BenchError::Config(format!("grid needs at least 4 points, got {}", self.points)));
        }
        if self.log && self.min <= 0.0 {
            return Err(BenchError::Config("a log grid needs min > 0".into()));
        }
        Ok(())
    }

    pub fn times(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let ts = if self.log { log_grid(self.min, self.max, self.points) } else { linear_grid(self.min, self.max, self.points) };
        Ok(ts?)
    }
}

/// Power-law fit settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FitSpec {
    /// Errors at or below this value are excluded from the fit.
    pub floor: f64,
    /// Largest RMS log₁₀ residual for which the exponent is reported.
    pub residual_cap: f64,
}

impl Default for FitSpec {
    fn default() -> Self {
        FitSpec { floor: 1e-13, residual_cap: 0.1 }
    }
}

/// Stepped evolution recorded alongside the sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DynamicsSpec {
    pub t_final: f64,
    pub steps: usize,
    /// Recorded Fock levels of the first mode.
    #[serde(default = "default_levels")]
    pub levels: usize,
    /// Photon numbers above this count as leakage; defaults to the cutoff.
    #[serde(default)]
    pub physical_max: Option<usize>,
}

/// Entrywise moduli of the exact and synthesized gates at one time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeatmapSpec {
    pub t: f64,
    #[serde(default = "default_support")]
    pub support: f64,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

/// Orders visited by the `sweep` subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub orders: Vec<u32>,
}

/// One experiment, read from TOML.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub application: String,
    /// File stem of every artifact.
    pub name: String,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub params: AppParams,
    pub grid: GridSpec,
    #[serde(default)]
    pub fit: FitSpec,
    #[serde(default)]
    pub dynamics: Option<DynamicsSpec>,
    #[serde(default)]
    pub heatmap: Option<HeatmapSpec>,
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: ExperimentConfig =
            toml::from_str(text).map_err(|e| BenchError::Config(e.message().to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| BenchError::Config(format!("cannot read {}: {e}", path.display())))?;
        let config: ExperimentConfig =
            toml::from_str(&text).map_err(|source| BenchError::Parse { path: path.to_path_buf(), source })?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() || self.name.contains(['/', '\\']) {
            return Err(BenchError::Config(format!("name `{}` must be a plain file stem", self.name)));
        }
        self.grid.validate()?;
        if self.params.order < 1 || self.params.slices < 1 {
            return Err(BenchError::Config("order and slices must be at least 1".into()));
        }
        if !(self.fit.floor >= 0.0 && self.fit.residual_cap > 0.0) {
            return Err(BenchError::Config("fit floor must be ≥ 0 and residual_cap > 0".into()));
        }
        if let Some(d) = &self.dynamics {
            if d.steps == 0 || !(d.t_final.is_finite() && d.t_final > 0.0) {
                return Err(BenchError::Config("dynamics needs steps ≥ 1 and t_final > 0".into()));
            }
        }
        if let Some(s) = &self.sweep {
            if s.orders.is_empty() || s.orders.contains(&0) {
                return Err(BenchError::Config("sweep orders must be a non-empty list of orders ≥ 1".into()));
            }
        }
        Ok(())
    }
}

fn default_true() -> bool {
    true
}

fn default_levels() -> usize {
    4
}

fn default_support() -> f64 {
    0.1
}

fn default_tolerance() -> f64 {
    0.15
}
