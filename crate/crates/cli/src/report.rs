use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;

/// One grid point of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub t: f64,
    pub op_norm_error: f64,
    pub autocorr_error: f64,
    pub gate_count: u64,
    pub slices: u64,
}

/// Primitive exponentials per kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateTally {
    pub total: u64,
    pub by_kind: BTreeMap<String, u64>,
}

/// Log-log fit of operator-norm error against `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitSummary {
    /// Present only when the residual is within the configured cap.
    pub exponent: Option<f64>,
    pub raw_exponent: f64,
    pub prefactor: f64,
    pub residual: f64,
    pub points: usize,
    pub unreliable: bool,
}

/// Extremes of the exact and synthesized trajectories.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DynamicsSummary {
    pub t_final: f64,
    pub steps: usize,
    pub max_autocorr_deviation: f64,
    pub max_leakage_exact: f64,
    pub max_leakage_synthesized: f64,
    pub max_norm_drift: f64,
}

/// Heatmap comparison at one time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeatmapSummary {
    pub t: f64,
    pub matches: bool,
    pub max_support_deviation: f64,
}

/// Everything measured by one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthesisReport {
    pub config: ExperimentConfig,
    pub gate_name: String,
    pub dimension: usize,
    /// Single-step error exponent promised by the formulas; absent when the
    /// gate is exact.
    pub predicted_exponent: Option<f64>,
    pub rows: Vec<GridRow>,
    pub gate_counts: GateTally,
    pub fit: Option<FitSummary>,
    pub cost_bound: f64,
    pub within_bound: bool,
    pub dynamics: Option<DynamicsSummary>,
    pub heatmap: Option<HeatmapSummary>,
    pub wall_clock_seconds: f64,
}

impl SynthesisReport {
    /// Every float in the report, for the finiteness guard.
    pub(crate) fn floats(&self) -> Vec<f64> {
        let mut out = vec![self.cost_bound, self.wall_clock_seconds];
        out.extend(self.predicted_exponent);
        for r in &self.rows {
            out.extend([r.t, r.op_norm_error, r.autocorr_error]);
        }
        if let Some(f) = &self.fit {
            out.extend([f.raw_exponent, f.prefactor, f.residual]);
        }
        if let Some(d) = &self.dynamics {
            out.extend([d.t_final, d.max_autocorr_deviation, d.max_leakage_exact, d.max_leakage_synthesized, d.max_norm_drift]);
        }
        if let Some(h) = &self.heatmap {
            out.extend([h.t, h.max_support_deviation]);
        }
        out
    }
}

/// Reports of one `sweep` over commutator orders.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub orders: Vec<u32>,
    pub reports: Vec<SynthesisReport>,
}
