//! Experiment runner for bosonic gate synthesis: TOML configurations,
//! timestep and order sweeps, power-law fits, gate-count ledgers and
//! CSV/JSON reports.

pub mod config;
pub mod error;
pub mod output;
pub mod report;
pub mod runner;

pub use config::{DynamicsSpec, ExperimentConfig, FitSpec, GridSpec, HeatmapSpec, SweepSpec};
pub use error::{BenchError, Result};
pub use output::{emit_csv, emit_json, report_csv, report_json};
pub use report::{FitSummary, GridRow, SweepReport, SynthesisReport};
pub use runner::{describe, list_applications, run, sweep, write_experiment, write_sweep, Experiment, RunOptions};
