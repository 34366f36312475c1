use std::path::{Path, PathBuf};
use std::time::Instant;

use bosonic_synth::applications::{
    evolve_with, heatmap_matches, ApplicationSpec, DynamicsTrace, Observables, Registry, SynthesizedGate,
};
use bosonic_synth::product_formulas::fit_above_floor;
use bosonic_synth::tensor_core::{FactorAddress, Operator, StateVector};
use bosonic_synth::SynthError;
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::error::{BenchError, Result};
use crate::output::{dynamics_csv, heatmap_csv, report_csv, report_json, sweep_csv, to_json, write_atomic};
use crate::report::{DynamicsSummary, FitSummary, GateTally, GridRow, HeatmapSummary, SweepReport, SynthesisReport};

/// Largest Hilbert-space dimension allowed by default.
pub const DEFAULT_DIM_CAP: usize = 2048;

/// Execution settings that do not change results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub threads: usize,
    pub dim_cap: usize,
    /// Overrides the configured seed.
    pub seed: Option<u64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { threads: 1, dim_cap: DEFAULT_DIM_CAP, seed: None }
    }
}

/// Report plus the raw data behind the optional artifacts.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub report: SynthesisReport,
    pub dynamics: Option<(DynamicsTrace, DynamicsTrace)>,
    pub heatmap: Option<(Operator, Operator)>,
}

fn usage(e: SynthError) -> BenchError {
    match e {
        SynthError::InvalidArgument(msg) => BenchError::Config(msg),
        other => BenchError::Synth(other),
    }
}

fn lookup<'r>(registry: &'r Registry, name: &str) -> Result<&'r ApplicationSpec> {
    registry.get(name).map_err(usage)
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| BenchError::Threads(e.to_string()))
}

fn grid_rows(gate: &SynthesizedGate, psi: &StateVector, ts: &[f64], slices: u64, threads: usize) -> Result<Vec<GridRow>> {
    let point = |&t: &f64| -> Result<GridRow> {
        Ok(GridRow {
            t,
            op_norm_error: gate.error(t)?,
            autocorr_error: gate.autocorrelation_error(t, psi)?,
            gate_count: gate.emit(t).depth() as u64,
            slices,
        })
    };
    pool(threads)?.install(|| ts.par_iter().map(point).collect())
}

fn fit(config: &ExperimentConfig, rows: &[GridRow]) -> Option<FitSummary> {
    let ts: Vec<f64> = rows.iter().map(|r| r.t).collect();
    let errs: Vec<f64> = rows.iter().map(|r| r.op_norm_error).collect();
    let fit = fit_above_floor(&ts, &errs, config.fit.floor).ok()?;
    let reliable = fit.residual <= config.fit.residual_cap;
    Some(FitSummary {
        exponent: reliable.then_some(fit.exponent),
        raw_exponent: fit.exponent,
        prefactor: fit.prefactor,
        residual: fit.residual,
        points: fit.points,
        unreliable: !reliable,
    })
}

/// Builds the configured gate, sweeps the grid and records the optional
/// dynamics and heatmap.
pub fn run(config: &ExperimentConfig, options: &RunOptions) -> Result<Experiment> {
    let started = Instant::now();
    config.validate()?;
    let mut config = config.clone();
    if let Some(seed) = options.seed {
        config.seed = seed;
    }
    let registry = Registry::builtin();
    let spec = lookup(&registry, &config.application)?;
    let params = config.params;
    let dim = spec.dimension(&params)?;
    if dim > options.dim_cap {
        return Err(BenchError::DimensionCap { dim, cap: options.dim_cap });
    }
    let gate = spec.build(&params)?;
    let psi = spec.initial_state(&params)?;
    let ts = config.grid.times()?;
    let rows = grid_rows(&gate, &psi, &ts, params.slices, options.threads)?;
    let tally = gate.gate_count();
    let gate_counts = GateTally { total: tally.total(), by_kind: tally.by_kind().clone() };
    let cost_bound = spec.cost_bound(&params)?;
    let within_bound = rows.iter().all(|r| r.gate_count as f64 <= cost_bound);

    let dynamics = match &config.dynamics {
        None => None,
        Some(d) => {
            let obs = Observables {
                mode: FactorAddress(1),
                levels: d.levels,
                physical_max: d.physical_max.unwrap_or(params.cutoff as usize),
            };
            let dt = d.t_final / d.steps as f64;
            let exact = evolve_with(&gate.exact(dt)?, &psi, dt, d.steps, &obs)?;
            let synthesized = evolve_with(&gate.eval(dt), &psi, dt, d.steps, &obs)?;
            Some((exact, synthesized))
        }
    };
    let dynamics_summary = config.dynamics.as_ref().zip(dynamics.as_ref()).map(|(d, (exact, synth))| {
        let deviation = exact
            .autocorrelation
            .iter()
            .zip(&synth.autocorrelation)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        DynamicsSummary {
            t_final: d.t_final,
            steps: d.steps,
            max_autocorr_deviation: deviation,
            max_leakage_exact: exact.max_leakage(),
            max_leakage_synthesized: synth.max_leakage(),
            max_norm_drift: exact.max_norm_drift().max(synth.max_norm_drift()),
        }
    });

    let heatmap = match &config.heatmap {
        None => None,
        Some(h) => Some((gate.exact(h.t)?, gate.eval(h.t))),
    };
    let heatmap_summary = config.heatmap.as_ref().zip(heatmap.as_ref()).map(|(h, (exact, synth))| {
        let deviation = exact
            .data()
            .iter()
            .zip(synth.data().iter())
            .filter(|(e, _)| e.norm() > h.support)
            .map(|(e, s)| (e.norm() - s.norm()).abs())
            .fold(0.0, f64::max);
        HeatmapSummary { t: h.t, matches: heatmap_matches(exact, synth, h.support, h.tolerance), max_support_deviation: deviation }
    });

    let fit = fit(&config, &rows);
    let predicted = gate.predicted_exponent();
    let report = SynthesisReport {
        config,
        gate_name: gate.name().to_string(),
        dimension: dim,
        predicted_exponent: predicted.is_finite().then_some(predicted),
        rows,
        gate_counts,
        fit,
        cost_bound,
        within_bound,
        dynamics: dynamics_summary,
        heatmap: heatmap_summary,
        wall_clock_seconds: started.elapsed().as_secs_f64(),
    };
    Ok(Experiment { report, dynamics, heatmap })
}

/// Runs the grid once per configured order.
pub fn sweep(config: &ExperimentConfig, options: &RunOptions) -> Result<SweepReport> {
    let orders = config
        .sweep
        .as_ref()
        .map(|s| s.orders.clone())
        .ok_or_else(|| BenchError::Config("sweep needs a [sweep] section with `orders`".into()))?;
    let mut reports = Vec::with_capacity(orders.len());
    for &order in &orders {
        let mut single = config.clone();
        single.params.order = order;
        single.dynamics = None;
        single.heatmap = None;
        single.sweep = None;
        reports.push(run(&single, options)?.report);
    }
    Ok(SweepReport { orders, reports })
}

fn artifact(out_dir: &Path, name: &str, suffix: &str) -> PathBuf {
    out_dir.join(format!("{name}{suffix}"))
}

/// Writes `<name>.csv`, `<name>.json` and, when recorded,
/// `<name>_dynamics.csv` and `<name>_heatmap.csv`.
pub fn write_experiment(experiment: &Experiment, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let name = &experiment.report.config.name;
    let mut written = Vec::new();
    let mut put = |suffix: &str, bytes: Vec<u8>| -> Result<()> {
        let path = artifact(out_dir, name, suffix);
        write_atomic(&path, &bytes)?;
        written.push(path);
        Ok(())
    };
    put(".csv", report_csv(&experiment.report)?)?;
    put(".json", report_json(&experiment.report)?)?;
    if let Some((exact, synth)) = &experiment.dynamics {
        put("_dynamics.csv", dynamics_csv(exact, synth)?)?;
    }
    if let Some((exact, synth)) = &experiment.heatmap {
        put("_heatmap.csv", heatmap_csv(exact, synth)?)?;
    }
    Ok(written)
}

/// Writes `<name>_sweep.csv` and `<name>_sweep.json`.
pub fn write_sweep(name: &str, sweep: &SweepReport, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let csv_path = artifact(out_dir, name, "_sweep.csv");
    let json_path = artifact(out_dir, name, "_sweep.json");
    write_atomic(&csv_path, &sweep_csv(sweep)?)?;
    for r in &sweep.reports {
        report_json(r)?;
    }
    write_atomic(&json_path, &to_json(sweep)?)?;
    Ok(vec![csv_path, json_path])
}

/// Text of the `list` subcommand.
pub fn list_applications() -> String {
    let registry = Registry::builtin();
    registry.specs().iter().map(|s| format!("{:<32} {}\n", s.name, s.summary)).collect()
}

/// Text of the `describe` subcommand.
pub fn describe(name: &str) -> Result<String> {
    Registry::builtin().describe(name).map_err(usage)
}
