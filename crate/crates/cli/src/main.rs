use std::path::PathBuf;
use std::process::ExitCode;

use bosonic_bench::runner::DEFAULT_DIM_CAP;
use bosonic_bench::{describe, list_applications, run, sweep, write_experiment, write_sweep, ExperimentConfig, Result, RunOptions};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bosonic-bench", version, about = "Synthesis benchmarks for qubit-oscillator gates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the configured timestep grid and write the report.
    Run {
        config: PathBuf,
        #[command(flatten)]
        exec: Exec,
    },
    /// Repeat the grid for every order in the `[sweep]` section.
    Sweep {
        config: PathBuf,
        #[command(flatten)]
        exec: Exec,
    },
    /// List registered applications.
    List,
    /// Show the parameters and notes of one application.
    Describe { application: String },
}

#[derive(Args)]
struct Exec {
    /// Directory receiving the artifacts.
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
    /// Worker threads for grid points.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Largest Hilbert-space dimension to allocate.
    #[arg(long, default_value_t = DEFAULT_DIM_CAP)]
    dim_cap: usize,
    /// Overrides the configured seed.
    #[arg(long)]
    seed: Option<u64>,
}

impl Exec {
    fn options(&self) -> RunOptions {
        RunOptions { threads: self.threads, dim_cap: self.dim_cap, seed: self.seed }
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::List => print!("{}", list_applications()),
        Command::Describe { application } => print!("{}", describe(&application)?),
        Command::Run { config, exec } => {
            let config = ExperimentConfig::load(&config)?;
            let experiment = run(&config, &exec.options())?;
            let report = &experiment.report;
            for path in write_experiment(&experiment, &exec.out_dir)? {
                println!("wrote {}", path.display());
            }
            match report.fit.as_ref().and_then(|f| f.exponent) {
                Some(e) => println!("fitted exponent {e:.3}"),
                None => println!("fitted exponent unreliable"),
            }
            println!("gate count {} (bound {}, within bound: {})", report.gate_counts.total, report.cost_bound, report.within_bound);
        }
        Command::Sweep { config, exec } => {
            let config = ExperimentConfig::load(&config)?;
            let result = sweep(&config, &exec.options())?;
            for path in write_sweep(&config.name, &result, &exec.out_dir)? {
                println!("wrote {}", path.display());
            }
            for (order, report) in result.orders.iter().zip(&result.reports) {
                let exponent = report.fit.as_ref().and_then(|f| f.exponent);
                println!("order {order}: exponent {exponent:?}, gate count {}", report.gate_counts.total);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
