//! Command-line front end: argument parsing, configuration resolution and
//! command execution. `main` stays thin so integration tests can drive the
//! same code paths in-process.

pub mod error;
pub mod io;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use gca_qmee::harness::{
    run_fig1_timing, run_rvr_sweep, run_table1, run_table2, Experiment, ExperimentSpec, NoiseCase,
};
use gca_qmee::{
    analyze_channels, BicVariant, Criterion, CriterionConfig, GcaConfig, OrderRule, TimeSeries,
};

pub use crate::error::CliError;
pub use crate::io::{emit_report, parse_csv, ChannelTable, ConfigEcho, OutputFormat, PairFailure, Report};

/// Granger causality analysis under the MSE, MEE and QMEE criteria.
#[derive(Debug, Parser)]
#[command(name = "gca-qmee", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pairwise causality analysis of a multichannel CSV file
    Analyze(AnalyzeArgs),
    /// Synthetic benchmark experiments with seeded Monte-Carlo runs
    Simulate(SimulateArgs),
    /// Solver timing across sample sizes
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CriterionArg {
    Mse,
    Mee,
    Qmee,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Self {
        match c {
            CriterionArg::Mse => Criterion::Mse,
            CriterionArg::Mee => Criterion::Mee,
            CriterionArg::Qmee => Criterion::Qmee,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum BicVariantArg {
    /// N*log(H2Q) + i*log(N), with fallback when the entropy is <= 0
    Literal,
    /// N*H2Q + i*log(N)
    Potential,
}

impl From<BicVariantArg> for BicVariant {
    fn from(b: BicVariantArg) -> Self {
        match b {
            BicVariantArg::Literal => BicVariant::Literal,
            BicVariantArg::Potential => BicVariant::PotentialBased,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ExperimentArg {
    /// Coefficient RMSE on the two-weight regression system
    Table1,
    /// Causality indexes and discrimination on the coupled pair
    Table2,
    /// Solver timing across sample sizes
    Fig1,
    /// Robustness sweep over the stable-noise exponent
    Fig2,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    /// Input CSV: header row of channel names, numeric rows, '#' comments
    #[arg(long)]
    pub input: PathBuf,
    /// Output path; '-' writes to stdout
    #[arg(long, default_value = "-")]
    pub output: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[arg(long, value_enum, default_value_t = CriterionArg::Qmee)]
    pub criterion: CriterionArg,
    /// Gaussian kernel bandwidth
    #[arg(long, default_value_t = 0.5)]
    pub sigma: f64,
    /// Quantization threshold (multichannel-analysis default)
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
    /// Fixed-point iteration cap
    #[arg(long, default_value_t = 100)]
    pub iters: usize,
    /// Convergence tolerance on the weight increment; 0 always runs the cap
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Relative ridge coefficient for rank-deficient solves
    #[arg(long, default_value_t = 1e-10)]
    pub ridge: f64,
    /// Largest candidate embedding order (multichannel-analysis default)
    #[arg(long, default_value_t = 20)]
    pub pmax: usize,
    /// Fix this embedding order for every model instead of BIC selection
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long, value_enum, default_value_t = BicVariantArg::Potential)]
    pub bic_variant: BicVariantArg,
    /// Force one common BIC order on the four models of each pair
    #[arg(long)]
    pub common_order: bool,
    /// Mean-center each channel before embedding (the models carry no
    /// intercept)
    #[arg(long)]
    pub center: bool,
    /// Sample rate metadata in Hz, echoed into the report
    #[arg(long)]
    pub sample_rate: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub experiment: ExperimentArg,
    /// Noise case for table1/table2: 1 symmetric mixture, 2 asymmetric
    /// mixture, 3 alpha-stable [1.3, 0, 0.4, 0]
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub case: u8,
    /// Monte-Carlo runs (default 100; 50 for fig2)
    #[arg(long)]
    pub runs: Option<usize>,
    /// Base seed; run k uses seed base+k
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Directory for the per-run CSVs and the JSON summary
    #[arg(long, default_value = "results")]
    pub outdir: PathBuf,
    /// Criteria subset, comma separated (default: mse,mee,qmee; fig1: mee,qmee)
    #[arg(long, value_delimiter = ',')]
    pub criteria: Vec<CriterionArg>,
    /// Samples per generated dataset
    #[arg(long, default_value_t = 500)]
    pub n: usize,
    /// Gaussian kernel bandwidth
    #[arg(long, default_value_t = 0.5)]
    pub sigma: f64,
    /// Quantization threshold (synthetic-benchmark default)
    #[arg(long, default_value_t = 0.4)]
    pub epsilon: f64,
    /// Fixed-point iteration cap (fig1 uses --bench-iters instead)
    #[arg(long, default_value_t = 100)]
    pub iters: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Largest candidate embedding order (synthetic-benchmark default)
    #[arg(long, default_value_t = 10)]
    pub pmax: usize,
    /// Force one common BIC order on the four models of each pair
    #[arg(long)]
    pub common_order: bool,
    /// Smallest sample size of the fig1 grid (doubles up to --nmax)
    #[arg(long, default_value_t = 500)]
    pub nmin: usize,
    /// Largest sample size of the fig1 grid
    #[arg(long, default_value_t = 8000)]
    pub nmax: usize,
    /// Timed solves per fig1 grid point
    #[arg(long, default_value_t = 2)]
    pub bench_repeats: usize,
    /// Iterations per timed fig1 solve (tol is pinned to 0)
    #[arg(long, default_value_t = 10)]
    pub bench_iters: usize,
    /// Smallest alpha of the fig2 sweep
    #[arg(long, default_value_t = 0.5)]
    pub alpha_min: f64,
    /// Alpha step of the fig2 sweep (downwards from 2.0)
    #[arg(long, default_value_t = 0.05)]
    pub alpha_step: f64,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Smallest sample size (grid doubles up to --nmax)
    #[arg(long, default_value_t = 500)]
    pub nmin: usize,
    /// Largest sample size
    #[arg(long, default_value_t = 8000)]
    pub nmax: usize,
    /// Timed solves per grid point
    #[arg(long, default_value_t = 2)]
    pub repeats: usize,
    /// Iterations per timed solve (tol is pinned to 0 so every criterion
    /// runs the same count)
    #[arg(long, default_value_t = 10)]
    pub iters: usize,
    /// Criteria to time (default: mee,qmee)
    #[arg(long, value_delimiter = ',')]
    pub criteria: Vec<CriterionArg>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Directory for the timing CSVs and the JSON summary
    #[arg(long, default_value = "results")]
    pub outdir: PathBuf,
    #[arg(long, default_value_t = 0.5)]
    pub sigma: f64,
    #[arg(long, default_value_t = 0.4)]
    pub epsilon: f64,
}

fn doubling_grid(nmin: usize, nmax: usize) -> Result<Vec<usize>, CliError> {
    if nmin < 8 || nmax < nmin {
        return Err(CliError::InvalidArgs(format!("bad size range {nmin}..{nmax}")));
    }
    let mut grid = Vec::new();
    let mut n = nmin;
    while n < nmax {
        grid.push(n);
        n *= 2;
    }
    grid.push(nmax);
    Ok(grid)
}

fn case_of(case: u8) -> NoiseCase {
    match case {
        1 => NoiseCase::Case1,
        2 => NoiseCase::Case2,
        _ => NoiseCase::Case3,
    }
}

impl AnalyzeArgs {
    pub fn gca_config(&self) -> GcaConfig {
        GcaConfig {
            criterion: self.criterion.into(),
            criterion_config: CriterionConfig {
                sigma: self.sigma,
                epsilon: self.epsilon,
                max_iters: self.iters,
                tol: self.tol,
                ridge: self.ridge,
            },
            p_max: self.pmax,
            order_rule: match self.order {
                Some(p) => OrderRule::Fixed(p),
                None => OrderRule::Bic,
            },
            bic_variant: self.bic_variant.into(),
            common_order: self.common_order,
        }
    }

    fn config_echo(&self) -> ConfigEcho {
        ConfigEcho {
            input: self.input.display().to_string(),
            criterion: Criterion::from(self.criterion).label().to_string(),
            sigma: self.sigma,
            epsilon: self.epsilon,
            max_iters: self.iters,
            tol: self.tol,
            ridge: self.ridge,
            p_max: self.pmax,
            order_rule: match self.order {
                Some(p) => format!("fixed({p})"),
                None => "bic".to_string(),
            },
            bic_variant: match self.bic_variant {
                BicVariantArg::Literal => "literal".to_string(),
                BicVariantArg::Potential => "potential_based".to_string(),
            },
            common_order: self.common_order,
            center: self.center,
            sample_rate: self.sample_rate,
        }
    }
}

/// Parses the input table, runs the pairwise analysis and assembles the
/// report (without writing it).
pub fn run_analyze(args: &AnalyzeArgs) -> Result<Report, CliError> {
    let table = parse_csv(&args.input)?;
    let mut channels: Vec<TimeSeries> = table.to_time_series()?;
    if args.center {
        channels = channels.iter().map(TimeSeries::centered).collect();
    }
    let analysis = analyze_channels(&channels, &args.gca_config())?;
    let failures = analysis
        .failures()
        .into_iter()
        .map(|(i, j, error)| PairFailure {
            from: analysis.names[i].clone(),
            to: analysis.names[j].clone(),
            error,
        })
        .collect();
    Ok(Report {
        criterion: Criterion::from(args.criterion).label().to_string(),
        config: args.config_echo(),
        channels: analysis.names.clone(),
        pairs: analysis.directed_indexes(),
        matrix: analysis.index_matrix(),
        failures,
    })
}

fn criteria_or(defaults: &[Criterion], chosen: &[CriterionArg]) -> Vec<Criterion> {
    if chosen.is_empty() {
        defaults.to_vec()
    } else {
        chosen.iter().map(|&c| c.into()).collect()
    }
}

/// Builds the experiment spec a `simulate` invocation describes.
pub fn simulate_spec(args: &SimulateArgs) -> Result<ExperimentSpec, CliError> {
    let case = case_of(args.case);
    let mut spec = match args.experiment {
        ExperimentArg::Table1 => ExperimentSpec::table1(case, args.runs.unwrap_or(100), args.seed),
        ExperimentArg::Table2 => ExperimentSpec::table2(case, args.runs.unwrap_or(100), args.seed),
        ExperimentArg::Fig1 => {
            let mut s = ExperimentSpec::fig1(args.seed);
            s.n_grid = doubling_grid(args.nmin, args.nmax)?;
            s.bench_repeats = args.bench_repeats;
            s.gca.criterion_config.max_iters = args.bench_iters;
            s
        }
        ExperimentArg::Fig2 => {
            let mut s = ExperimentSpec::fig2(args.runs.unwrap_or(50), args.seed);
            if args.alpha_min != 0.5 || args.alpha_step != 0.05 {
                if !(args.alpha_min > 0.0 && args.alpha_min <= 2.0 && args.alpha_step > 0.0) {
                    return Err(CliError::InvalidArgs("bad alpha sweep range".into()));
                }
                let mut grid = Vec::new();
                let mut a = 2.0;
                while a >= args.alpha_min - 1e-12 {
                    grid.push((a as f64 * 1e9).round() / 1e9);
                    a -= args.alpha_step;
                }
                s.alpha_grid = grid;
            }
            s
        }
    };
    spec.n = args.n;
    spec.gca.criterion_config.sigma = args.sigma;
    spec.gca.criterion_config.epsilon = args.epsilon;
    spec.gca.criterion_config.tol = args.tol;
    spec.gca.p_max = args.pmax;
    spec.gca.common_order = args.common_order;
    match args.experiment {
        ExperimentArg::Fig1 => {
            spec.criteria = criteria_or(&[Criterion::Mee, Criterion::Qmee], &args.criteria);
            spec.gca.criterion_config.tol = 0.0;
        }
        _ => {
            spec.criteria = criteria_or(&Criterion::ALL, &args.criteria);
            spec.gca.criterion_config.max_iters = args.iters;
        }
    }
    Ok(spec)
}

/// Runs a `simulate` invocation, persists results under `outdir`, and
/// returns human-readable summary lines.
pub fn run_simulate(args: &SimulateArgs) -> Result<Vec<String>, CliError> {
    let spec = simulate_spec(args)?;
    let mut lines = Vec::new();
    let paths = match spec.experiment {
        Experiment::Table1 => {
            let result = run_table1(&spec)?;
            for pc in &result.per_criterion {
                if let Some(s) = pc.summary {
                    lines.push(format!(
                        "table1 {} {}: rmse mean {:.4} +/- {:.4} (median {:.4}, {} runs, {} failed)",
                        result.case, pc.criterion, s.mean, s.std, s.median, s.count, pc.failures
                    ));
                }
            }
            result.persist(&args.outdir)?
        }
        Experiment::Table2 => {
            let result = run_table2(&spec)?;
            for pc in &result.per_criterion {
                if let (Some(fxy), Some(fyx), Some(rho)) = (pc.f_xy, pc.f_yx, pc.rho) {
                    lines.push(format!(
                        "table2 {} {}: f_xy {:.4} +/- {:.4}, f_yx {:.4}, rho {:.4} ({} runs, {} failed)",
                        result.case, pc.criterion, fxy.mean, fxy.std, fyx.mean, rho.mean,
                        fxy.count, pc.failures
                    ));
                }
            }
            result.persist(&args.outdir)?
        }
        Experiment::Fig1 => {
            let result = run_fig1_timing(&spec)?;
            for row in &result.rows {
                lines.push(format!(
                    "fig1 {} n={}: {:.4}s per solve",
                    row.criterion, row.n, row.mean_seconds
                ));
            }
            result.persist(&args.outdir)?
        }
        Experiment::Fig2 => {
            let result = run_rvr_sweep(&spec)?;
            for curve in &result.curves {
                let max_xi = curve.points.iter().map(|p| p.xi).fold(0.0, f64::max);
                lines.push(format!("fig2 {}: max xi {:.4} over alpha grid", curve.criterion, max_xi));
            }
            result.persist(&args.outdir)?
        }
        Experiment::Custom => return Err(CliError::InvalidArgs("custom experiment".into())),
    };
    for p in paths {
        lines.push(format!("wrote {}", p.display()));
    }
    Ok(lines)
}

/// Runs a `bench` invocation, persists the timing table, and returns
/// summary lines.
pub fn run_bench(args: &BenchArgs) -> Result<Vec<String>, CliError> {
    let mut spec = ExperimentSpec::fig1(args.seed);
    spec.n_grid = doubling_grid(args.nmin, args.nmax)?;
    spec.bench_repeats = args.repeats;
    spec.criteria = criteria_or(&[Criterion::Mee, Criterion::Qmee], &args.criteria);
    spec.gca.criterion_config.sigma = args.sigma;
    spec.gca.criterion_config.epsilon = args.epsilon;
    spec.gca.criterion_config.max_iters = args.iters;
    spec.gca.criterion_config.tol = 0.0;
    let result = run_fig1_timing(&spec)?;
    let mut lines = Vec::new();
    for row in &result.rows {
        lines.push(format!(
            "{} n={}: {:.4}s per solve (over {} repeats)",
            row.criterion,
            row.n,
            row.mean_seconds,
            row.seconds.len()
        ));
    }
    for p in result.persist(&args.outdir)? {
        lines.push(format!("wrote {}", p.display()));
    }
    Ok(lines)
}

/// Executes a parsed command; returns lines to print on stdout.
pub fn execute(cli: &Cli) -> Result<Vec<String>, CliError> {
    match &cli.command {
        Command::Analyze(args) => {
            let report = run_analyze(args)?;
            emit_report(&report, args.format, &args.output)?;
            let mut lines = Vec::new();
            if args.output != "-" {
                lines.push(format!("wrote {}", args.output));
            }
            for f in &report.failures {
                lines.push(format!("pair {} <-> {} failed: {}", f.from, f.to, f.error));
            }
            Ok(lines)
        }
        Command::Simulate(args) => run_simulate(args),
        Command::Bench(args) => run_bench(args),
    }
}
