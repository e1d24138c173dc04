//! The `depcoef` command line: argument parsing, command dispatch and the
//! kernel benchmark.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::baselines::baselines;
use crate::coefficient::{
    coefficient, mu_fast, mu_fast_parallel, mu_naive, Algorithm, Thresholds,
};
use crate::error::{Error, Result};
use crate::estimation::tabulate;
use crate::generators::{gen_random, GeneratorKind, GeneratorSpec};
use crate::io::{read_matrix, read_pairs, write_matrix};
use crate::matrix::{orient_with, InputMode, JointMatrix, Orientation, DEFAULT_EPS_NORM};
use crate::report::{format_real, ComputeReport};

/// Relative tolerance between the two kernels under `--algorithm both`.
pub const KERNEL_AGREEMENT: f64 = 1e-12;

/// Shapes timed by `bench`.
pub const BENCH_SHAPES: [(usize, usize); 4] = [(8, 12), (32, 64), (64, 512), (100, 1000)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    MatrixProbabilities,
    MatrixCounts,
    SamplePairs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmChoice {
    Naive,
    Fast,
    /// Run both kernels, require agreement, report the fast values.
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrientationChoice {
    Auto,
    AsGiven,
    /// Auto orientation, plus `k_transposed` for the opposite orientation.
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneratorArg {
    Product,
    Functional,
    Mixture,
    Random,
    RandomNonneg,
}

impl From<GeneratorArg> for GeneratorKind {
    fn from(g: GeneratorArg) -> Self {
        match g {
            GeneratorArg::Product => GeneratorKind::Product,
            GeneratorArg::Functional => GeneratorKind::Functional,
            GeneratorArg::Mixture => GeneratorKind::Mixture,
            GeneratorArg::Random => GeneratorKind::Random,
            GeneratorArg::RandomNonneg => GeneratorKind::RandomNonneg,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Compute,
    Estimate,
    Gen {
        generator: GeneratorKind,
        rows: usize,
        cols: usize,
        lambda: f64,
        out: Option<PathBuf>,
    },
    Bench {
        shapes: Vec<(usize, usize)>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: Option<PathBuf>,
    pub input_kind: InputKind,
    pub algorithm: AlgorithmChoice,
    pub orientation: OrientationChoice,
    pub eps_norm: f64,
    pub tau_indep: f64,
    pub tau_func: f64,
    pub with_baselines: bool,
    pub seed: u64,
    pub output: OutputFormat,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        let t = Thresholds::default();
        Self {
            command,
            input_path: None,
            input_kind: InputKind::MatrixProbabilities,
            algorithm: AlgorithmChoice::Fast,
            orientation: OrientationChoice::Auto,
            eps_norm: DEFAULT_EPS_NORM,
            tau_indep: t.tau_indep,
            tau_func: t.tau_func,
            with_baselines: false,
            seed: 0,
            output: OutputFormat::Json,
        }
    }

    fn thresholds(&self) -> Result<Thresholds> {
        Thresholds::new(self.tau_indep, self.tau_func)
    }

    fn input(&self) -> Result<&PathBuf> {
        self.input_path
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter("an input file is required".into()))
    }
}

/// Dependence coefficient k = mu / mu_f for discrete joint distributions.
#[derive(Debug, Parser)]
#[command(name = "depcoef", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,

    #[command(flatten)]
    pub options: CliOptions,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Compute k for a matrix file (or a pairs file with --kind sample-pairs).
    Compute { input: PathBuf },
    /// Tabulate a pairs file and compute k.
    Estimate { input: PathBuf },
    /// Write a generated matrix.
    Gen {
        generator: GeneratorArg,
        #[arg(short = 'n', long)]
        rows: usize,
        #[arg(short = 'm', long)]
        cols: usize,
        /// Functional weight for the mixture generator.
        #[arg(long, default_value_t = 0.5)]
        lambda: f64,
        /// Destination file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the naive and fast kernels on fixed shapes.
    Bench,
}

#[derive(Debug, Args)]
pub struct CliOptions {
    #[arg(long, global = true, value_enum, default_value = "matrix-probabilities")]
    pub kind: InputKind,
    #[arg(long, global = true, value_enum, default_value = "fast")]
    pub algorithm: AlgorithmChoice,
    #[arg(long, global = true, value_enum, default_value = "auto")]
    pub orientation: OrientationChoice,
    #[arg(long, global = true, default_value_t = DEFAULT_EPS_NORM)]
    pub eps_norm: f64,
    #[arg(long, global = true, default_value_t = crate::coefficient::DEFAULT_TAU_INDEP)]
    pub tau_indep: f64,
    #[arg(long, global = true, default_value_t = crate::coefficient::DEFAULT_TAU_FUNC)]
    pub tau_func: f64,
    /// Add chi-square, Cramér's V and mutual information to the report.
    #[arg(long, global = true)]
    pub baselines: bool,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub output: OutputFormat,
}

impl Cli {
    pub fn into_config(self) -> RunConfig {
        let (command, input_path) = match self.command {
            CliCommand::Compute { input } => (Command::Compute, Some(input)),
            CliCommand::Estimate { input } => (Command::Estimate, Some(input)),
            CliCommand::Gen {
                generator,
                rows,
                cols,
                lambda,
                out,
            } => (
                Command::Gen {
                    generator: generator.into(),
                    rows,
                    cols,
                    lambda,
                    out,
                },
                None,
            ),
            CliCommand::Bench => (
                Command::Bench {
                    shapes: BENCH_SHAPES.to_vec(),
                },
                None,
            ),
        };
        let o = self.options;
        RunConfig {
            command,
            input_path,
            input_kind: o.kind,
            algorithm: o.algorithm,
            orientation: o.orientation,
            eps_norm: o.eps_norm,
            tau_indep: o.tau_indep,
            tau_func: o.tau_func,
            with_baselines: o.baselines,
            seed: o.seed,
            output: o.output,
        }
    }
}

/// Executes one command, writing its report to `out`.
pub fn run<W: Write>(config: &RunConfig, mut out: W) -> Result<()> {
    match &config.command {
        Command::Compute => {
            let p = load(config, config.input_kind)?;
            emit(&analyze(&p, config)?, config, out)
        }
        Command::Estimate => {
            let p = load(config, InputKind::SamplePairs)?;
            emit(&analyze(&p, config)?, config, out)
        }
        Command::Gen {
            generator,
            rows,
            cols,
            lambda,
            out: path,
        } => {
            let spec = GeneratorSpec::new(*generator, *rows, *cols, config.seed).with_lambda(*lambda);
            let p = spec.generate()?;
            match path {
                Some(path) => {
                    let mut file = BufWriter::new(File::create(path)?);
                    write_matrix(&p, &mut file)?;
                    file.flush()?;
                }
                None => write_matrix(&p, &mut out)?,
            }
            Ok(())
        }
        Command::Bench { shapes } => {
            for (n, m) in shapes {
                let row = bench_shape(*n, *m, config.seed)?;
                match config.output {
                    OutputFormat::Json => writeln!(out, "{}", row.to_json())?,
                    OutputFormat::Plain => writeln!(out, "{row}")?,
                }
            }
            Ok(())
        }
    }
}

fn load(config: &RunConfig, kind: InputKind) -> Result<JointMatrix> {
    let path = config.input()?;
    match kind {
        InputKind::MatrixProbabilities => read_matrix(path, InputMode::Probabilities, config.eps_norm),
        InputKind::MatrixCounts => read_matrix(path, InputMode::Counts, config.eps_norm),
        InputKind::SamplePairs => tabulate(&read_pairs(path)?),
    }
}

/// Orients `p` and computes the full report requested by `config`.
pub fn analyze(p: &JointMatrix, config: &RunConfig) -> Result<ComputeReport> {
    let thresholds = config.thresholds()?;
    let policy = match config.orientation {
        OrientationChoice::AsGiven => Orientation::AsGiven,
        OrientationChoice::Auto | OrientationChoice::Both => Orientation::Auto,
    };
    let oriented = orient_with(p, policy)?;

    let dependence = match config.algorithm {
        AlgorithmChoice::Naive => coefficient(&oriented, Algorithm::Naive, &thresholds)?,
        AlgorithmChoice::Fast => coefficient(&oriented, Algorithm::Fast, &thresholds)?,
        AlgorithmChoice::Both => {
            let naive = mu_naive(&oriented);
            let fast = coefficient(&oriented, Algorithm::Fast, &thresholds)?;
            check_agreement(naive, fast.mu)?;
            fast
        }
    };

    let mut report = ComputeReport::new(dependence, &oriented);
    if config.with_baselines {
        report.baselines = Some(baselines(&oriented)?);
    }
    if config.orientation == OrientationChoice::Both {
        let flipped = oriented.flipped();
        let algorithm = match config.algorithm {
            AlgorithmChoice::Naive => Algorithm::Naive,
            _ => Algorithm::Fast,
        };
        report.k_transposed = Some(coefficient(&flipped, algorithm, &thresholds)?.k);
    }
    Ok(report)
}

pub fn check_agreement(naive: f64, fast: f64) -> Result<()> {
    if (naive - fast).abs() <= KERNEL_AGREEMENT * naive.max(1e-300) {
        Ok(())
    } else {
        Err(Error::KernelMismatch { naive, fast })
    }
}

fn emit<W: Write>(report: &ComputeReport, config: &RunConfig, mut out: W) -> Result<()> {
    match config.output {
        OutputFormat::Json => writeln!(out, "{}", report.to_json())?,
        OutputFormat::Plain => writeln!(out, "{}", report.to_plain())?,
    }
    Ok(())
}

/// Wall-clock timings for one benchmark shape.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub rows: usize,
    pub cols: usize,
    pub naive: Duration,
    pub fast: Duration,
    pub fast_parallel: Duration,
    pub mu_naive: f64,
    pub mu_fast: f64,
}

impl BenchRow {
    pub fn speedup(&self) -> f64 {
        self.naive.as_secs_f64() / self.fast.as_secs_f64().max(1e-9)
    }

    pub fn to_json(&self) -> String {
        format!(
            "{{\"n\":{},\"m\":{},\"naive_seconds\":{},\"fast_seconds\":{},\
             \"fast_parallel_seconds\":{},\"speedup\":{},\"mu_naive\":{},\"mu_fast\":{}}}",
            self.rows,
            self.cols,
            format_real(self.naive.as_secs_f64()),
            format_real(self.fast.as_secs_f64()),
            format_real(self.fast_parallel.as_secs_f64()),
            format_real(self.speedup()),
            format_real(self.mu_naive),
            format_real(self.mu_fast),
        )
    }
}

impl std::fmt::Display for BenchRow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{:>4}x{:<5} naive {:>10.6}s  fast {:>10.6}s  parallel {:>10.6}s  speedup {:>9.1}x",
            self.rows,
            self.cols,
            self.naive.as_secs_f64(),
            self.fast.as_secs_f64(),
            self.fast_parallel.as_secs_f64(),
            self.speedup(),
        )
    }
}

/// Best of `reps` runs of `f`.
pub fn time_best<T>(reps: usize, mut f: impl FnMut() -> T) -> (Duration, T) {
    let mut best = Duration::MAX;
    let mut last = None;
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        let value = std::hint::black_box(f());
        best = best.min(start.elapsed());
        last = Some(value);
    }
    (best, last.expect("at least one repetition"))
}

/// Times both kernels on a seeded random `rows x cols` probability matrix.
/// The naive kernel runs once; the fast kernels take the best of five.
pub fn bench_shape(rows: usize, cols: usize, seed: u64) -> Result<BenchRow> {
    let p = gen_random(rows, cols, seed, false)?;
    let (naive, mu_naive) = time_best(1, || mu_naive(&p));
    let (fast, mu_fast) = time_best(5, || mu_fast(&p));
    let (fast_parallel, _) = time_best(5, || mu_fast_parallel(&p));
    Ok(BenchRow {
        rows,
        cols,
        naive,
        fast,
        fast_parallel,
        mu_naive,
        mu_fast,
    })
}
