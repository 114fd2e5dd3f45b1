//! Command-line front end.
//!
//! Every subcommand writes its artifacts under the output directory and exits
//! with 0 on success, 1 on I/O failure, 2 on schema or configuration errors and
//! 3 when training or optimization fails.

use std::ffi::OsString;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bench::{self, BenchError, Objective, SuiteOptimizer};
use crate::dataset::{self, Column, DatasetError};
use crate::forest::{self, Forest, ForestError, HyperParams};
use crate::issa::IssaConfig;
use crate::ssa::SsaConfig;
use crate::tuner::{self, ExperimentConfig, Method, MethodReport, TuneError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Schema(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => EXIT_IO,
            CliError::Schema(_) => EXIT_SCHEMA,
            CliError::Runtime(_) => EXIT_RUNTIME,
        }
    }

    fn io(path: &Path, e: io::Error) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }
}

impl From<DatasetError> for CliError {
    fn from(e: DatasetError) -> Self {
        if e.is_schema() {
            CliError::Schema(e.to_string())
        } else {
            CliError::Io(e.to_string())
        }
    }
}

impl From<TuneError> for CliError {
    fn from(e: TuneError) -> Self {
        match e {
            TuneError::Dataset(d) => d.into(),
            e if e.is_schema() => CliError::Schema(e.to_string()),
            e => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<ForestError> for CliError {
    fn from(e: ForestError) -> Self {
        match e {
            ForestError::ArityMismatch { .. } | ForestError::InvalidParams(_) | ForestError::InvalidLabel(_) => {
                CliError::Schema(e.to_string())
            }
            e => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<BenchError> for CliError {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Io(e) => CliError::Io(e.to_string()),
            BenchError::BudgetMismatch { .. } | BenchError::Dimension { .. } => CliError::Schema(e.to_string()),
            BenchError::Optimize(e) => CliError::Runtime(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerSection {
    pub ssa: SsaConfig,
    pub issa: IssaConfig,
    pub equal_budget: bool,
}

impl Default for OptimizerSection {
    fn default() -> Self {
        Self {
            ssa: SsaConfig::default(),
            issa: IssaConfig::default(),
            equal_budget: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ForestSection {
    pub search_trees: usize,
    pub final_trees: usize,
}

impl Default for ForestSection {
    fn default() -> Self {
        Self {
            search_trees: HyperParams::DEFAULT_TREES,
            final_trees: HyperParams::DEFAULT_TREES,
        }
    }
}

/// JSON run configuration. Command-line flags override its values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub input_csv: Option<PathBuf>,
    pub output_dir: PathBuf,
    pub seed: u64,
    pub train_fraction: f64,
    pub folds: usize,
    pub method: Option<Method>,
    pub threads: Option<usize>,
    pub optimizer: OptimizerSection,
    pub forest: ForestSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            input_csv: None,
            output_dir: PathBuf::from("out"),
            seed: 0,
            train_fraction: 0.7,
            folds: tuner::DEFAULT_FOLDS,
            method: None,
            threads: None,
            optimizer: OptimizerSection::default(),
            forest: ForestSection::default(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))
    }

    pub fn experiment(&self) -> ExperimentConfig {
        ExperimentConfig {
            seed: self.seed,
            train_fraction: self.train_fraction,
            folds: self.folds,
            search_trees: self.forest.search_trees,
            final_trees: self.forest.final_trees,
            ssa: self.optimizer.ssa.clone(),
            issa: self.optimizer.issa.clone(),
            equal_budget: self.optimizer.equal_budget,
        }
    }

    fn input(&self, positional: Option<&PathBuf>) -> Result<PathBuf, CliError> {
        positional
            .or(self.input_csv.as_ref())
            .cloned()
            .ok_or_else(|| CliError::Schema("no input CSV given (argument or `input_csv` in the config)".into()))
    }
}

#[derive(Debug, Parser)]
#[command(name = "sparrow-forest", version, about = "Random-forest tuning with sparrow search")]
pub struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for the library (results do not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory receiving every artifact.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summary statistics of every column (stats.json).
    Stats(InputArg),
    /// Drop duplicates, then 3-sigma outliers (cleaned.csv, preprocess.json).
    Preprocess(InputArg),
    /// Run one method end to end (report_, trace_ and model_<method> files).
    Tune {
        input: Option<PathBuf>,
        #[arg(long, value_parser = parse_method)]
        method: Option<Method>,
    },
    /// Fit a forest on a whole CSV (model.json).
    Train {
        input: Option<PathBuf>,
        /// HyperParams JSON; defaults when omitted.
        #[arg(long)]
        params: Option<PathBuf>,
    },
    /// Score a saved model against a CSV (evaluation.json).
    Evaluate {
        model: PathBuf,
        input: Option<PathBuf>,
    },
    /// Benchmark SSA, ISSA and random search on test functions.
    Bench(BenchArgs),
    /// Merge method reports into the accuracy grid (comparison.txt, comparison.json).
    Report {
        #[arg(required = true)]
        reports: Vec<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct InputArg {
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 10)]
    pub dimension: usize,
    /// Number of seeds, counted up from --seed.
    #[arg(long, default_value_t = 20)]
    pub seeds: usize,
    /// Comma-separated subset of sphere, rastrigin, ackley, rosenbrock.
    #[arg(long, value_delimiter = ',', default_value = "sphere,rastrigin,ackley,rosenbrock")]
    pub objectives: Vec<String>,
}

fn parse_method(s: &str) -> Result<Method, String> {
    Method::parse(s).ok_or_else(|| format!("unknown method `{s}` (rf, ssa-rf, issa-rf)"))
}

/// Parses `args` (program name first) and runs the command; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_SCHEMA } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Entry point of the executable.
pub fn main() -> i32 {
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).try_init();
    run(std::env::args_os())
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let mut config = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    if let Some(t) = cli.threads {
        config.threads = Some(t);
    }
    if let Some(o) = &cli.output {
        config.output_dir = o.clone();
    }
    if let Command::Tune { method: Some(m), .. } = &cli.command {
        config.method = Some(*m);
    }

    match config.threads {
        Some(0) => Err(CliError::Schema("--threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            pool.install(|| dispatch(&cli.command, &config))
        }
        None => dispatch(&cli.command, &config),
    }
}

// Ignores write errors so a closed pipe (`| head`) does not panic.
fn say(text: &str) {
    use io::Write;
    let _ = writeln!(io::stdout().lock(), "{text}");
}

fn load(input: &Path) -> Result<dataset::Dataset, CliError> {
    dataset::load_csv(input).map_err(|e| match e {
        DatasetError::Io(e) => CliError::io(input, e),
        e => e.into(),
    })
}

fn dispatch(command: &Command, config: &RunConfig) -> Result<(), CliError> {
    match command {
        Command::Stats(a) => {
            let json = cmd_stats(&config.input(a.input.as_ref())?, &config.output_dir)?;
            say(&json);
        }
        Command::Preprocess(a) => {
            let s = cmd_preprocess(&config.input(a.input.as_ref())?, &config.output_dir)?;
            say(&format!(
                "kept {} rows ({} duplicates, {} outliers removed)",
                s.rows_kept, s.duplicates_removed, s.outliers_removed
            ));
        }
        Command::Tune { input, .. } => {
            let method = config
                .method
                .ok_or_else(|| CliError::Schema("no method given (--method or `method` in the config)".into()))?;
            let r = cmd_tune(&config.input(input.as_ref())?, method, config)?;
            say(&format!(
                "{}: train {:.4}, test {:.4}, cv fitness {:.4}, {} evaluations",
                method.label(),
                r.train.accuracy,
                r.test.accuracy,
                r.cv_fitness,
                r.evaluations
            ));
        }
        Command::Train { input, params } => {
            let params = match params {
                Some(p) => Some(read_json::<HyperParams>(p)?),
                None => None,
            };
            let e = cmd_train(&config.input(input.as_ref())?, params, config)?;
            say(&format!("training accuracy {:.4}", e.accuracy));
        }
        Command::Evaluate { model, input } => {
            let e = cmd_evaluate(model, &config.input(input.as_ref())?, &config.output_dir)?;
            say(&format!("accuracy {:.4}", e.accuracy));
        }
        Command::Bench(a) => {
            let r = cmd_bench(a, config)?;
            let mut out = Vec::new();
            r.write_summary_csv(&mut out).map_err(|e| CliError::Io(e.to_string()))?;
            say(String::from_utf8_lossy(&out).trim_end());
        }
        Command::Report { reports } => {
            let table = cmd_report(reports, &config.output_dir)?;
            say(table.trim_end());
        }
    }
    Ok(())
}

fn create_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))
}

/// Writes and returns the summary-statistics JSON.
pub fn cmd_stats(input: &Path, out: &Path) -> Result<String, CliError> {
    let data = load(input)?;
    let json = dataset::describe_json(&data)?;
    create_dir(out)?;
    write_file(&out.join("stats.json"), format!("{json}\n"))?;
    Ok(json)
}

/// Row counts of a preprocessing run, written as `preprocess.json`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreprocessSummary {
    pub rows_in: usize,
    pub duplicates_removed: usize,
    pub outliers_removed: usize,
    pub rows_kept: usize,
}

pub fn cmd_preprocess(input: &Path, out: &Path) -> Result<PreprocessSummary, CliError> {
    let data = load(input)?;
    let unique = dataset::deduplicate(&data);
    let cleaned = dataset::remove_outliers_3sigma(&unique, &Column::NUMERIC);
    let summary = PreprocessSummary {
        rows_in: data.len(),
        duplicates_removed: data.len() - unique.len(),
        outliers_removed: unique.len() - cleaned.len(),
        rows_kept: cleaned.len(),
    };
    create_dir(out)?;
    let path = out.join("cleaned.csv");
    let file = fs::File::create(&path).map_err(|e| CliError::io(&path, e))?;
    dataset::write_csv(&cleaned, io::BufWriter::new(file))?;
    write_file(
        &out.join("preprocess.json"),
        serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n",
    )?;
    Ok(summary)
}

/// Runs one method and writes `report_<m>.json`, `trace_<m>.csv` and `model_<m>.json`.
pub fn cmd_tune(input: &Path, method: Method, config: &RunConfig) -> Result<MethodReport, CliError> {
    let data = load(input)?;
    let run = tuner::run_experiment(&data, method, &config.experiment())?;
    let out = &config.output_dir;
    create_dir(out)?;

    let slug = method.slug();
    let trace_name = format!("trace_{slug}.csv");
    let mut report = run.report;
    report.trace_file = Some(trace_name.clone());

    let mut trace_csv = Vec::new();
    match &report.trace {
        Some(t) => t.write_csv_with_rounds(&mut trace_csv),
        None => crate::ssa::OptimizationTrace::default().write_csv_with_rounds(&mut trace_csv),
    }
    .map_err(|e| CliError::Io(e.to_string()))?;
    write_file(&out.join(&trace_name), trace_csv)?;
    write_file(&out.join(format!("report_{slug}.json")), report.to_json() + "\n")?;
    write_file(&out.join(format!("model_{slug}.json")), run.model.to_json() + "\n")?;
    Ok(report)
}

/// Fits a forest on every row of `input` and writes `model.json`.
pub fn cmd_train(input: &Path, params: Option<HyperParams>, config: &RunConfig) -> Result<forest::Evaluation, CliError> {
    let data = load(input)?;
    let (x, y) = dataset::encode(&data);
    let params = params.unwrap_or_else(|| HyperParams {
        n_trees: config.forest.final_trees,
        ..HyperParams::defaults(x.n_cols())
    });
    let model = Forest::fit(&x, &y, &params, config.seed)?;
    let eval = forest::evaluate(&model, &x, &y)?;
    create_dir(&config.output_dir)?;
    write_file(&config.output_dir.join("model.json"), model.to_json() + "\n")?;
    Ok(eval)
}

/// Scores a saved model and writes `evaluation.json`.
pub fn cmd_evaluate(model: &Path, input: &Path, out: &Path) -> Result<forest::Evaluation, CliError> {
    let model: Forest = read_json(model)?;
    let data = load(input)?;
    let (x, y) = dataset::encode(&data);
    if x.n_cols() != model.n_features {
        return Err(ForestError::ArityMismatch {
            expected: model.n_features,
            got: x.n_cols(),
        }
        .into());
    }
    let eval = forest::evaluate(&model, &x, &y)?;
    create_dir(out)?;
    write_file(
        &out.join("evaluation.json"),
        serde_json::to_string_pretty(&eval).expect("evaluation serializes") + "\n",
    )?;
    Ok(eval)
}

/// Equal-budget suite; the budget is the ISSA evaluation count of the config.
///
/// Writes `bench_results.csv`, `bench_summary.csv` and per-run traces under `traces/`.
pub fn cmd_bench(args: &BenchArgs, config: &RunConfig) -> Result<bench::SuiteResults, CliError> {
    if args.dimension == 0 || args.seeds == 0 {
        return Err(CliError::Schema("dimension and seeds must be positive".into()));
    }
    let objectives = args
        .objectives
        .iter()
        .map(|n| {
            Objective::by_name(n.trim(), args.dimension)
                .ok_or_else(|| CliError::Schema(format!("unknown objective `{n}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let issa = config.optimizer.issa.clone();
    issa.validate().map_err(|e| CliError::Schema(e.to_string()))?;
    config.optimizer.ssa.validate().map_err(|e| CliError::Schema(e.to_string()))?;
    let budget = issa.evaluation_budget();
    let optimizers = [
        SuiteOptimizer::ssa_with_budget(&config.optimizer.ssa, budget),
        SuiteOptimizer::issa(issa),
        SuiteOptimizer::random_search(budget),
    ];
    let seeds: Vec<u64> = (0..args.seeds as u64).map(|i| config.seed + i).collect();
    let results = bench::run_suite(&optimizers, &objectives, &seeds, budget)?;

    let out = &config.output_dir;
    create_dir(out)?;
    let io_err = |e: io::Error| CliError::Io(e.to_string());
    let mut buf = Vec::new();
    results.write_csv(&mut buf).map_err(io_err)?;
    write_file(&out.join("bench_results.csv"), buf)?;
    let mut buf = Vec::new();
    results.write_summary_csv(&mut buf).map_err(io_err)?;
    write_file(&out.join("bench_summary.csv"), buf)?;
    results.write_traces(&out.join("traces")).map_err(io_err)?;
    Ok(results)
}

/// Merges method reports into `comparison.json` and `comparison.txt`; returns the table.
pub fn cmd_report(reports: &[PathBuf], out: &Path) -> Result<String, CliError> {
    let entries = reports
        .iter()
        .map(|p| read_json::<MethodReport>(p))
        .collect::<Result<Vec<_>, _>>()?;
    let merged = tuner::compare(entries)?;
    let table = merged.grid.to_table();
    create_dir(out)?;
    write_file(&out.join("comparison.json"), merged.to_json() + "\n")?;
    write_file(&out.join("comparison.txt"), &table)?;
    Ok(table)
}
