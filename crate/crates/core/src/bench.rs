//! Standard continuous test objectives and an equal-budget comparison harness.
//!
//! A uniform random-search baseline runs alongside the metaheuristics so the
//! claim that they search at all can fail.

use std::fs;
use std::io;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::stats::median;
use crate::issa::{ils_optimize, IssaConfig};
use crate::ssa::{
    optimize, BoxError, Evaluator, Fitness, OptimizationResult, OptimizationTrace, OptimizeError, SearchSpace,
    SsaConfig,
};

/// Relative evaluation-count tolerance between optimizers in one suite.
pub const BUDGET_TOLERANCE: f64 = 0.01;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("objective `{objective}` expects dimension {expected}, got {got}")]
    Dimension {
        objective: String,
        expected: usize,
        got: usize,
    },
    #[error("optimizer `{optimizer}` spends {evaluations} evaluations, suite budget is {budget}")]
    BudgetMismatch {
        optimizer: String,
        evaluations: usize,
        budget: usize,
    },
    #[error(transparent)]
    Optimize(#[from] OptimizeError),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64
        + x.iter()
            .map(|v| v * v - 10.0 * (2.0 * std::f64::consts::PI * v).cos())
            .sum::<f64>()
}

/// Ackley with a = 20, b = 0.2, c = 2π.
pub fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (a, b, c) = (20.0, 0.2, 2.0 * std::f64::consts::PI);
    let sq = x.iter().map(|v| v * v).sum::<f64>() / n;
    let cs = x.iter().map(|v| (c * v).cos()).sum::<f64>() / n;
    -a * (-b * sq.sqrt()).exp() - cs.exp() + a + std::f64::consts::E
}

pub fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
        .sum()
}

/// A named test function on its conventional box.
#[derive(Debug, Clone)]
pub struct Objective {
    pub name: &'static str,
    pub space: SearchSpace,
    pub known_minimum: f64,
    pub known_argmin: Vec<f64>,
    function: fn(&[f64]) -> f64,
}

impl Objective {
    fn build(name: &'static str, d: usize, lo: f64, hi: f64, argmin: f64, function: fn(&[f64]) -> f64) -> Self {
        Self {
            name,
            space: SearchSpace::cube(d, lo, hi).expect("non-empty box"),
            known_minimum: 0.0,
            known_argmin: vec![argmin; d],
            function,
        }
    }

    pub fn sphere(d: usize) -> Self {
        Self::build("sphere", d, -5.12, 5.12, 0.0, sphere)
    }

    pub fn rastrigin(d: usize) -> Self {
        Self::build("rastrigin", d, -5.12, 5.12, 0.0, rastrigin)
    }

    pub fn ackley(d: usize) -> Self {
        Self::build("ackley", d, -32.768, 32.768, 0.0, ackley)
    }

    pub fn rosenbrock(d: usize) -> Self {
        Self::build("rosenbrock", d, -5.0, 10.0, 1.0, rosenbrock)
    }

    /// All four objectives at dimension `d`.
    pub fn standard_suite(d: usize) -> Vec<Self> {
        vec![Self::sphere(d), Self::rastrigin(d), Self::ackley(d), Self::rosenbrock(d)]
    }

    pub fn by_name(name: &str, d: usize) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "sphere" => Some(Self::sphere(d)),
            "rastrigin" => Some(Self::rastrigin(d)),
            "ackley" => Some(Self::ackley(d)),
            "rosenbrock" => Some(Self::rosenbrock(d)),
            _ => None,
        }
    }

    pub fn dimension(&self) -> usize {
        self.space.dimension()
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64, BenchError> {
        if x.len() != self.dimension() {
            return Err(BenchError::Dimension {
                objective: self.name.to_string(),
                expected: self.dimension(),
                got: x.len(),
            });
        }
        Ok((self.function)(x))
    }
}

impl Fitness for Objective {
    fn evaluate(&self, position: &[f64]) -> Result<f64, BoxError> {
        Objective::evaluate(self, position).map_err(Into::into)
    }
}

/// Uniform random sampling with the same bookkeeping as the optimizers.
pub fn random_search(
    fitness: &dyn Fitness,
    space: &SearchSpace,
    evaluations: usize,
    seed: u64,
) -> Result<OptimizationResult, OptimizeError> {
    if evaluations == 0 {
        return Err(OptimizeError::InvalidConfig("random search needs at least one evaluation".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut eval = Evaluator::new(fitness);
    let mut trace = OptimizationTrace::default();
    let mut remaining = evaluations;
    while remaining > 0 {
        let k = remaining.min(64);
        let batch: Vec<Vec<f64>> = (0..k).map(|_| space.sample_uniform(&mut rng)).collect();
        let refs: Vec<&[f64]> = batch.iter().map(Vec::as_slice).collect();
        eval.evaluate_batch(&refs)?;
        trace.push(eval.best_fitness(), 0);
        remaining -= k;
    }
    Ok(crate::ssa::finish(trace, &eval))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum OptimizerKind {
    Ssa(SsaConfig),
    Issa(IssaConfig),
    RandomSearch { evaluations: usize },
}

/// A named optimizer entry of a suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteOptimizer {
    pub name: String,
    pub kind: OptimizerKind,
}

impl SuiteOptimizer {
    /// SSA whose iteration count is fitted to `budget`.
    pub fn ssa_with_budget(base: &SsaConfig, budget: usize) -> Self {
        Self {
            name: "SSA".into(),
            kind: OptimizerKind::Ssa(base.with_budget(budget)),
        }
    }

    pub fn issa(config: IssaConfig) -> Self {
        Self {
            name: "ISSA".into(),
            kind: OptimizerKind::Issa(config),
        }
    }

    pub fn random_search(budget: usize) -> Self {
        Self {
            name: "random".into(),
            kind: OptimizerKind::RandomSearch { evaluations: budget },
        }
    }

    pub fn evaluations(&self) -> usize {
        match &self.kind {
            OptimizerKind::Ssa(c) => c.evaluation_budget(),
            OptimizerKind::Issa(c) => c.evaluation_budget(),
            OptimizerKind::RandomSearch { evaluations } => *evaluations,
        }
    }

    /// One seeded run. ISSA derives its chaos seed from `seed`.
    pub fn run(&self, fitness: &dyn Fitness, space: &SearchSpace, seed: u64) -> Result<OptimizationResult, OptimizeError> {
        match &self.kind {
            OptimizerKind::Ssa(c) => optimize(fitness, space, &SsaConfig { seed, ..c.clone() }),
            OptimizerKind::Issa(c) => ils_optimize(fitness, space, &c.reseeded(seed)),
            OptimizerKind::RandomSearch { evaluations } => random_search(fitness, space, *evaluations, seed),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub optimizer: String,
    pub objective: String,
    pub dimension: usize,
    pub seed: u64,
    pub final_best: f64,
    pub evaluations: usize,
    #[serde(skip)]
    pub trace: OptimizationTrace,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub optimizer: String,
    pub objective: String,
    pub dimension: usize,
    pub runs: usize,
    pub median: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SuiteResults {
    pub runs: Vec<RunRecord>,
    pub summary: Vec<SummaryRow>,
}

impl SuiteResults {
    pub fn median(&self, optimizer: &str, objective: &str) -> Option<f64> {
        self.summary
            .iter()
            .find(|r| r.optimizer == optimizer && r.objective == objective)
            .map(|r| r.median)
    }

    /// `optimizer,objective,dimension,seed,final_best,evaluations`
    pub fn write_csv<W: io::Write>(&self, w: W) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(w);
        w.write_record(["optimizer", "objective", "dimension", "seed", "final_best", "evaluations"])?;
        for r in &self.runs {
            w.write_record([
                r.optimizer.clone(),
                r.objective.clone(),
                r.dimension.to_string(),
                r.seed.to_string(),
                format!("{:e}", r.final_best),
                r.evaluations.to_string(),
            ])?;
        }
        w.flush()
    }

    pub fn write_summary_csv<W: io::Write>(&self, w: W) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(w);
        w.write_record(["optimizer", "objective", "dimension", "runs", "median", "min", "max"])?;
        for r in &self.summary {
            w.write_record([
                r.optimizer.clone(),
                r.objective.clone(),
                r.dimension.to_string(),
                r.runs.to_string(),
                format!("{:e}", r.median),
                format!("{:e}", r.min),
                format!("{:e}", r.max),
            ])?;
        }
        w.flush()
    }

    /// One `trace_<optimizer>_<objective>_<seed>.csv` per run under `dir`.
    pub fn write_traces(&self, dir: &Path) -> io::Result<()> {
        fs::create_dir_all(dir)?;
        for r in &self.runs {
            let name = format!("trace_{}_{}_{}.csv", r.optimizer, r.objective, r.seed);
            r.trace.write_csv_with_rounds(fs::File::create(dir.join(name))?)?;
        }
        Ok(())
    }
}

/// Runs every (optimizer, objective, seed) cell.
///
/// Every optimizer must spend the suite `budget` to within [`BUDGET_TOLERANCE`].
pub fn run_suite(
    optimizers: &[SuiteOptimizer],
    objectives: &[Objective],
    seeds: &[u64],
    budget: usize,
) -> Result<SuiteResults, BenchError> {
    for o in optimizers {
        let e = o.evaluations();
        if (e as f64 - budget as f64).abs() > BUDGET_TOLERANCE * budget as f64 {
            return Err(BenchError::BudgetMismatch {
                optimizer: o.name.clone(),
                evaluations: e,
                budget,
            });
        }
    }

    let cells: Vec<(&SuiteOptimizer, &Objective, u64)> = optimizers
        .iter()
        .flat_map(|o| objectives.iter().flat_map(move |f| seeds.iter().map(move |&s| (o, f, s))))
        .collect();
    let runs = cells
        .par_iter()
        .map(|&(o, f, seed)| {
            let r = o.run(f, &f.space, seed)?;
            Ok(RunRecord {
                optimizer: o.name.clone(),
                objective: f.name.to_string(),
                dimension: f.dimension(),
                seed,
                final_best: r.best_fitness,
                evaluations: r.trace.evaluations,
                trace: r.trace,
            })
        })
        .collect::<Result<Vec<_>, BenchError>>()?;

    let mut summary = Vec::new();
    for o in optimizers {
        for f in objectives {
            let finals: Vec<f64> = runs
                .iter()
                .filter(|r| r.optimizer == o.name && r.objective == f.name)
                .map(|r| r.final_best)
                .collect();
            if finals.is_empty() {
                continue;
            }
            summary.push(SummaryRow {
                optimizer: o.name.clone(),
                objective: f.name.to_string(),
                dimension: f.dimension(),
                runs: finals.len(),
                median: median(&finals).expect("non-empty"),
                min: finals.iter().copied().fold(f64::INFINITY, f64::min),
                max: finals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            });
        }
    }
    Ok(SuiteResults { runs, summary })
}
