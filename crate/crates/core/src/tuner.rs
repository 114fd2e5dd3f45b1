//! Forest hyperparameter and feature-subset search.
//!
//! A search vector of length `4 + p` is laid out as
//! `[max_depth, criterion, min_samples_leaf, mtry_fraction, mask_1..mask_p]`
//! inside the box `[1,20] x [0,1] x [1,10] x [0,1] x [0,1]^p`, and [`decode`]
//! turns any point of the box into valid [`HyperParams`].
//!
//! Fitness is `1 - mean k-fold CV accuracy` on the training split. The test
//! split sits behind a [`HeldOut`] guard that counts every access made while
//! the search runs.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::{self, Dataset, DatasetError, LABEL_IMMERSED, LABEL_NOT_IMMERSED};
use crate::forest::{evaluate, Evaluation, Forest, ForestError, HyperParams, SplitCriterion};
use crate::issa::{ils_optimize, IssaConfig};
use crate::matrix::FeatureMatrix;
use crate::ssa::{optimize, BoxError, Fitness, OptimizationTrace, OptimizeError, SearchSpace, SsaConfig};

pub const DEPTH_RANGE: (f64, f64) = (1.0, 20.0);
pub const MIN_LEAF_RANGE: (f64, f64) = (1.0, 10.0);
/// Leading non-mask entries of a search vector.
pub const PARAM_SLOTS: usize = 4;
pub const DEFAULT_FOLDS: usize = 5;
/// Learning rate quoted for the original experiment. Forests have no use for it.
pub const RECORDED_LEARNING_RATE: f64 = 0.001;

#[derive(Debug, Error)]
pub enum TuneError {
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    Forest(#[from] ForestError),
    #[error(transparent)]
    Optimize(#[from] OptimizeError),
    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),
    #[error("class {label} has {count} training rows, {folds}-fold CV needs at least {folds}")]
    TooFewForFolds { label: u8, count: usize, folds: usize },
    #[error("nothing to compare")]
    NoEntries,
}

impl TuneError {
    /// Errors caused by the input data or configuration rather than a failed run.
    pub fn is_schema(&self) -> bool {
        match self {
            TuneError::Dataset(e) => e.is_schema(),
            TuneError::InvalidConfig(_) | TuneError::TooFewForFolds { .. } | TuneError::NoEntries => true,
            TuneError::Forest(ForestError::ArityMismatch { .. } | ForestError::InvalidParams(_)) => true,
            TuneError::Optimize(OptimizeError::InvalidConfig(_) | OptimizeError::InvalidSpace(_)) => true,
            _ => false,
        }
    }
}

/// Independent seed for `stream`, derived from `seed` with splitmix64.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The search box for `p` features.
pub fn search_space(p: usize) -> SearchSpace {
    let mut lower = vec![DEPTH_RANGE.0, 0.0, MIN_LEAF_RANGE.0, 0.0];
    let mut upper = vec![DEPTH_RANGE.1, 1.0, MIN_LEAF_RANGE.1, 1.0];
    lower.resize(PARAM_SLOTS + p, 0.0);
    upper.resize(PARAM_SLOTS + p, 1.0);
    SearchSpace::new(lower, upper).expect("search box is valid")
}

/// [`decode_with_trees`] with the default forest size.
pub fn decode(v: &[f64], p: usize) -> HyperParams {
    decode_with_trees(v, p, HyperParams::DEFAULT_TREES)
}

/// Maps a search vector to forest parameters.
///
/// Values are clamped into the box first, so every input of the right length
/// decodes. An empty mask is repaired by switching on its largest entry.
pub fn decode_with_trees(v: &[f64], p: usize, n_trees: usize) -> HyperParams {
    assert_eq!(v.len(), PARAM_SLOTS + p, "search vector length");
    assert!(p > 0, "no features");
    let clamp = |x: f64, lo: f64, hi: f64| if x.is_nan() { lo } else { x.clamp(lo, hi) };

    let max_depth = clamp(v[0], DEPTH_RANGE.0, DEPTH_RANGE.1).round() as usize;
    let split_criterion = if clamp(v[1], 0.0, 1.0) < 0.5 {
        SplitCriterion::Gini
    } else {
        SplitCriterion::Entropy
    };
    let min_samples_leaf = clamp(v[2], MIN_LEAF_RANGE.0, MIN_LEAF_RANGE.1).round() as usize;

    let raw: Vec<f64> = v[PARAM_SLOTS..].iter().map(|&x| clamp(x, 0.0, 1.0)).collect();
    let mut feature_mask: Vec<bool> = raw.iter().map(|&x| x >= 0.5).collect();
    if !feature_mask.contains(&true) {
        // first index wins ties
        let best = (0..p).fold(0, |b, i| if raw[i] > raw[b] { i } else { b });
        feature_mask[best] = true;
    }
    let active = feature_mask.iter().filter(|&&m| m).count();
    let mtry = ((clamp(v[3], 0.0, 1.0) * active as f64).round() as usize).clamp(1, active);

    HyperParams {
        n_trees,
        max_depth,
        split_criterion,
        min_samples_leaf,
        mtry,
        feature_mask,
        bootstrap: true,
    }
}

/// A search vector that decodes back to `params` (up to `n_trees`).
///
/// Depth and leaf size must lie inside the search box.
pub fn encode_params(params: &HyperParams) -> Vec<f64> {
    let active = params.active_features().len().max(1);
    let mut v = vec![
        params.max_depth as f64,
        match params.split_criterion {
            SplitCriterion::Gini => 0.25,
            SplitCriterion::Entropy => 0.75,
        },
        params.min_samples_leaf as f64,
        params.mtry as f64 / active as f64,
    ];
    v.extend(params.feature_mask.iter().map(|&m| if m { 0.75 } else { 0.25 }));
    v
}

/// Stratified fold assignment: validation row indices for each of `k` folds.
///
/// Each class is shuffled and dealt round-robin, continuing the deal across
/// classes so fold sizes differ by at most one.
pub fn stratified_folds<R: rand::Rng>(labels: &[u8], k: usize, rng: &mut R) -> Vec<Vec<usize>> {
    assert!(k >= 2, "need at least two folds");
    let mut folds = vec![Vec::new(); k];
    let mut next = 0;
    for label in [LABEL_NOT_IMMERSED, LABEL_IMMERSED] {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == label).collect();
        members.shuffle(rng);
        for i in members {
            folds[next % k].push(i);
            next += 1;
        }
    }
    for f in &mut folds {
        f.sort_unstable();
    }
    folds
}

struct Fold {
    train_x: FeatureMatrix,
    train_y: Vec<u8>,
    valid_x: FeatureMatrix,
    valid_y: Vec<u8>,
    seed: u64,
}

impl Fold {
    /// Validation accuracy, or `None` if the fold lost a class.
    fn accuracy(&self, params: &HyperParams) -> Result<Option<f64>, ForestError> {
        let has = |l: u8| self.train_y.contains(&l);
        if self.valid_y.is_empty() || !has(LABEL_NOT_IMMERSED) || !has(LABEL_IMMERSED) {
            return Ok(None);
        }
        let forest = Forest::fit(&self.train_x, &self.train_y, params, self.seed)?;
        Ok(Some(evaluate(&forest, &self.valid_x, &self.valid_y)?.accuracy))
    }
}

/// Cross-validated error of decoded search vectors on a fixed training set.
///
/// Fold membership and per-fold forest seeds are fixed at construction, so
/// the value depends on the decoded parameters only. Results are memoized by
/// parameters; the optimizers still count every call.
pub struct CvFitness {
    n_features: usize,
    n_trees: usize,
    folds: Vec<Fold>,
    cache: Mutex<HashMap<HyperParams, f64>>,
}

impl CvFitness {
    pub fn new(x: &FeatureMatrix, y: &[u8], k: usize, seed: u64, n_trees: usize) -> Result<Self, TuneError> {
        if k < 2 {
            return Err(TuneError::InvalidConfig(format!("folds = {k}, need at least 2")));
        }
        if n_trees == 0 {
            return Err(TuneError::InvalidConfig("search forests need at least one tree".into()));
        }
        if x.n_rows() != y.len() {
            return Err(ForestError::LengthMismatch {
                rows: x.n_rows(),
                labels: y.len(),
            }
            .into());
        }
        for label in [LABEL_NOT_IMMERSED, LABEL_IMMERSED] {
            let count = y.iter().filter(|&&l| l == label).count();
            if count < k {
                return Err(TuneError::TooFewForFolds { label, count, folds: k });
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let assignment = stratified_folds(y, k, &mut rng);
        let mut in_fold = vec![0; y.len()];
        for (f, rows) in assignment.iter().enumerate() {
            for &r in rows {
                in_fold[r] = f;
            }
        }
        let folds = assignment
            .iter()
            .enumerate()
            .map(|(f, valid)| {
                let train: Vec<usize> = (0..y.len()).filter(|&r| in_fold[r] != f).collect();
                Fold {
                    train_x: x.select_rows(&train),
                    train_y: train.iter().map(|&r| y[r]).collect(),
                    valid_x: x.select_rows(valid),
                    valid_y: valid.iter().map(|&r| y[r]).collect(),
                    seed: derive_seed(seed, 1 + f as u64),
                }
            })
            .collect();
        Ok(Self {
            n_features: x.n_cols(),
            n_trees,
            folds,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn decode(&self, v: &[f64]) -> HyperParams {
        decode_with_trees(v, self.n_features, self.n_trees)
    }

    /// `1 - mean fold accuracy`; 1.0 if every fold was skipped.
    pub fn score(&self, params: &HyperParams) -> Result<f64, ForestError> {
        if let Some(&hit) = self.cache.lock().expect("cache lock").get(params) {
            return Ok(hit);
        }
        let accs = self
            .folds
            .par_iter()
            .map(|f| f.accuracy(params))
            .collect::<Result<Vec<_>, _>>()?;
        let kept: Vec<f64> = accs.into_iter().flatten().collect();
        let value = if kept.is_empty() {
            1.0
        } else {
            1.0 - kept.iter().sum::<f64>() / kept.len() as f64
        };
        self.cache.lock().expect("cache lock").insert(params.clone(), value);
        Ok(value)
    }
}

impl Fitness for CvFitness {
    fn evaluate(&self, position: &[f64]) -> Result<f64, BoxError> {
        Ok(self.score(&self.decode(position))?)
    }
}

/// Wraps data that must stay untouched during model selection.
///
/// While sealed, every [`HeldOut::get`] is counted.
#[derive(Debug)]
pub struct HeldOut<T> {
    inner: T,
    sealed: AtomicBool,
    sealed_accesses: AtomicUsize,
}

impl<T> HeldOut<T> {
    pub fn new(inner: T) -> Self {
        Self {
            inner,
            sealed: AtomicBool::new(false),
            sealed_accesses: AtomicUsize::new(0),
        }
    }

    pub fn seal(&self) {
        self.sealed.store(true, Ordering::SeqCst);
    }

    pub fn unseal(&self) {
        self.sealed.store(false, Ordering::SeqCst);
    }

    pub fn get(&self) -> &T {
        if self.sealed.load(Ordering::SeqCst) {
            self.sealed_accesses.fetch_add(1, Ordering::SeqCst);
        }
        &self.inner
    }

    pub fn sealed_accesses(&self) -> usize {
        self.sealed_accesses.load(Ordering::SeqCst)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "RF")]
    Rf,
    #[serde(rename = "SSA-RF")]
    SsaRf,
    #[serde(rename = "ISSA-RF")]
    IssaRf,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Rf, Method::SsaRf, Method::IssaRf];

    pub fn label(self) -> &'static str {
        match self {
            Method::Rf => "RF",
            Method::SsaRf => "SSA-RF",
            Method::IssaRf => "ISSA-RF",
        }
    }

    /// Lower-case name used on the command line and in file names.
    pub fn slug(self) -> &'static str {
        match self {
            Method::Rf => "rf",
            Method::SsaRf => "ssa-rf",
            Method::IssaRf => "issa-rf",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.slug().eq_ignore_ascii_case(s) || m.label().eq_ignore_ascii_case(s))
    }
}

/// Everything that shapes one experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub train_fraction: f64,
    pub folds: usize,
    /// Trees per forest inside the fitness function.
    pub search_trees: usize,
    /// Trees of the reported model.
    pub final_trees: usize,
    pub ssa: SsaConfig,
    pub issa: IssaConfig,
    /// Stretch SSA-RF to the evaluation count of ISSA-RF.
    pub equal_budget: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            train_fraction: 0.7,
            folds: DEFAULT_FOLDS,
            search_trees: HyperParams::DEFAULT_TREES,
            final_trees: HyperParams::DEFAULT_TREES,
            ssa: SsaConfig::default(),
            issa: IssaConfig::default(),
            equal_budget: true,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), TuneError> {
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return Err(TuneError::InvalidConfig(format!(
                "train_fraction {} outside (0, 1)",
                self.train_fraction
            )));
        }
        if self.folds < 2 {
            return Err(TuneError::InvalidConfig(format!("folds = {}, need at least 2", self.folds)));
        }
        if self.search_trees == 0 || self.final_trees == 0 {
            return Err(TuneError::InvalidConfig("tree counts must be positive".into()));
        }
        self.ssa.validate()?;
        self.issa.validate()?;
        Ok(())
    }

    pub fn seeds(&self) -> SeedStreams {
        SeedStreams {
            experiment: self.seed,
            split: derive_seed(self.seed, 1),
            cv: derive_seed(self.seed, 2),
            search: derive_seed(self.seed, 3),
            forest: derive_seed(self.seed, 4),
        }
    }

    /// The SSA settings actually run for SSA-RF.
    pub fn effective_ssa(&self) -> SsaConfig {
        let base = SsaConfig {
            seed: self.seeds().search,
            ..self.ssa.clone()
        };
        if self.equal_budget {
            base.with_budget(self.effective_issa().evaluation_budget())
        } else {
            base
        }
    }

    /// The ISSA settings actually run for ISSA-RF.
    pub fn effective_issa(&self) -> IssaConfig {
        self.issa.reseeded(self.seeds().search)
    }
}

/// Seeds of the independent random streams of one experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedStreams {
    pub experiment: u64,
    pub split: u64,
    pub cv: u64,
    pub search: u64,
    pub forest: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub learning_rate: f64,
    pub learning_rate_note: String,
    pub fitness: String,
    pub feature_names: Vec<String>,
    pub train_rows: usize,
    pub test_rows: usize,
}

/// Wall-clock fields, the only non-deterministic part of a report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_time_secs: f64,
    pub started_at_unix: f64,
}

/// Result of one method on one dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodReport {
    pub method: Method,
    pub train: Evaluation,
    pub test: Evaluation,
    /// Parameters of the reported model.
    pub params: HyperParams,
    /// CV fitness of the chosen parameters at `search_trees` trees.
    pub cv_fitness: f64,
    /// Fitness evaluations spent by the optimizer (0 for RF).
    pub evaluations: usize,
    pub best_vector: Option<Vec<f64>>,
    pub trace: Option<OptimizationTrace>,
    pub trace_file: Option<String>,
    pub seeds: SeedStreams,
    pub config: ExperimentConfig,
    pub metadata: ReportMetadata,
    /// Test-split reads while the search ran; must be 0.
    pub test_accesses_during_search: usize,
    pub timing: Timing,
}

impl MethodReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// A method report together with its trained model.
#[derive(Debug, Clone)]
pub struct TrainedMethod {
    pub report: MethodReport,
    pub model: Forest,
}

/// Train and test row indices of the experiment split.
pub fn experiment_split(d: &Dataset, config: &ExperimentConfig) -> Result<(Vec<usize>, Vec<usize>), TuneError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seeds().split);
    Ok(dataset::stratified_indices(&d.labels(), config.train_fraction, &mut rng)?)
}

/// Runs one method end to end: split, search (if any), final fit, scoring.
pub fn run_experiment(d: &Dataset, method: Method, config: &ExperimentConfig) -> Result<TrainedMethod, TuneError> {
    let started = Instant::now();
    let started_at_unix = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|t| t.as_secs_f64())
        .unwrap_or(0.0);
    config.validate()?;
    let seeds = config.seeds();

    let (train_idx, test_idx) = experiment_split(d, config)?;
    let (x, y) = dataset::encode(d);
    let p = x.n_cols();
    let train_x = x.select_rows(&train_idx);
    let train_y: Vec<u8> = train_idx.iter().map(|&i| y[i]).collect();
    let test = HeldOut::new((x.select_rows(&test_idx), test_idx.iter().map(|&i| y[i]).collect::<Vec<u8>>()));

    test.seal();
    let cv = CvFitness::new(&train_x, &train_y, config.folds, seeds.cv, config.search_trees)?;
    let space = search_space(p);
    let (search_params, cv_fitness, evaluations, best_vector, trace) = match method {
        Method::Rf => {
            let params = HyperParams {
                n_trees: config.search_trees,
                ..HyperParams::defaults(p)
            };
            let fit = cv.score(&params)?;
            (params, fit, 0, None, None)
        }
        Method::SsaRf | Method::IssaRf => {
            let result = if method == Method::SsaRf {
                optimize(&cv, &space, &config.effective_ssa())?
            } else {
                ils_optimize(&cv, &space, &config.effective_issa())?
            };
            let params = cv.decode(&result.best_position);
            log::info!("{}: {}", method.label(), result);
            (
                params,
                result.best_fitness,
                result.trace.evaluations,
                Some(result.best_position),
                Some(result.trace),
            )
        }
    };
    let test_accesses_during_search = test.sealed_accesses();
    test.unseal();

    let params = HyperParams {
        n_trees: config.final_trees,
        ..search_params
    };
    let model = Forest::fit(&train_x, &train_y, &params, seeds.forest)?;
    let train = evaluate(&model, &train_x, &train_y)?;
    let (test_x, test_y) = test.get();
    let test_eval = evaluate(&model, test_x, test_y)?;

    let report = MethodReport {
        method,
        train,
        test: test_eval,
        params,
        cv_fitness,
        evaluations,
        best_vector,
        trace,
        trace_file: None,
        seeds,
        config: config.clone(),
        metadata: ReportMetadata {
            learning_rate: RECORDED_LEARNING_RATE,
            learning_rate_note: "learning rate 0.001 recorded, unused: random forests have no learning rate".into(),
            fitness: format!("1 - mean {}-fold CV accuracy on the training split", config.folds),
            feature_names: dataset::feature_names().iter().map(|s| s.to_string()).collect(),
            train_rows: train_idx.len(),
            test_rows: test_idx.len(),
        },
        test_accesses_during_search,
        timing: Timing {
            wall_time_secs: started.elapsed().as_secs_f64(),
            started_at_unix,
        },
    };
    Ok(TrainedMethod { report, model })
}

/// Train/test accuracy per method: rows Train and Test, one column per method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracyGrid {
    pub methods: Vec<String>,
    pub train: Vec<f64>,
    pub test: Vec<f64>,
}

impl AccuracyGrid {
    /// Rows `Train` and `Test`, one percentage column per method.
    pub fn to_table(&self) -> String {
        let width = self.methods.iter().map(String::len).max().unwrap_or(0).max(8) + 2;
        let mut out = format!("{:<7}", "");
        for m in &self.methods {
            let _ = write!(out, "{m:>width$}");
        }
        out.push('\n');
        for (name, row) in [("Train", &self.train), ("Test", &self.test)] {
            let _ = write!(out, "{name:<7}");
            for a in row {
                let cell = format!("{:.1}%", a * 100.0);
                let _ = write!(out, "{cell:>width$}");
            }
            out.push('\n');
        }
        out
    }
}

/// Merged method reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub grid: AccuracyGrid,
    /// Whether the optimizer-driven entries spent the same budget, to within 1%
    /// or half an SSA iteration, whichever is larger.
    pub budget_matched: bool,
    pub entries: Vec<MethodReport>,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Merges method reports, ordered RF, SSA-RF, ISSA-RF. Values are copied as is.
pub fn compare(mut entries: Vec<MethodReport>) -> Result<ExperimentReport, TuneError> {
    if entries.is_empty() {
        return Err(TuneError::NoEntries);
    }
    entries.sort_by_key(|e| e.method);
    let grid = AccuracyGrid {
        methods: entries.iter().map(|e| e.method.label().to_string()).collect(),
        train: entries.iter().map(|e| e.train.accuracy).collect(),
        test: entries.iter().map(|e| e.test.accuracy).collect(),
    };
    let spent: Vec<f64> = entries
        .iter()
        .filter(|e| e.method != Method::Rf)
        .map(|e| e.evaluations as f64)
        .collect();
    // SSA-RF can only hit the budget to within half an iteration
    let granularity = entries
        .iter()
        .filter(|e| e.method == Method::SsaRf)
        .map(|e| e.config.ssa.evaluations_per_iteration() as f64 / 2.0)
        .fold(0.0, f64::max);
    let budget_matched = match (spent.iter().copied().reduce(f64::min), spent.iter().copied().reduce(f64::max)) {
        (Some(lo), Some(hi)) => hi - lo <= (0.01 * hi).max(granularity),
        _ => true,
    };
    Ok(ExperimentReport {
        grid,
        budget_matched,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synthetic;

    #[test]
    fn criterion_threshold() {
        let mut v = vec![5.0, 0.49, 2.0, 0.5, 1.0, 1.0];
        assert_eq!(decode(&v, 2).split_criterion, SplitCriterion::Gini);
        v[1] = 0.5;
        assert_eq!(decode(&v, 2).split_criterion, SplitCriterion::Entropy);
    }

    #[test]
    fn empty_mask_repair() {
        let v = [3.0, 0.0, 1.0, 1.0, 0.1, 0.2, 0.3, 0.45, 0.05];
        let p = decode(&v, 5);
        assert_eq!(p.feature_mask, vec![false, false, false, true, false]);
        assert_eq!(p.mtry, 1);
    }

    #[test]
    fn rounding_and_mtry() {
        let v = [7.4, 0.9, 2.6, 0.5, 1.0, 0.5, 0.0, 0.7, 0.2];
        let p = decode(&v, 5);
        assert_eq!(p.max_depth, 7);
        assert_eq!(p.min_samples_leaf, 3);
        assert_eq!(p.feature_mask, vec![true, true, false, true, false]);
        assert_eq!(p.mtry, 2);
        assert_eq!(p.n_trees, 100);
        p.validate(Some(5)).unwrap();
    }

    #[test]
    fn encode_round_trip() {
        let params = HyperParams {
            max_depth: 13,
            split_criterion: SplitCriterion::Entropy,
            min_samples_leaf: 4,
            mtry: 2,
            feature_mask: vec![true, false, true, true, false],
            ..HyperParams::defaults(5)
        };
        let v = encode_params(&params);
        assert!(search_space(5).contains(&v));
        assert_eq!(decode(&v, 5), params);
    }

    #[test]
    fn folds_are_stratified_partitions() {
        let y: Vec<u8> = (0..53).map(|i| if i % 4 == 0 { 2 } else { 1 }).collect();
        let folds = stratified_folds(&y, 5, &mut ChaCha8Rng::seed_from_u64(1));
        let mut all: Vec<usize> = folds.concat();
        all.sort_unstable();
        assert_eq!(all, (0..53).collect::<Vec<_>>());
        let sizes: Vec<usize> = folds.iter().map(Vec::len).collect();
        assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        for f in &folds {
            let twos = f.iter().filter(|&&i| y[i] == 2).count();
            assert!((2..=3).contains(&twos));
        }
    }

    #[test]
    fn fitness_realizable_and_deterministic() {
        let d = synthetic::generate(300, 0.0, 5);
        let (x, y) = dataset::encode(&d);
        let cv = CvFitness::new(&x, &y, 5, 9, 15).unwrap();
        let v = encode_params(&HyperParams {
            max_depth: 6,
            mtry: 2,
            feature_mask: vec![false, false, false, true, true],
            ..HyperParams::defaults(5)
        });
        let a = cv.evaluate(&v).unwrap();
        assert!(a < 0.05, "fitness {a}");
        let fresh = CvFitness::new(&x, &y, 5, 9, 15).unwrap();
        assert_eq!(fresh.evaluate(&v).unwrap().to_bits(), a.to_bits());
    }

    #[test]
    fn too_few_rows_for_folds() {
        let x = FeatureMatrix::from_rows(&[[0.0], [1.0], [2.0], [3.0]]).unwrap();
        assert!(matches!(
            CvFitness::new(&x, &[1, 1, 1, 2], 2, 0, 5),
            Err(TuneError::TooFewForFolds { label: 2, count: 1, folds: 2 })
        ));
    }

    #[test]
    fn held_out_counts_sealed_reads() {
        let h = HeldOut::new(3);
        let _ = h.get();
        h.seal();
        let _ = h.get();
        let _ = h.get();
        h.unseal();
        let _ = h.get();
        assert_eq!(h.sealed_accesses(), 2);
    }

    #[test]
    fn method_names() {
        for m in Method::ALL {
            assert_eq!(Method::parse(m.slug()), Some(m));
            assert_eq!(Method::parse(m.label()), Some(m));
        }
        assert_eq!(Method::parse("xgb"), None);
        assert_eq!(serde_json::to_string(&Method::SsaRf).unwrap(), "\"SSA-RF\"");
    }

    #[test]
    fn derived_seeds_differ() {
        let s = ExperimentConfig::default().seeds();
        let all = [s.split, s.cv, s.search, s.forest];
        for i in 0..4 {
            for j in i + 1..4 {
                assert_ne!(all[i], all[j]);
            }
        }
    }
}
