//! Bagged CART random forest for the binary labels {1, 2}.
//!
//! Each tree is grown on its own bootstrap sample. At every split node `mtry`
//! candidate features are drawn from the active set given by the feature mask,
//! and the best midpoint threshold over those candidates is chosen
//! exhaustively. Prediction is a majority vote, with ties going to label 1.
//!
//! Training is deterministic in the seed: tree `t` draws from its own ChaCha
//! stream `t`, so the result does not depend on how many threads build trees.

mod metrics;
mod tree;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::FeatureMatrix;
pub use metrics::{evaluate, ConfusionMatrix, Evaluation};
pub use tree::{best_split, impurity, impurity_from_counts, majority, SplitCandidate, TreeNode, GAIN_TOLERANCE};

#[derive(Debug, Error)]
pub enum ForestError {
    #[error("invalid hyperparameters: {0}")]
    InvalidParams(String),
    #[error("label {0} is not a class label (expected 1 or 2)")]
    InvalidLabel(u8),
    #[error("impurity of an empty label set")]
    EmptyLabels,
    #[error("no rows to train or evaluate on")]
    EmptyData,
    #[error("row has {got} features, model expects {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("{rows} feature rows but {labels} labels")]
    LengthMismatch { rows: usize, labels: usize },
}

/// Node-splitting criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SplitCriterion {
    Gini,
    Entropy,
}

fn default_true() -> bool {
    true
}

/// Forest configuration, including the feature subset the trees may use.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HyperParams {
    pub n_trees: usize,
    /// Longest allowed root-to-leaf path; 1 grows stumps.
    pub max_depth: usize,
    pub split_criterion: SplitCriterion,
    pub min_samples_leaf: usize,
    /// Candidate features sampled at each split.
    pub mtry: usize,
    pub feature_mask: Vec<bool>,
    /// Test hook: `false` trains every tree on the full training set.
    #[serde(default = "default_true")]
    pub bootstrap: bool,
}

impl HyperParams {
    pub const DEFAULT_TREES: usize = 100;
    /// Deep enough that depth never binds on data of this size.
    pub const DEFAULT_MAX_DEPTH: usize = 64;

    /// Conventional defaults: 100 trees, Gini, leaves of one, `mtry = floor(sqrt(p))`.
    pub fn defaults(n_features: usize) -> Self {
        Self {
            n_trees: Self::DEFAULT_TREES,
            max_depth: Self::DEFAULT_MAX_DEPTH,
            split_criterion: SplitCriterion::Gini,
            min_samples_leaf: 1,
            mtry: default_mtry(n_features),
            feature_mask: vec![true; n_features],
            bootstrap: true,
        }
    }

    pub fn active_features(&self) -> Vec<usize> {
        self.feature_mask
            .iter()
            .enumerate()
            .filter_map(|(i, &on)| on.then_some(i))
            .collect()
    }

    /// Checks the parameter invariants, and the mask length when `n_features` is known.
    pub fn validate(&self, n_features: Option<usize>) -> Result<(), ForestError> {
        let bad = |m: String| Err(ForestError::InvalidParams(m));
        if self.n_trees == 0 {
            return bad("n_trees must be positive".into());
        }
        if self.max_depth == 0 {
            return bad("max_depth must be positive".into());
        }
        if self.min_samples_leaf == 0 {
            return bad("min_samples_leaf must be positive".into());
        }
        let active = self.active_features().len();
        if active == 0 {
            return bad("feature_mask selects no feature".into());
        }
        if self.mtry == 0 || self.mtry > active {
            return bad(format!("mtry {} outside 1..={active}", self.mtry));
        }
        if let Some(p) = n_features {
            if self.feature_mask.len() != p {
                return bad(format!(
                    "feature_mask has {} entries, data has {p} features",
                    self.feature_mask.len()
                ));
            }
        }
        Ok(())
    }
}

/// `floor(sqrt(active))`, at least 1.
pub fn default_mtry(active_features: usize) -> usize {
    ((active_features as f64).sqrt().floor() as usize).max(1)
}

/// `n` uniform draws with replacement from `0..n`.
pub fn bootstrap_sample<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    (0..n).map(|_| rng.random_range(0..n)).collect()
}

/// Random stream for tree `index` of a forest trained with `seed`.
pub fn tree_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// A trained, immutable ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Forest {
    pub params: HyperParams,
    pub training_seed: u64,
    pub n_features: usize,
    pub trees: Vec<TreeNode>,
}

impl Forest {
    /// Trains `params.n_trees` trees on `(x, y)`.
    pub fn fit(x: &FeatureMatrix, y: &[u8], params: &HyperParams, seed: u64) -> Result<Self, ForestError> {
        params.validate(Some(x.n_cols()))?;
        if x.n_rows() != y.len() {
            return Err(ForestError::LengthMismatch {
                rows: x.n_rows(),
                labels: y.len(),
            });
        }
        if y.is_empty() {
            return Err(ForestError::EmptyData);
        }
        for &l in y {
            tree::label_index(l)?;
        }

        let active = params.active_features();
        let builder = tree::TreeBuilder {
            x,
            labels: y,
            active_features: &active,
            max_depth: params.max_depth,
            min_samples_leaf: params.min_samples_leaf,
            mtry: params.mtry,
            criterion: params.split_criterion,
        };
        let n = y.len();
        let trees = (0..params.n_trees)
            .into_par_iter()
            .map(|t| {
                let mut rng = tree_rng(seed, t);
                let mut rows = if params.bootstrap {
                    bootstrap_sample(n, &mut rng)
                } else {
                    (0..n).collect()
                };
                builder.build(&mut rows, &mut rng)
            })
            .collect();

        Ok(Self {
            params: params.clone(),
            training_seed: seed,
            n_features: x.n_cols(),
            trees,
        })
    }

    /// Majority vote over the trees; a tie goes to label 1.
    pub fn predict(&self, row: &[f64]) -> Result<u8, ForestError> {
        if row.len() != self.n_features {
            return Err(ForestError::ArityMismatch {
                expected: self.n_features,
                got: row.len(),
            });
        }
        let mut votes = [0usize; 2];
        for t in &self.trees {
            votes[(t.predict(row) - 1) as usize] += 1;
        }
        Ok(majority(votes))
    }

    pub fn predict_all(&self, x: &FeatureMatrix) -> Result<Vec<u8>, ForestError> {
        x.rows().map(|r| self.predict(r)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("forest serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn threshold_data() -> (FeatureMatrix, Vec<u8>) {
        // label = 2 iff duration > 30
        let mut rows = Vec::new();
        let mut y = Vec::new();
        for i in 0..60 {
            let duration = 5.0 + i as f64 * 0.9;
            rows.push(vec![20.0 + (i % 7) as f64, 1.0 + (i % 3) as f64, 1.0 + (i % 2) as f64, duration, 1.0 + (i % 10) as f64]);
            y.push(if duration > 30.0 { 2 } else { 1 });
        }
        (FeatureMatrix::from_rows(&rows).unwrap(), y)
    }

    #[test]
    fn realizable_concept_fits_perfectly() {
        let (x, y) = threshold_data();
        let params = HyperParams {
            n_trees: 10,
            max_depth: 3,
            ..HyperParams::defaults(5)
        };
        let f = Forest::fit(&x, &y, &params, 1).unwrap();
        assert_eq!(f.trees.len(), 10);
        let acc = evaluate(&f, &x, &y).unwrap().accuracy;
        assert_eq!(acc, 1.0);
    }

    #[test]
    fn mask_restricts_splits() {
        let (x, y) = threshold_data();
        let params = HyperParams {
            n_trees: 8,
            mtry: 1,
            feature_mask: vec![false, false, false, true, false],
            ..HyperParams::defaults(5)
        };
        let f = Forest::fit(&x, &y, &params, 9).unwrap();
        for t in &f.trees {
            assert!(t.split_features().iter().all(|&feat| feat == 3));
        }
    }

    #[test]
    fn invalid_params_rejected() {
        let (x, y) = threshold_data();
        let mut p = HyperParams::defaults(5);
        p.feature_mask = vec![false; 5];
        assert!(matches!(Forest::fit(&x, &y, &p, 0), Err(ForestError::InvalidParams(_))));
        let mut p = HyperParams::defaults(5);
        p.mtry = 6;
        assert!(matches!(Forest::fit(&x, &y, &p, 0), Err(ForestError::InvalidParams(_))));
        let p = HyperParams::defaults(4);
        assert!(matches!(Forest::fit(&x, &y, &p, 0), Err(ForestError::InvalidParams(_))));
        assert!(matches!(
            Forest::fit(&x, &[3; 60], &HyperParams::defaults(5), 0),
            Err(ForestError::InvalidLabel(3))
        ));
    }

    #[test]
    fn votes_and_ties() {
        let leaf = |label: u8| TreeNode::Leaf {
            class_counts: if label == 1 { [1, 0] } else { [0, 1] },
            label,
        };
        let forest = |labels: &[u8]| Forest {
            params: HyperParams::defaults(1),
            training_seed: 0,
            n_features: 1,
            trees: labels.iter().map(|&l| leaf(l)).collect(),
        };
        assert_eq!(forest(&[2, 2, 1]).predict(&[0.0]).unwrap(), 2);
        assert_eq!(forest(&[1, 2]).predict(&[0.0]).unwrap(), 1);
        assert_eq!(forest(&[2, 2, 2]).predict(&[0.0]).unwrap(), 2);
        assert!(matches!(
            forest(&[1]).predict(&[0.0, 1.0]),
            Err(ForestError::ArityMismatch { expected: 1, got: 2 })
        ));
    }

    #[test]
    fn bootstrap_basics() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert_eq!(bootstrap_sample(1, &mut rng), vec![0]);
        let a = bootstrap_sample(50, &mut ChaCha8Rng::seed_from_u64(8));
        let b = bootstrap_sample(50, &mut ChaCha8Rng::seed_from_u64(8));
        assert_eq!(a, b);
        assert!(a.iter().all(|&i| i < 50));
    }

    #[test]
    fn bootstrap_distinct_fraction() {
        // Expected distinct fraction is 1 - (1 - 1/n)^n ~ 1 - 1/e = 0.632.
        let n = 1000;
        let mut total = 0.0;
        for seed in 0..200 {
            let mut s = bootstrap_sample(n, &mut ChaCha8Rng::seed_from_u64(seed));
            s.sort_unstable();
            s.dedup();
            total += s.len() as f64 / n as f64;
        }
        let mean = total / 200.0;
        assert!((mean - 0.632).abs() < 0.02, "mean distinct fraction {mean}");
    }

    #[test]
    fn json_round_trip() {
        let (x, y) = threshold_data();
        let f = Forest::fit(&x, &y, &HyperParams { n_trees: 3, ..HyperParams::defaults(5) }, 2).unwrap();
        let back = Forest::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
    }
}
