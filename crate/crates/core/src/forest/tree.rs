//! CART induction for binary labels {1, 2}.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{ForestError, SplitCriterion};
use crate::matrix::FeatureMatrix;

/// Two gains closer than this are treated as equal; the earlier candidate wins.
pub const GAIN_TOLERANCE: f64 = 1e-12;

/// A node of a trained tree. Leaf counts are per label `[count(1), count(2)]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TreeNode {
    Leaf {
        class_counts: [usize; 2],
        label: u8,
    },
    Split {
        feature: usize,
        threshold: f64,
        left: Box<TreeNode>,
        right: Box<TreeNode>,
    },
}

impl TreeNode {
    /// Rows with `row[feature] <= threshold` go left.
    pub fn predict(&self, row: &[f64]) -> u8 {
        let mut node = self;
        loop {
            match node {
                TreeNode::Leaf { label, .. } => return *label,
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    node = if row[*feature] <= *threshold { left } else { right };
                }
            }
        }
    }

    /// Length of the longest root-to-leaf path (a lone leaf has depth 0).
    pub fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Split { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    /// Visits every leaf's class counts.
    pub fn leaves(&self) -> Vec<[usize; 2]> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<[usize; 2]>) {
        match self {
            TreeNode::Leaf { class_counts, .. } => out.push(*class_counts),
            TreeNode::Split { left, right, .. } => {
                left.collect_leaves(out);
                right.collect_leaves(out);
            }
        }
    }

    /// Every feature index used by a split node.
    pub fn split_features(&self) -> Vec<usize> {
        match self {
            TreeNode::Leaf { .. } => Vec::new(),
            TreeNode::Split {
                feature,
                left,
                right,
                ..
            } => {
                let mut v = vec![*feature];
                v.extend(left.split_features());
                v.extend(right.split_features());
                v
            }
        }
    }
}

/// Majority label of a count pair; ties go to label 1.
pub fn majority(counts: [usize; 2]) -> u8 {
    if counts[1] > counts[0] {
        2
    } else {
        1
    }
}

pub(crate) fn label_index(label: u8) -> Result<usize, ForestError> {
    match label {
        1 => Ok(0),
        2 => Ok(1),
        other => Err(ForestError::InvalidLabel(other)),
    }
}

/// Impurity of a labelled node given its class counts. Zero for an empty node.
#[inline]
pub fn impurity_from_counts(counts: [usize; 2], criterion: SplitCriterion) -> f64 {
    let n = (counts[0] + counts[1]) as f64;
    if n == 0.0 {
        return 0.0;
    }
    let p0 = counts[0] as f64 / n;
    let p1 = counts[1] as f64 / n;
    match criterion {
        SplitCriterion::Gini => 1.0 - (p0 * p0 + p1 * p1),
        SplitCriterion::Entropy => {
            let h = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
            h(p0) + h(p1)
        }
    }
}

/// Impurity of a label multiset.
pub fn impurity(labels: &[u8], criterion: SplitCriterion) -> Result<f64, ForestError> {
    if labels.is_empty() {
        return Err(ForestError::EmptyLabels);
    }
    let mut counts = [0usize; 2];
    for &l in labels {
        counts[label_index(l)?] += 1;
    }
    Ok(impurity_from_counts(counts, criterion))
}

/// A chosen split: rows with `x[feature] <= threshold` go left.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitCandidate {
    pub feature: usize,
    pub threshold: f64,
    pub gain: f64,
}

/// Exhaustive best split over midpoints of consecutive distinct values.
///
/// `rows` indexes into `x`/`labels` and may repeat (bootstrap multiplicity).
/// Both children must keep at least `min_samples_leaf` rows. Returns `None`
/// when no split has positive gain. Ties go to the lower feature index, then
/// the lower threshold.
pub fn best_split(
    x: &FeatureMatrix,
    labels: &[u8],
    rows: &[usize],
    candidate_features: &[usize],
    criterion: SplitCriterion,
    min_samples_leaf: usize,
) -> Option<SplitCandidate> {
    let mut features = candidate_features.to_vec();
    features.sort_unstable();
    features.dedup();
    let mut scratch = Vec::with_capacity(rows.len());
    best_split_with(x, labels, rows, &features, criterion, min_samples_leaf, &mut scratch)
}

fn best_split_with(
    x: &FeatureMatrix,
    labels: &[u8],
    rows: &[usize],
    sorted_features: &[usize],
    criterion: SplitCriterion,
    min_samples_leaf: usize,
    scratch: &mut Vec<(f64, u8)>,
) -> Option<SplitCandidate> {
    let n = rows.len();
    let min_leaf = min_samples_leaf.max(1);
    if n < 2 * min_leaf {
        return None;
    }
    let mut total = [0usize; 2];
    for &r in rows {
        total[(labels[r] - 1) as usize] += 1;
    }
    let parent = impurity_from_counts(total, criterion);
    if parent == 0.0 {
        return None;
    }
    let nf = n as f64;

    let mut best: Option<SplitCandidate> = None;
    for &f in sorted_features {
        scratch.clear();
        scratch.extend(rows.iter().map(|&r| (x.get(r, f), labels[r] - 1)));
        scratch.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));

        let mut left = [0usize; 2];
        for i in 0..n - 1 {
            left[scratch[i].1 as usize] += 1;
            let (lo, hi) = (scratch[i].0, scratch[i + 1].0);
            if lo == hi {
                continue;
            }
            let n_left = i + 1;
            let n_right = n - n_left;
            if n_left < min_leaf {
                continue;
            }
            if n_right < min_leaf {
                break;
            }
            let right = [total[0] - left[0], total[1] - left[1]];
            let gain = parent
                - (n_left as f64 / nf) * impurity_from_counts(left, criterion)
                - (n_right as f64 / nf) * impurity_from_counts(right, criterion);
            let improves = match best {
                None => gain > GAIN_TOLERANCE,
                Some(b) => gain > b.gain + GAIN_TOLERANCE,
            };
            if improves {
                best = Some(SplitCandidate {
                    feature: f,
                    threshold: midpoint(lo, hi),
                    gain,
                });
            }
        }
    }
    best
}

/// Midpoint that always separates `lo` from `hi` under `<=`.
fn midpoint(lo: f64, hi: f64) -> f64 {
    let m = (lo + hi) / 2.0;
    if m >= hi {
        lo
    } else {
        m
    }
}

pub(crate) struct TreeBuilder<'a> {
    pub x: &'a FeatureMatrix,
    pub labels: &'a [u8],
    pub active_features: &'a [usize],
    pub max_depth: usize,
    pub min_samples_leaf: usize,
    pub mtry: usize,
    pub criterion: SplitCriterion,
}

impl TreeBuilder<'_> {
    pub fn build<R: Rng>(&self, rows: &mut [usize], rng: &mut R) -> TreeNode {
        let mut scratch = Vec::with_capacity(rows.len());
        let mut candidates = Vec::with_capacity(self.active_features.len());
        self.grow(rows, 0, rng, &mut scratch, &mut candidates)
    }

    fn grow<R: Rng>(
        &self,
        rows: &mut [usize],
        depth: usize,
        rng: &mut R,
        scratch: &mut Vec<(f64, u8)>,
        candidates: &mut Vec<usize>,
    ) -> TreeNode {
        let mut counts = [0usize; 2];
        for &r in rows.iter() {
            counts[(self.labels[r] - 1) as usize] += 1;
        }
        let leaf = TreeNode::Leaf {
            class_counts: counts,
            label: majority(counts),
        };
        if depth >= self.max_depth
            || counts[0] == 0
            || counts[1] == 0
            || rows.len() < 2 * self.min_samples_leaf
        {
            return leaf;
        }

        self.sample_candidates(rng, candidates);
        let Some(split) = best_split_with(
            self.x,
            self.labels,
            rows,
            candidates,
            self.criterion,
            self.min_samples_leaf,
            scratch,
        ) else {
            return leaf;
        };

        let mid = partition(rows, |&r| self.x.get(r, split.feature) <= split.threshold);
        let (l, r) = rows.split_at_mut(mid);
        let left = self.grow(l, depth + 1, rng, scratch, candidates);
        let right = self.grow(r, depth + 1, rng, scratch, candidates);
        TreeNode::Split {
            feature: split.feature,
            threshold: split.threshold,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// `mtry` distinct active features, sorted ascending.
    fn sample_candidates<R: Rng>(&self, rng: &mut R, out: &mut Vec<usize>) {
        out.clear();
        let k = self.active_features.len();
        if self.mtry >= k {
            out.extend_from_slice(self.active_features);
        } else {
            out.extend(
                rand::seq::index::sample(rng, k, self.mtry)
                    .into_iter()
                    .map(|i| self.active_features[i]),
            );
            out.sort_unstable();
        }
    }
}

/// In-place partition; returns the number of elements satisfying `pred`.
fn partition<T>(v: &mut [T], pred: impl Fn(&T) -> bool) -> usize {
    let mut mid = 0;
    for i in 0..v.len() {
        if pred(&v[i]) {
            v.swap(i, mid);
            mid += 1;
        }
    }
    mid
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gini_values() {
        assert_eq!(impurity(&[1, 1, 1, 1], SplitCriterion::Gini).unwrap(), 0.0);
        assert_eq!(impurity(&[1, 1, 2, 2], SplitCriterion::Gini).unwrap(), 0.5);
        let expected = 1.0 - (0.75f64 * 0.75 + 0.25 * 0.25);
        assert!((impurity(&[1, 1, 1, 2], SplitCriterion::Gini).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 0.375).abs() < 1e-15);
    }

    #[test]
    fn entropy_values() {
        assert_eq!(impurity(&[2, 2], SplitCriterion::Entropy).unwrap(), 0.0);
        assert_eq!(impurity(&[1, 2], SplitCriterion::Entropy).unwrap(), 1.0);
        let h = impurity(&[1, 1, 1, 2], SplitCriterion::Entropy).unwrap();
        assert!((h - 0.811_278_124_459_132_8).abs() < 1e-12);
    }

    #[test]
    fn impurity_errors() {
        assert!(matches!(impurity(&[], SplitCriterion::Gini), Err(ForestError::EmptyLabels)));
        assert!(matches!(impurity(&[3], SplitCriterion::Gini), Err(ForestError::InvalidLabel(3))));
    }

    fn column(values: &[f64]) -> FeatureMatrix {
        FeatureMatrix::from_rows(&values.iter().map(|v| vec![*v]).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn split_at_gap() {
        let x = column(&[1.0, 2.0, 10.0, 11.0]);
        let s = best_split(&x, &[1, 1, 2, 2], &[0, 1, 2, 3], &[0], SplitCriterion::Gini, 1).unwrap();
        assert_eq!(s.feature, 0);
        assert_eq!(s.threshold, 6.0);
        assert_eq!(s.gain, 0.5);
    }

    #[test]
    fn pure_node_has_no_split() {
        let x = column(&[1.0, 2.0, 3.0]);
        assert!(best_split(&x, &[2, 2, 2], &[0, 1, 2], &[0], SplitCriterion::Gini, 1).is_none());
    }

    #[test]
    fn tie_goes_to_lower_feature() {
        let x = FeatureMatrix::from_rows(&[[1.0, 1.0], [2.0, 2.0], [3.0, 3.0], [4.0, 4.0]]).unwrap();
        let s = best_split(&x, &[1, 1, 2, 2], &[0, 1, 2, 3], &[1, 0], SplitCriterion::Gini, 1).unwrap();
        assert_eq!(s.feature, 0);
    }

    #[test]
    fn tie_goes_to_lower_threshold() {
        // Splitting before or after the middle row gives the same gain.
        let x = column(&[1.0, 2.0, 3.0]);
        let s = best_split(&x, &[1, 2, 1], &[0, 1, 2], &[0], SplitCriterion::Gini, 1);
        let s = s.expect("split");
        assert_eq!(s.threshold, 1.5);
    }

    #[test]
    fn min_leaf_respected() {
        let x = column(&[1.0, 2.0, 10.0, 11.0]);
        let s = best_split(&x, &[1, 2, 2, 2], &[0, 1, 2, 3], &[0], SplitCriterion::Gini, 2).unwrap();
        assert_eq!(s.threshold, 6.0);
        assert!(best_split(&x, &[1, 1, 2, 2], &[0, 1, 2, 3], &[0], SplitCriterion::Gini, 3).is_none());
    }

    #[test]
    fn midpoint_of_adjacent_floats() {
        let lo = 1.0f64;
        let hi = f64::from_bits(lo.to_bits() + 1);
        let m = midpoint(lo, hi);
        assert!(lo <= m && m < hi);
    }
}
