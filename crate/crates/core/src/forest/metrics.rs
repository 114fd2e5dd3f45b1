use serde::{Deserialize, Serialize};

use super::{Forest, ForestError};
use crate::matrix::FeatureMatrix;

/// 2x2 counts indexed `[actual - 1][predicted - 1]`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub counts: [[usize; 2]; 2],
}

impl ConfusionMatrix {
    pub fn from_predictions(actual: &[u8], predicted: &[u8]) -> Result<Self, ForestError> {
        if actual.len() != predicted.len() {
            return Err(ForestError::LengthMismatch {
                rows: predicted.len(),
                labels: actual.len(),
            });
        }
        let mut m = Self::default();
        for (&a, &p) in actual.iter().zip(predicted) {
            let a = super::tree::label_index(a)?;
            let p = super::tree::label_index(p)?;
            m.counts[a][p] += 1;
        }
        Ok(m)
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    pub fn correct(&self) -> usize {
        self.counts[0][0] + self.counts[1][1]
    }

    /// Trace over total; zero for an empty matrix.
    pub fn accuracy(&self) -> f64 {
        let total = self.total();
        if total == 0 {
            0.0
        } else {
            self.correct() as f64 / total as f64
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub confusion: ConfusionMatrix,
    pub accuracy: f64,
}

/// Scores a forest on labelled rows.
pub fn evaluate(forest: &Forest, x: &FeatureMatrix, y: &[u8]) -> Result<Evaluation, ForestError> {
    if y.is_empty() {
        return Err(ForestError::EmptyData);
    }
    if x.n_rows() != y.len() {
        return Err(ForestError::LengthMismatch {
            rows: x.n_rows(),
            labels: y.len(),
        });
    }
    let predicted = forest.predict_all(x)?;
    let confusion = ConfusionMatrix::from_predictions(y, &predicted)?;
    Ok(Evaluation {
        accuracy: confusion.accuracy(),
        confusion,
    })
}
