//! Descriptive statistics shared by the dataset summary and the benchmark harness.

use serde::{Deserialize, Serialize};

/// Summary statistics of one numeric column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ColumnStats {
    pub maximum: f64,
    pub minimum: f64,
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator).
    pub std_dev: f64,
    pub median: f64,
    pub variance: f64,
}

impl ColumnStats {
    /// Computes the summary of `values`. Returns `None` for an empty slice.
    ///
    /// Sums run over the sorted copy so results do not depend on input order.
    /// A single value has zero variance.
    pub fn from_values(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        let mean = sorted.iter().sum::<f64>() / n as f64;
        let variance = if n > 1 {
            sorted.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64
        } else {
            0.0
        };
        Some(Self {
            maximum: sorted[n - 1],
            minimum: sorted[0],
            mean,
            std_dev: variance.sqrt(),
            median: median_of_sorted(&sorted),
            variance,
        })
    }

    /// Copy with every statistic rounded to `digits` significant digits.
    pub fn rounded(&self, digits: usize) -> Self {
        Self {
            maximum: round_significant(self.maximum, digits),
            minimum: round_significant(self.minimum, digits),
            mean: round_significant(self.mean, digits),
            std_dev: round_significant(self.std_dev, digits),
            median: round_significant(self.median, digits),
            variance: round_significant(self.variance, digits),
        }
    }
}

/// Median with the even-length convention of averaging the two central values.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Some(median_of_sorted(&sorted))
}

fn median_of_sorted(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

/// Arithmetic mean, `None` when empty.
pub fn mean(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        None
    } else {
        Some(values.iter().sum::<f64>() / values.len() as f64)
    }
}

/// Sample standard deviation, `None` when empty; zero for a single value.
pub fn sample_std(values: &[f64]) -> Option<f64> {
    let m = mean(values)?;
    if values.len() < 2 {
        return Some(0.0);
    }
    let ss: f64 = values.iter().map(|x| (x - m) * (x - m)).sum();
    Some((ss / (values.len() - 1) as f64).sqrt())
}

/// Rounds to `digits` significant decimal digits. Non-finite values and zero pass through.
pub fn round_significant(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 || digits == 0 {
        return x;
    }
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_values() {
        let s = ColumnStats::from_values(&[2.0, 4.0]).unwrap();
        assert_eq!(s.maximum, 4.0);
        assert_eq!(s.minimum, 2.0);
        assert_eq!(s.mean, 3.0);
        assert_eq!(s.median, 3.0);
        assert_eq!(s.variance, 2.0);
        assert!((s.std_dev - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn empty_and_single() {
        assert!(ColumnStats::from_values(&[]).is_none());
        let s = ColumnStats::from_values(&[7.5]).unwrap();
        assert_eq!(s.variance, 0.0);
        assert_eq!(s.median, 7.5);
    }

    #[test]
    fn odd_median() {
        assert_eq!(median(&[5.0, 1.0, 3.0]), Some(3.0));
        assert_eq!(median(&[4.0, 1.0, 3.0, 2.0]), Some(2.5));
    }

    #[test]
    fn significant_rounding() {
        assert_eq!(round_significant(39.17812345, 6), 39.1781);
        assert_eq!(round_significant(12.0501234, 6), 12.0501);
        assert_eq!(round_significant(0.000123456789, 6), 0.000123457);
        assert_eq!(round_significant(60.0, 6), 60.0);
        assert_eq!(round_significant(0.0, 6), 0.0);
    }
}
