//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const GENDERS: [&str; 3] = ["Female", "Male", "Other"];
pub const HEADSETS: [&str; 3] = ["HTC Vive", "Oculus Rift", "PlayStation VR"];

/// One fixture row as raw cells: age, gender, headset, duration, motion, immersion.
#[derive(Debug, Clone, PartialEq)]
pub struct RawRow {
    pub age: u32,
    pub gender: usize,
    pub headset: usize,
    pub duration: f64,
    pub motion: u8,
    pub immersion: u8,
}

impl RawRow {
    pub fn cells(&self) -> [f64; 6] {
        [
            self.age as f64,
            (self.gender + 1) as f64,
            (self.headset + 1) as f64,
            self.duration,
            self.motion as f64,
            self.immersion as f64,
        ]
    }
}

pub fn random_rows(rng: &mut ChaCha8Rng, n: usize) -> Vec<RawRow> {
    (0..n)
        .map(|_| RawRow {
            age: rng.random_range(18..=60),
            gender: rng.random_range(0..3),
            headset: rng.random_range(0..3),
            duration: rng.random_range(500..=5900) as f64 / 100.0,
            motion: rng.random_range(1..=10),
            immersion: rng.random_range(1..=2),
        })
        .collect()
}

pub fn rows_to_csv(rows: &[RawRow]) -> String {
    let mut s = String::from("UserID,Age,Gender,VRHeadset,Duration,MotionSickness,ImmersionLevel\n");
    for (i, r) in rows.iter().enumerate() {
        writeln!(
            s,
            "{},{},{},{},{},{},{}",
            i + 1,
            r.age,
            GENDERS[r.gender],
            HEADSETS[r.headset],
            r.duration,
            r.motion,
            r.immersion
        )
        .unwrap();
    }
    s
}

pub fn random_fixture(seed: u64) -> (Vec<RawRow>, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=80);
    let rows = random_rows(&mut rng, n);
    let csv = rows_to_csv(&rows);
    (rows, csv)
}

fn round6(x: f64) -> f64 {
    format!("{x:.5e}").parse().unwrap()
}

/// Brute-force summary JSON: six significant digits, sample variance,
/// sums taken in ascending value order.
pub fn stats_oracle_json(rows: &[RawRow]) -> String {
    let names = ["Age", "Gender", "VRHeadset", "Duration", "MotionSickness", "ImmersionLevel"];
    let mut out = serde_json::Map::new();
    for (c, name) in names.iter().enumerate() {
        let mut v: Vec<f64> = rows.iter().map(|r| r.cells()[c]).collect();
        let n = v.len();
        let max = v.iter().copied().fold(f64::MIN, f64::max);
        let min = v.iter().copied().fold(f64::MAX, f64::min);
        // insertion sort, deliberately naive
        for i in 1..n {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                j -= 1;
            }
        }
        let mut sum = 0.0;
        for x in &v {
            sum += x;
        }
        let mean = sum / n as f64;
        let median = if n % 2 == 1 { v[n / 2] } else { (v[n / 2 - 1] + v[n / 2]) / 2.0 };
        let mut ss = 0.0;
        for x in &v {
            ss += (x - mean) * (x - mean);
        }
        let var = if n > 1 { ss / (n - 1) as f64 } else { 0.0 };
        let entry = serde_json::json!({
            "maximum": round6(max),
            "minimum": round6(min),
            "mean": round6(mean),
            "std_dev": round6(var.sqrt()),
            "median": round6(median),
            "variance": round6(var),
        });
        out.insert(name.to_string(), entry);
    }
    serde_json::to_string_pretty(&serde_json::Value::Object(out)).unwrap()
}

/// Reference CART: exhaustive search over every feature and every midpoint,
/// all rows, no feature sampling.
#[derive(Debug)]
pub enum OracleTree {
    Leaf(u8),
    Node {
        feature: usize,
        threshold: f64,
        left: Box<OracleTree>,
        right: Box<OracleTree>,
    },
}

impl OracleTree {
    pub fn predict(&self, x: &[f64]) -> u8 {
        match self {
            OracleTree::Leaf(l) => *l,
            OracleTree::Node {
                feature,
                threshold,
                left,
                right,
            } => {
                if x[*feature] <= *threshold {
                    left.predict(x)
                } else {
                    right.predict(x)
                }
            }
        }
    }
}

pub fn gini_closed_form(labels: &[u8]) -> f64 {
    let n = labels.len() as f64;
    let ones = labels.iter().filter(|&&l| l == 1).count() as f64;
    let p = ones / n;
    2.0 * p * (1.0 - p)
}

fn leaf_label(labels: &[u8]) -> u8 {
    let ones = labels.iter().filter(|&&l| l == 1).count();
    if labels.len() - ones > ones {
        2
    } else {
        1
    }
}

/// Grows the reference tree. `max_depth` counts edges.
pub fn oracle_cart(xs: &[Vec<f64>], ys: &[u8], max_depth: usize, depth: usize) -> OracleTree {
    let pure = ys.iter().all(|&y| y == ys[0]);
    if pure || depth >= max_depth || ys.len() < 2 {
        return OracleTree::Leaf(leaf_label(ys));
    }
    let parent = gini_closed_form(ys);
    let n = ys.len() as f64;
    let p = xs[0].len();
    let mut best: Option<(f64, usize, f64)> = None;
    for f in 0..p {
        let mut values: Vec<f64> = xs.iter().map(|x| x[f]).collect();
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        values.dedup();
        for w in values.windows(2) {
            let t = (w[0] + w[1]) / 2.0;
            let left: Vec<u8> = (0..ys.len()).filter(|&i| xs[i][f] <= t).map(|i| ys[i]).collect();
            let right: Vec<u8> = (0..ys.len()).filter(|&i| xs[i][f] > t).map(|i| ys[i]).collect();
            let gain = parent
                - left.len() as f64 / n * gini_closed_form(&left)
                - right.len() as f64 / n * gini_closed_form(&right);
            let better = match best {
                None => gain > 1e-12,
                Some((g, _, _)) => gain > g + 1e-12,
            };
            if better {
                best = Some((gain, f, t));
            }
        }
    }
    let Some((_, feature, threshold)) = best else {
        return OracleTree::Leaf(leaf_label(ys));
    };
    let (mut lx, mut ly, mut rx, mut ry) = (vec![], vec![], vec![], vec![]);
    for (x, &y) in xs.iter().zip(ys) {
        if x[feature] <= threshold {
            lx.push(x.clone());
            ly.push(y);
        } else {
            rx.push(x.clone());
            ry.push(y);
        }
    }
    OracleTree::Node {
        feature,
        threshold,
        left: Box::new(oracle_cart(&lx, &ly, max_depth, depth + 1)),
        right: Box::new(oracle_cart(&rx, &ry, max_depth, depth + 1)),
    }
}

/// A random small classification instance with ties and repeated values.
pub fn random_instance(rng: &mut ChaCha8Rng) -> (Vec<Vec<f64>>, Vec<u8>) {
    let n = rng.random_range(2..=16);
    let p = rng.random_range(1..=4);
    let xs: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..p).map(|_| rng.random_range(0..6) as f64 * 0.5).collect())
        .collect();
    let ys: Vec<u8> = (0..n).map(|_| rng.random_range(1..=2)).collect();
    (xs, ys)
}

/// Random probe points covering the value grid and the gaps between values.
pub fn probes(rng: &mut ChaCha8Rng, p: usize, k: usize) -> Vec<Vec<f64>> {
    (0..k)
        .map(|_| (0..p).map(|_| rng.random_range(-1..12) as f64 * 0.25).collect())
        .collect()
}
