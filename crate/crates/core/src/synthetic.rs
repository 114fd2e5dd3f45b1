//! Seeded synthetic data with the VR-experience schema.
//!
//! The target is a noisy XOR of two thresholds: a row is labelled immersed (2)
//! iff exactly one of `duration > 30` and `motion_sickness > 7` holds. A fixed
//! number of labels is then flipped. Neither threshold alone predicts the label,
//! so a forest only does well if it combines both features.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::{self, Dataset, DatasetError, Gender, Headset, Record, LABEL_IMMERSED, LABEL_NOT_IMMERSED};

/// Seed of the bundled file.
pub const BUNDLED_SEED: u64 = 20_240_601;
pub const BUNDLED_ROWS: usize = 2000;
pub const BUNDLED_NOISE: f64 = 0.1;

const BUNDLED_CSV: &str = include_str!("../data/synthetic_vr.csv");

/// Noise-free label.
pub fn xor_label(duration: f64, motion_sickness: u8) -> u8 {
    if (duration > 30.0) ^ (motion_sickness > 7) {
        LABEL_IMMERSED
    } else {
        LABEL_NOT_IMMERSED
    }
}

/// `rows` records with exactly `round(noise * rows)` labels flipped.
pub fn generate(rows: usize, noise: f64, seed: u64) -> Dataset {
    assert!((0.0..=1.0).contains(&noise), "noise {noise} outside [0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records: Vec<Record> = (0..rows)
        .map(|_| {
            let age = rng.random_range(18..=60);
            let gender = Gender::ALL[rng.random_range(0..3)];
            let headset = Headset::ALL[rng.random_range(0..3)];
            // hundredths of a minute keep the CSV text exact
            let duration = f64::from(rng.random_range(500u32..=5900)) / 100.0;
            let motion_sickness = rng.random_range(1..=10);
            Record {
                age,
                gender,
                headset,
                duration,
                motion_sickness,
                immersion: xor_label(duration, motion_sickness),
            }
        })
        .collect();
    let flips = (noise * rows as f64).round() as usize;
    for i in index::sample(&mut rng, rows, flips) {
        let r = &mut records[i];
        r.immersion = if r.immersion == LABEL_IMMERSED {
            LABEL_NOT_IMMERSED
        } else {
            LABEL_IMMERSED
        };
    }
    Dataset::new(records)
}

/// The 2000-row, 10%-noise file shipped with the crate.
pub fn bundled() -> Dataset {
    dataset::read_csv(BUNDLED_CSV.as_bytes()).expect("bundled file parses")
}

pub fn bundled_csv() -> &'static str {
    BUNDLED_CSV
}

/// Writes a generated dataset as CSV text.
pub fn to_csv(d: &Dataset) -> Result<String, DatasetError> {
    let mut buf = Vec::new();
    dataset::write_csv(d, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv is utf-8"))
}
