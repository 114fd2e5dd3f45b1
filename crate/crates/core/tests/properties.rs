mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sparrow_forest::dataset::{self, Dataset, Gender, Headset, Record};
use sparrow_forest::forest::{HyperParams, SplitCriterion};
use sparrow_forest::issa::{cauchy_mutate, opposition};
use sparrow_forest::ssa::SearchSpace;
use sparrow_forest::tuner::{decode, encode_params, search_space};

fn record() -> impl Strategy<Value = Record> {
    (18u32..=60, 0usize..3, 0usize..3, 500u32..=5900, 1u8..=10, 1u8..=2).prop_map(|(age, g, h, d, ms, im)| Record {
        age,
        gender: Gender::ALL[g],
        headset: Headset::ALL[h],
        duration: d as f64 / 100.0,
        motion_sickness: ms,
        immersion: im,
    })
}

proptest! {
    #[test]
    fn every_box_vector_decodes(p in 1usize..8, raw in prop::collection::vec(0.0f64..1.0, 12)) {
        let space = search_space(p);
        let v: Vec<f64> = (0..space.dimension())
            .map(|i| space.lower()[i] + raw[i] * space.width(i))
            .collect();
        let params = decode(&v, p);
        prop_assert!(params.validate(Some(p)).is_ok());
        prop_assert!((1..=20).contains(&params.max_depth));
        prop_assert!((1..=10).contains(&params.min_samples_leaf));
        prop_assert_eq!(params.n_trees, 100);
    }

    #[test]
    fn encode_decode_round_trip(
        depth in 1usize..=20,
        leaf in 1usize..=10,
        entropy in any::<bool>(),
        mask in prop::collection::vec(any::<bool>(), 1..8),
        mtry_pick in 0usize..100,
    ) {
        prop_assume!(mask.contains(&true));
        let active = mask.iter().filter(|&&m| m).count();
        let params = HyperParams {
            max_depth: depth,
            min_samples_leaf: leaf,
            split_criterion: if entropy { SplitCriterion::Entropy } else { SplitCriterion::Gini },
            mtry: 1 + mtry_pick % active,
            feature_mask: mask.clone(),
            ..HyperParams::defaults(mask.len())
        };
        prop_assert_eq!(decode(&encode_params(&params), mask.len()), params);
    }

    #[test]
    fn split_preserves_multiset(records in prop::collection::vec(record(), 4..80), frac in 0.1f64..0.9, seed in any::<u64>()) {
        let d = Dataset::new(records);
        let labels = d.labels();
        let ones = labels.iter().filter(|&&l| l == 1).count();
        prop_assume!(ones >= 2 && labels.len() - ones >= 2);
        let (train, test) = dataset::stratified_split(&d, frac, seed).unwrap();
        let key = |r: &Record| format!("{r:?}");
        let mut before: Vec<String> = d.records.iter().map(key).collect();
        let mut after: Vec<String> = train.records.iter().chain(&test.records).map(key).collect();
        before.sort();
        after.sort();
        prop_assert_eq!(before, after);
        prop_assert_eq!(train.len(), (frac * d.len() as f64).round() as usize);
        for label in [1u8, 2] {
            let total = labels.iter().filter(|&&l| l == label).count() as f64;
            let got = train.labels().iter().filter(|&&l| l == label).count() as f64;
            prop_assert!((got - frac * total).abs() < 1.0 + 1e-9);
        }
    }

    #[test]
    fn describe_matches_oracle(seed in any::<u64>()) {
        let (rows, csv) = common::random_fixture(seed);
        let d = dataset::read_csv(csv.as_bytes()).unwrap();
        prop_assert_eq!(dataset::describe_json(&d).unwrap(), common::stats_oracle_json(&rows));
    }

    #[test]
    fn opposition_and_cauchy_stay_in_box(
        lower in prop::collection::vec(-50.0f64..50.0, 1..6),
        width in 0.01f64..100.0,
        t in prop::collection::vec(0.0f64..=1.0, 6),
        scale in 0.0f64..10.0,
        seed in any::<u64>(),
    ) {
        let upper: Vec<f64> = lower.iter().map(|l| l + width).collect();
        let space = SearchSpace::new(lower.clone(), upper).unwrap();
        let x: Vec<f64> = (0..lower.len()).map(|i| lower[i] + t[i] * width).collect();
        let o = opposition(&x, &space);
        prop_assert!(space.contains(&o));
        let back = opposition(&o, &space);
        for i in 0..x.len() {
            prop_assert!((back[i] - x[i]).abs() <= 1e-9);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert!(space.contains(&cauchy_mutate(&x, scale, &mut rng, &space)));
    }
}
