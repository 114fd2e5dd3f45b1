//! RF vs SSA-RF vs ISSA-RF on the bundled synthetic VR data.
//!
//! ```text
//! cargo run --release --example tune_vr -- [seed] [population] [iterations] [restarts] [search_trees]
//! ```
//!
//! The defaults are a small search that finishes in seconds; pass larger
//! values for a full-size run.

use std::env;

use sparrow_forest::issa::IssaConfig;
use sparrow_forest::ssa::SsaConfig;
use sparrow_forest::synthetic;
use sparrow_forest::tuner::{compare, run_experiment, ExperimentConfig, Method};

fn arg<T: std::str::FromStr>(args: &[String], i: usize, default: T) -> T {
    args.get(i).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = env::args().skip(1).collect();
    let base = SsaConfig {
        population_size: arg(&args, 1, 10),
        max_iterations: arg(&args, 2, 8),
        ..SsaConfig::default()
    };
    let config = ExperimentConfig {
        seed: arg(&args, 0, 1),
        search_trees: arg(&args, 4, 20),
        ssa: base.clone(),
        issa: IssaConfig {
            base,
            ils_restarts: arg(&args, 3, 2),
            ..IssaConfig::default()
        },
        ..ExperimentConfig::default()
    };

    let data = synthetic::bundled();
    let mut reports = Vec::new();
    for method in Method::ALL {
        let run = run_experiment(&data, method, &config)?;
        let r = &run.report;
        println!(
            "{:<8} cv fitness {:.4}  evaluations {:>5}  test {:.4}  {:.1}s",
            method.label(),
            r.cv_fitness,
            r.evaluations,
            r.test.accuracy,
            r.timing.wall_time_secs
        );
        reports.push(run.report);
    }
    print!("\n{}", compare(reports)?.grid.to_table());
    Ok(())
}
