//! Equal-budget comparison of SSA, ISSA and random search on all test functions.

use sparrow_forest::bench::{run_suite, Objective, SuiteOptimizer};
use sparrow_forest::issa::IssaConfig;
use sparrow_forest::ssa::SsaConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let issa = IssaConfig {
        ils_restarts: 2,
        ..IssaConfig::default()
    };
    let budget = issa.evaluation_budget();
    let optimizers = [
        SuiteOptimizer::ssa_with_budget(&SsaConfig::default(), budget),
        SuiteOptimizer::issa(issa),
        SuiteOptimizer::random_search(budget),
    ];
    let seeds: Vec<u64> = (0..10).collect();
    let results = run_suite(&optimizers, &Objective::standard_suite(10), &seeds, budget)?;
    results.write_summary_csv(std::io::stdout())?;
    Ok(())
}
