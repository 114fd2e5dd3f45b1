//! Plain SSA on the 10-dimensional sphere.

use sparrow_forest::bench::Objective;
use sparrow_forest::ssa::{optimize, SsaConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sphere = Objective::sphere(10);
    let config = SsaConfig {
        population_size: 30,
        max_iterations: 200,
        seed: 1,
        ..SsaConfig::default()
    };
    let result = optimize(&sphere, &sphere.space, &config)?;
    for (i, b) in result.trace.best_so_far.iter().enumerate().step_by(25) {
        println!("iteration {i:>3}: {b:.3e}");
    }
    println!("{result}");
    Ok(())
}
