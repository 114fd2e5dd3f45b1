//! ISSA against SSA on Rastrigin at the same evaluation budget.

use sparrow_forest::bench::Objective;
use sparrow_forest::issa::{ils_optimize, IssaConfig};
use sparrow_forest::ssa::optimize;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Objective::rastrigin(10);
    let issa = IssaConfig::default().reseeded(3);
    let ssa = issa.base.with_budget(issa.evaluation_budget());

    let a = optimize(&f, &f.space, &ssa)?;
    let b = ils_optimize(&f, &f.space, &issa)?;
    println!("SSA : {a}");
    println!("ISSA: {b}");
    let mut round = usize::MAX;
    for (v, &r) in b.trace.best_so_far.iter().zip(&b.trace.rounds) {
        if r != round {
            println!("  round {r} starts at best {v:.4}");
            round = r;
        }
    }
    Ok(())
}
