//! Trains a default forest on a 7:3 stratified split and prints the confusion matrices.

use sparrow_forest::dataset;
use sparrow_forest::forest::{evaluate, Forest, HyperParams};
use sparrow_forest::synthetic;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = synthetic::bundled();
    let (train, test) = dataset::stratified_split(&data, 0.7, 42)?;
    let (x, y) = dataset::encode(&train);
    let (tx, ty) = dataset::encode(&test);

    let params = HyperParams {
        max_depth: 8,
        ..HyperParams::defaults(x.n_cols())
    };
    let forest = Forest::fit(&x, &y, &params, 7)?;
    for (name, e) in [("train", evaluate(&forest, &x, &y)?), ("test", evaluate(&forest, &tx, &ty)?)] {
        println!("{name}: accuracy {:.4}", e.accuracy);
        println!("  actual 1: {:?}", e.confusion.counts[0]);
        println!("  actual 2: {:?}", e.confusion.counts[1]);
    }
    let depths: Vec<usize> = forest.trees.iter().map(|t| t.depth()).collect();
    println!("tree depths {:?}..", &depths[..10]);
    Ok(())
}
