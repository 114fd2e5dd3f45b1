//! Loads a VR-experience CSV, cleans it and prints the column summary.
//!
//! ```text
//! cargo run --example describe_dataset -- path/to/data.csv
//! ```
//! Without an argument the bundled synthetic file is used.

use std::env;

use sparrow_forest::dataset::{self, Column};
use sparrow_forest::synthetic;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = match env::args().nth(1) {
        Some(path) => dataset::load_csv(path)?,
        None => synthetic::bundled(),
    };
    let unique = dataset::deduplicate(&data);
    for (column, lo, hi) in dataset::sigma_thresholds(&unique, &Column::NUMERIC) {
        println!("{:<15} keeps [{lo:.3}, {hi:.3}]", column.name());
    }
    let cleaned = dataset::remove_outliers_3sigma(&unique, &Column::NUMERIC);
    println!(
        "{} rows, {} duplicates, {} outliers",
        data.len(),
        data.len() - unique.len(),
        unique.len() - cleaned.len()
    );
    println!("{}", dataset::describe_json(&cleaned)?);
    Ok(())
}
