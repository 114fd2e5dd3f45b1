//! Regenerates the bundled synthetic dataset, or a custom one.
//!
//! ```text
//! cargo run --example write_synthetic -- data/synthetic_vr.csv [rows] [noise] [seed]
//! ```

use std::env;
use std::fs;

use sparrow_forest::synthetic;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = env::args().skip(1).collect();
    let path = args.first().map(String::as_str).unwrap_or("synthetic_vr.csv");
    let rows = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(synthetic::BUNDLED_ROWS);
    let noise = args.get(2).map(|s| s.parse()).transpose()?.unwrap_or(synthetic::BUNDLED_NOISE);
    let seed = args.get(3).map(|s| s.parse()).transpose()?.unwrap_or(synthetic::BUNDLED_SEED);

    let data = synthetic::generate(rows, noise, seed);
    fs::write(path, synthetic::to_csv(&data)?)?;
    let immersed = data.labels().iter().filter(|&&l| l == 2).count();
    println!("wrote {rows} rows to {path} ({immersed} immersed)");
    Ok(())
}
