//! Walks the mixture path from an independent table to a functional one.
//!
//! `lambda = 0` is the product of the seed's marginals, `lambda = 1` is the
//! functional table from the same seed; `k` moves from 0 to 1 in between.
//!
//!     cargo run --example extremes -- [rows] [cols] [seed]

use depcoef::generators::gen_mixture;
use depcoef::{dependence, is_functional_structure};

fn main() -> depcoef::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let rows = args.first().copied().unwrap_or(4) as usize;
    let cols = args.get(1).copied().unwrap_or(6) as usize;
    let seed = args.get(2).copied().unwrap_or(2024);

    println!("{rows}x{cols}, seed {seed}");
    println!("{:>7}  {:>22}  {:<12}  functional support", "lambda", "k", "class");
    for step in 0..=10 {
        let lambda = step as f64 / 10.0;
        let p = gen_mixture(rows, cols, lambda, seed)?;
        let report = dependence(&p)?;
        println!(
            "{lambda:>7.1}  {:>22.17}  {:<12}  {}",
            report.k,
            report.classification.as_str(),
            is_functional_structure(&p, 0.0),
        );
    }
    Ok(())
}
