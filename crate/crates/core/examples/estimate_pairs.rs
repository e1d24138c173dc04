//! Estimating `k` from paired categorical observations.
//!
//!     cargo run --example estimate_pairs -- [pairs.csv]
//!
//! Without an argument a small built-in sample is used.

use depcoef::estimation::count_table;
use depcoef::io::{parse_pairs, read_pairs};
use depcoef::{dependence, encode_labels, tabulate};

const SAMPLE: &str = "\
# weather, commute
rain,bus
rain,bus
rain,car
sun,bike
sun,bike
sun,bus
snow,car
snow,car
";

fn main() -> depcoef::Result<()> {
    let samples = match std::env::args().nth(1) {
        Some(path) => read_pairs(path)?,
        None => parse_pairs(SAMPLE)?,
    };

    let (xs, ys) = encode_labels(&samples);
    let (_, cols, counts) = count_table(&samples)?;
    print!("{:>8}", "");
    for y in ys.keys() {
        print!("{y:>8}");
    }
    println!();
    for (i, x) in xs.keys().enumerate() {
        print!("{x:>8}");
        for c in &counts[i * cols..(i + 1) * cols] {
            print!("{c:>8}");
        }
        println!();
    }

    let report = dependence(&tabulate(&samples)?)?;
    println!("\n{} observations, k = {:.6} ({})", samples.len(), report.k, report.classification.as_str());
    Ok(())
}
