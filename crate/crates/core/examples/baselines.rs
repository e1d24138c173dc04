//! `k` next to chi-square, Cramér's V and mutual information on the
//! mixture path.
//!
//!     cargo run --example baselines

use depcoef::generators::gen_mixture;
use depcoef::{baselines, coefficient, orient, Algorithm, Thresholds};

fn main() -> depcoef::Result<()> {
    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "lambda", "k", "chi2", "V", "MI");
    for step in 0..=8 {
        let lambda = step as f64 / 8.0;
        let oriented = orient(&gen_mixture(3, 5, lambda, 7)?)?;
        let k = coefficient(&oriented, Algorithm::Fast, &Thresholds::default())?.k;
        let b = baselines(&oriented)?;
        println!(
            "{lambda:>6.3} {k:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            b.chi_square, b.cramers_v, b.mutual_information
        );
    }
    Ok(())
}
