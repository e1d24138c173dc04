//! The coefficient for a small 2x2 table, step by step.
//!
//!     cargo run --example worked_example

use depcoef::{coefficient, mu_f, mu_fast, mu_naive, orient, Algorithm, InputMode, JointMatrix, Thresholds};

fn main() -> depcoef::Result<()> {
    let p = JointMatrix::validate(
        &[vec![0.4, 0.1], vec![0.2, 0.3]],
        InputMode::Probabilities,
        1e-9,
    )?;

    let marginals = p.marginals();
    println!("row sums    {:?}", marginals.row_sums);
    println!("column sums {:?}", marginals.col_sums);

    // One 2x2 minor: 0.4 * 0.3 - 0.1 * 0.2 = 0.1.
    println!("mu (naive)  {:.17}", mu_naive(&p));
    println!("mu (fast)   {:.17}", mu_fast(&p));
    println!("mu_f        {:.17}", mu_f(&p));

    let report = coefficient(&orient(&p)?, Algorithm::Fast, &Thresholds::default())?;
    println!("k           {:.17} ({})", report.k, report.classification.as_str());
    Ok(())
}
