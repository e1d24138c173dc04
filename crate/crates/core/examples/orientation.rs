//! Pruning and orientation. `k` is not symmetric in its arguments, so the
//! orientation rule matters for tall tables.

use depcoef::{coefficient, orient_with, Algorithm, InputMode, JointMatrix, Orientation, Thresholds};

fn main() -> depcoef::Result<()> {
    let p = JointMatrix::validate(
        &[
            vec![0.10, 0.05],
            vec![0.00, 0.00],
            vec![0.20, 0.10],
            vec![0.05, 0.30],
            vec![0.15, 0.05],
        ],
        InputMode::Probabilities,
        1e-9,
    )?;

    for policy in [Orientation::Auto, Orientation::AsGiven] {
        let oriented = orient_with(&p, policy)?;
        let report = coefficient(&oriented, Algorithm::Fast, &Thresholds::default())?;
        println!(
            "{policy:?}: {}x{} transposed={} dropped rows {:?}, k = {:.6}",
            oriented.rows(),
            oriented.cols(),
            oriented.transposed,
            oriented.dropped_rows,
            report.k
        );
    }
    Ok(())
}
