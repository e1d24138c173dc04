//! Builds the same report the `depcoef compute` command prints.
//!
//!     cargo run --example json_report -- path/to/matrix.csv

use depcoef::cli::{analyze, Command, OrientationChoice, RunConfig};
use depcoef::io::{parse_matrix, read_matrix};
use depcoef::matrix::DEFAULT_EPS_NORM;
use depcoef::InputMode;

fn main() -> depcoef::Result<()> {
    let p = match std::env::args().nth(1) {
        Some(path) => read_matrix(path, InputMode::Probabilities, DEFAULT_EPS_NORM)?,
        None => parse_matrix("0.2,0.1,0.1\n0.1,0.3,0.2\n", InputMode::Probabilities, DEFAULT_EPS_NORM)?,
    };

    let mut config = RunConfig::new(Command::Compute);
    config.with_baselines = true;
    config.orientation = OrientationChoice::Both;
    println!("{}", analyze(&p, &config)?.to_json());
    Ok(())
}
