//! Naive enumeration against the Gram kernels.
//!
//!     cargo run --release --example kernel_timing

use depcoef::cli::bench_shape;

fn main() -> depcoef::Result<()> {
    for (rows, cols) in [(8, 12), (16, 64), (32, 128), (64, 512)] {
        println!("{}", bench_shape(rows, cols, 1)?);
    }
    Ok(())
}
