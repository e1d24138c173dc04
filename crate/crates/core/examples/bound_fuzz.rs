//! Random nonnegative matrices never push `mu` above `mu_f`.
//!
//!     cargo run --release --example bound_fuzz -- [count]

use depcoef::generators::gen_random;
use depcoef::{mu_f, mu_fast, mu_naive};

fn main() -> depcoef::Result<()> {
    let count: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(20_000);
    let mut worst = 0.0f64;
    for seed in 0..count {
        let rows = 2 + (seed % 7) as usize;
        let cols = 2 + (seed / 7 % 11) as usize;
        let p = gen_random(rows, cols, seed, true)?;
        let bound = mu_f(&p);
        for v in [mu_naive(&p), mu_fast(&p)] {
            assert!(v <= bound * (1.0 + 1e-12), "seed {seed}: {v} > {bound}");
            worst = worst.max(v / bound);
        }
        let t = p.transpose();
        worst = worst.max(mu_fast(&t) / mu_f(&t));
    }
    println!("{count} matrices, largest mu / mu_f = {worst:.6}");
    Ok(())
}
