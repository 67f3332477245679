//! Checking opinion expectations against sampled Beta distributions.
//!
//! `cargo run --release --example beta_oracle [seed]`

use polyrep::oracle::{format_table, run_suite, MIN_SAMPLES};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(42);
    let reports = run_suite(seed, MIN_SAMPLES * 10)?;
    print!("{}", format_table(&reports));
    Ok(())
}
