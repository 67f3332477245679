//! Turning positive and negative evidence counts into opinions, and back.
//!
//! `cargo run --example evidence_to_opinion`

use polyrep::{EvidenceCount, Opinion};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>6} {:>6}  {:>8} {:>8} {:>8} {:>8}", "r", "s", "b", "d", "u", "E");
    for (r, s) in [(0.0, 0.0), (2.0, 0.0), (3.0, 1.0), (8.0, 8.0), (50.0, 10.0), (1000.0, 0.0)] {
        let o = Opinion::from_evidence("analyst", "relevant", EvidenceCount::new(r, s)?, 0.5)?;
        let (b, d, u, _) = o.components();
        println!("{r:>6} {s:>6}  {b:>8.4} {d:>8.4} {u:>8.4} {:>8.4}", o.expectation());
    }

    // The mapping inverts as long as some uncertainty is left.
    let o = Opinion::new("analyst", "relevant", 0.6, 0.2, 0.2, 0.5)?;
    let ev = o.to_evidence()?;
    println!("\n{o}\n  is backed by r = {}, s = {}", ev.positive(), ev.negative());

    let dogmatic = Opinion::new("analyst", "relevant", 1.0, 0.0, 0.0, 0.5)?;
    println!("{dogmatic}\n  -> {}", dogmatic.to_evidence().unwrap_err());
    Ok(())
}
