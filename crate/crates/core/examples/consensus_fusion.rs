//! Fusing two independent opinions about the same proposition.
//!
//! `cargo run --example consensus_fusion`

use polyrep::{consensus, EvidenceCount, Opinion};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let optimist = Opinion::new("A", "relevant", 0.8, 0.0, 0.2, 0.5)?;
    let sceptic = Opinion::new("B", "relevant", 0.0, 0.8, 0.2, 0.5)?;
    let fused = consensus(&optimist, &sceptic)?;
    println!("{optimist}\n{sceptic}\n  => {fused}");
    println!("uncertainty {:.3} -> {:.3}", optimist.uncertainty(), fused.uncertainty());

    // Consensus is evidence addition in disguise.
    let a = Opinion::from_evidence("A", "relevant", EvidenceCount::new(4.0, 1.0)?, 0.5)?;
    let b = Opinion::from_evidence("B", "relevant", EvidenceCount::new(2.0, 3.0)?, 0.5)?;
    let pooled = Opinion::from_evidence("A+B", "relevant", EvidenceCount::new(6.0, 4.0)?, 0.5)?;
    println!("\nconsensus:       {}", consensus(&a, &b)?);
    println!("pooled evidence: {pooled}");

    // A vacuous opinion contributes nothing.
    let nobody = Opinion::vacuous("C", "relevant", 0.5)?;
    println!("\nwith a vacuous partner: {}", consensus(&a, &nobody)?);

    let certain = Opinion::new("D", "relevant", 1.0, 0.0, 0.0, 0.5)?;
    let refuting = Opinion::new("E", "relevant", 0.0, 1.0, 0.0, 0.5)?;
    println!("two dogmatic opinions: {}", consensus(&certain, &refuting).unwrap_err());
    Ok(())
}
