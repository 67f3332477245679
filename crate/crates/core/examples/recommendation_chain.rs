//! Discounting a second-hand opinion by how much its source is trusted.
//!
//! `cargo run --example recommendation_chain`

use polyrep::{recommend, Opinion};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // B's view of the document, and A's trust in B.
    let advice = Opinion::new("B", "relevant", 0.8, 0.1, 0.1, 0.6)?;
    for (b, d, u) in [(1.0, 0.0, 0.0), (0.9, 0.0, 0.1), (0.5, 0.25, 0.25), (0.0, 0.5, 0.5)] {
        let trust = Opinion::new("A", "B", b, d, u, 0.5)?;
        let derived = recommend(&trust, &advice)?;
        let (rb, rd, ru, ra) = derived.components();
        println!("trust ({b:.2}, {d:.2}, {u:.2}) -> ({rb:.3}, {rd:.3}, {ru:.3}, {ra:.1})  E={:.3}", derived.expectation());
    }

    // Chains nest: A trusts B, B trusts C, C holds the opinion.
    let a_b = Opinion::new("A", "B", 0.9, 0.0, 0.1, 0.5)?;
    let b_c = Opinion::new("B", "C", 0.7, 0.1, 0.2, 0.5)?;
    let c_x = Opinion::new("C", "relevant", 0.6, 0.3, 0.1, 0.5)?;
    let b_x = recommend(&b_c, &c_x)?;
    let a_x = recommend(&a_b, &b_x.with_owner("B"))?;
    println!("\nchain: {a_x}");

    // Trust must be about the opinion's owner.
    let stray = Opinion::new("A", "Z", 1.0, 0.0, 0.0, 0.5)?;
    println!("mismatch: {}", recommend(&stray, &advice).unwrap_err());
    Ok(())
}
