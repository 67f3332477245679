//! Reducing a belief mass assignment over several states to a binary
//! opinion about one of them.
//!
//! `cargo run --example frame_coarsening`

use polyrep::{Frame, MassAssignment};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let frame = Frame::new("topic-7", ["background", "method", "result"])?;
    let masses = MassAssignment::from_named(
        frame.clone(),
        &[
            (&["method"][..], 0.5),
            (&["background", "method"][..], 0.2),
            (&["result"][..], 0.1),
            (&["background", "method", "result"][..], 0.2),
        ],
    )?;
    for state in frame.states() {
        let o = masses.focus_opinion(state, "reader")?;
        println!("{o}  E={:.3}", o.expectation());
    }

    let nothing = MassAssignment::vacuous(Frame::binary("topic-7"));
    println!("\nvacuous: {}", nothing.focus_opinion("need", "reader")?);
    Ok(())
}
