//! Parsing a topic with five representations and turning each into an
//! opinion with the bundled lexicon.
//!
//! `cargo run --example topic_extraction`

use std::path::Path;

use polyrep::{parse_topic, representation_opinion, ExtractorConfig, RepIndex};

const TOPIC: &str = "\
Topic: 001
Representation 1: I am looking for information about manipulation and
  immobilisation of nano spheres and peptide nano particles.
Representation 2: For my master thesis.
Representation 3: Gold nano particles are used for immobilisation.
Representation 4: An article describing the use of chips for manipulation.
Representation 5: Manipulation, nano spheres, peptides, immobilisation.
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let extractor = ExtractorConfig::from_file(&data.join("extractor.toml"))?.load()?;

    let topic = parse_topic(TOPIC)?;
    println!("keywords: {:?}\n", topic.keywords());
    for index in RepIndex::all() {
        let o = representation_opinion(&topic, index, &extractor, 0.5)?;
        let (b, d, u, _) = o.components();
        println!("{:<10} {:<28} b={b:.3} d={d:.3} u={u:.3}", o.owner(), index.label());
    }
    Ok(())
}
