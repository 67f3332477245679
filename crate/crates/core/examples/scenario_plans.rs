//! Combining representations with fusion plans and reading the trace.
//!
//! `cargo run --example scenario_plans`

use polyrep::{evaluate_plan, parse_plan, parse_topic, LexicalExtractor, PlanContext, ScenarioSet};

const TOPIC: &str = "\
Topic: demo
Representation 1: peptide nano particles
Representation 2: research for a thesis
Representation 3: gold particles
Representation 4: an article on chips
Representation 5: peptides, gold
";

const SCENARIOS: &str = "\
# ad hoc retrieval trusts what is asked
adhoc    = consensus(rep1, rep5)
# context-aware retrieval discounts the answer description by the motive
context  = rep2 (x) rep4
everything = rep1 (+) rep3 (+) rep5 (+) opinion(0.2, 0.2, 0.6, 0.5)
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let topic = parse_topic(TOPIC)?;
    let extractor = LexicalExtractor::default();
    let ctx = PlanContext { topic: &topic, extractor: &extractor, base_rate: 0.5 };

    let scenarios = ScenarioSet::parse(SCENARIOS)?;
    for name in scenarios.names() {
        let plan = scenarios.get(name)?;
        let eval = evaluate_plan(plan, &ctx)?;
        println!("{name}: {}", plan.pretty());
        for (i, step) in eval.trace.iter().enumerate() {
            let (b, d, u, _) = step.result.components();
            println!("  {i}: {:<10} {:?}  b={b:.3} d={d:.3} u={u:.3}", step.op.to_string(), step.operands);
        }
        println!("  E = {:.4}\n", eval.opinion.expectation());
    }

    let err = parse_plan("consensus(rep1, rep6)").unwrap_err();
    println!("syntax error: {err}");
    Ok(())
}
