//! Results of running topics through a scenario plan, and their text forms.
//!
//! The machine-readable form is line oriented and tab separated. A run is one
//! `RUN` line followed by one `NODE` line per plan node, in evaluation
//! (post-order) sequence; a topic whose fusion failed produces one `ERROR`
//! line instead:
//!
//! ```text
//! RUN    topic  scenario  b  d  u  a  E  node_count
//! NODE   topic  scenario  index  op  operands  b  d  u  a
//! ERROR  topic  scenario  message
//! ```
//!
//! `operands` is a comma-separated list of earlier node indices, or `-` for
//! leaves. Every number is printed with six decimals. Lines with any other
//! prefix (the human-readable table) are ignored by [`parse_machine`].

use std::fmt::Write as _;

use thiserror::Error;

use crate::opinion::Opinion;
use crate::plan::Evaluation;

/// Formats a number with six decimals, rounding half to even on the exact
/// binary value. Negative zero prints as zero.
pub fn fmt6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

/// `(b, d, u, a)` of an opinion without its identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpinionValues {
    pub belief: f64,
    pub disbelief: f64,
    pub uncertainty: f64,
    pub base_rate: f64,
}

impl From<&Opinion> for OpinionValues {
    fn from(o: &Opinion) -> Self {
        let (belief, disbelief, uncertainty, base_rate) = o.components();
        Self { belief, disbelief, uncertainty, base_rate }
    }
}

impl OpinionValues {
    fn fields(&self) -> [f64; 4] {
        [self.belief, self.disbelief, self.uncertainty, self.base_rate]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub op: String,
    pub operands: Vec<usize>,
    pub result: OpinionValues,
}

/// The fused opinion of one topic under one scenario, with its trace.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub topic: String,
    pub scenario: String,
    pub opinion: OpinionValues,
    pub expectation: f64,
    pub trace: Vec<TraceRecord>,
}

impl RunOutput {
    pub fn from_evaluation(topic: &str, scenario: &str, eval: &Evaluation) -> Self {
        Self {
            topic: topic.to_string(),
            scenario: scenario.to_string(),
            opinion: OpinionValues::from(&eval.opinion),
            expectation: eval.opinion.expectation(),
            trace: eval
                .trace
                .iter()
                .map(|step| TraceRecord {
                    op: step.op.to_string(),
                    operands: step.operands.clone(),
                    result: OpinionValues::from(&step.result),
                })
                .collect(),
        }
    }
}

/// A topic's outcome within a batch.
#[derive(Debug, Clone, PartialEq)]
pub enum RunRecord {
    Fused(RunOutput),
    Failed { topic: String, scenario: String, message: String },
}

fn sanitize(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

fn operand_list(operands: &[usize]) -> String {
    if operands.is_empty() {
        "-".to_string()
    } else {
        operands.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    }
}

pub fn write_machine(record: &RunRecord, out: &mut String) {
    match record {
        RunRecord::Fused(run) => {
            let [b, d, u, a] = run.opinion.fields().map(fmt6);
            let _ = writeln!(
                out,
                "RUN\t{}\t{}\t{b}\t{d}\t{u}\t{a}\t{}\t{}",
                sanitize(&run.topic),
                run.scenario,
                fmt6(run.expectation),
                run.trace.len()
            );
            for (i, node) in run.trace.iter().enumerate() {
                let [b, d, u, a] = node.result.fields().map(fmt6);
                let _ = writeln!(
                    out,
                    "NODE\t{}\t{}\t{i}\t{}\t{}\t{b}\t{d}\t{u}\t{a}",
                    sanitize(&run.topic),
                    run.scenario,
                    node.op,
                    operand_list(&node.operands)
                );
            }
        }
        RunRecord::Failed { topic, scenario, message } => {
            let _ = writeln!(out, "ERROR\t{}\t{scenario}\t{}", sanitize(topic), sanitize(message));
        }
    }
}

pub fn write_human(record: &RunRecord, out: &mut String) {
    match record {
        RunRecord::Fused(run) => {
            let _ = writeln!(out, "topic {} | scenario {}", run.topic, run.scenario);
            let _ = writeln!(
                out,
                "  {:>4}  {:<10} {:<9} {:>9} {:>9} {:>9} {:>9}",
                "node", "operator", "operands", "b", "d", "u", "a"
            );
            for (i, node) in run.trace.iter().enumerate() {
                let [b, d, u, a] = node.result.fields().map(fmt6);
                let _ = writeln!(
                    out,
                    "  {i:>4}  {:<10} {:<9} {b:>9} {d:>9} {u:>9} {a:>9}",
                    node.op,
                    operand_list(&node.operands)
                );
            }
            let [b, d, u, a] = run.opinion.fields().map(fmt6);
            let _ = writeln!(out, "  fused: b={b} d={d} u={u} a={a} E={}", fmt6(run.expectation));
        }
        RunRecord::Failed { topic, scenario, message } => {
            let _ = writeln!(out, "topic {topic} | scenario {scenario}");
            let _ = writeln!(out, "  error: {message}");
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("machine output line {line}: {message}")]
pub struct MachineParseError {
    pub line: usize,
    pub message: String,
}

/// Reads `RUN`/`NODE`/`ERROR` lines back into records.
pub fn parse_machine(text: &str) -> Result<Vec<RunRecord>, MachineParseError> {
    let mut records = Vec::new();
    let mut pending: Option<(RunOutput, usize)> = None;

    for (n, line) in text.lines().enumerate() {
        let line_no = n + 1;
        let err = |message: String| MachineParseError { line: line_no, message };
        let fields: Vec<&str> = line.split('\t').collect();
        let num = |s: &str| s.parse::<f64>().map_err(|_| err(format!("`{s}` is not a number")));
        let quad = |f: &[&str]| -> Result<OpinionValues, MachineParseError> {
            Ok(OpinionValues {
                belief: num(f[0])?,
                disbelief: num(f[1])?,
                uncertainty: num(f[2])?,
                base_rate: num(f[3])?,
            })
        };
        let flush = |pending: &mut Option<(RunOutput, usize)>, records: &mut Vec<RunRecord>| {
            if let Some((run, expected)) = pending.take() {
                if run.trace.len() != expected {
                    return Err(err(format!(
                        "run for topic `{}` declared {expected} nodes, found {}",
                        run.topic,
                        run.trace.len()
                    )));
                }
                records.push(RunRecord::Fused(run));
            }
            Ok(())
        };

        match fields[0] {
            "RUN" => {
                flush(&mut pending, &mut records)?;
                if fields.len() != 9 {
                    return Err(err(format!("RUN line has {} fields, expected 9", fields.len())));
                }
                let nodes = fields[8].parse::<usize>().map_err(|_| err("bad node count".into()))?;
                pending = Some((
                    RunOutput {
                        topic: fields[1].to_string(),
                        scenario: fields[2].to_string(),
                        opinion: quad(&fields[3..7])?,
                        expectation: num(fields[7])?,
                        trace: Vec::with_capacity(nodes),
                    },
                    nodes,
                ));
            }
            "NODE" => {
                if fields.len() != 10 {
                    return Err(err(format!("NODE line has {} fields, expected 10", fields.len())));
                }
                let (run, _) = pending.as_mut().ok_or_else(|| err("NODE line outside a run".into()))?;
                if fields[1] != run.topic || fields[2] != run.scenario {
                    return Err(err("NODE line belongs to a different run".into()));
                }
                let index = fields[3].parse::<usize>().map_err(|_| err("bad node index".into()))?;
                if index != run.trace.len() {
                    return Err(err(format!("node index {index} out of sequence")));
                }
                let operands = if fields[5] == "-" {
                    vec![]
                } else {
                    fields[5]
                        .split(',')
                        .map(|s| s.parse::<usize>().map_err(|_| err(format!("bad operand `{s}`"))))
                        .collect::<Result<_, _>>()?
                };
                run.trace.push(TraceRecord { op: fields[4].to_string(), operands, result: quad(&fields[6..10])? });
            }
            "ERROR" => {
                flush(&mut pending, &mut records)?;
                if fields.len() != 4 {
                    return Err(err(format!("ERROR line has {} fields, expected 4", fields.len())));
                }
                records.push(RunRecord::Failed {
                    topic: fields[1].to_string(),
                    scenario: fields[2].to_string(),
                    message: fields[3].to_string(),
                });
            }
            _ => {}
        }
    }
    let mut tail = Ok(());
    if let Some((run, expected)) = pending.take() {
        if run.trace.len() == expected {
            records.push(RunRecord::Fused(run));
        } else {
            tail = Err(MachineParseError {
                line: text.lines().count(),
                message: format!("run for topic `{}` is missing nodes", run.topic),
            });
        }
    }
    tail.map(|_| records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_decimals() {
        assert_eq!(fmt6(0.5), "0.500000");
        assert_eq!(fmt6(4.0 / 9.0), "0.444444");
        assert_eq!(fmt6(5.0 / 9.0), "0.555556");
        assert_eq!(fmt6(-0.0), "0.000000");
        assert_eq!(fmt6(1.0), "1.000000");
        // Exact binary halves round to even.
        assert_eq!(format!("{:.1}", 0.25), "0.2");
        assert_eq!(format!("{:.1}", 0.75), "0.8");
        assert_eq!(format!("{:.0}", 2.5), "2");
    }

    fn sample() -> Vec<RunRecord> {
        let v = |b, d, u, a| OpinionValues { belief: b, disbelief: d, uncertainty: u, base_rate: a };
        vec![
            RunRecord::Fused(RunOutput {
                topic: "001".into(),
                scenario: "adhoc".into(),
                opinion: v(0.8, 0.0, 0.2, 0.5),
                expectation: 0.9,
                trace: vec![
                    TraceRecord { op: "rep1".into(), operands: vec![], result: v(0.6, 0.0, 0.4, 0.5) },
                    TraceRecord { op: "rep5".into(), operands: vec![], result: v(0.5, 0.0, 0.5, 0.5) },
                    TraceRecord { op: "consensus".into(), operands: vec![0, 1], result: v(0.8, 0.0, 0.2, 0.5) },
                ],
            }),
            RunRecord::Failed { topic: "002".into(), scenario: "adhoc".into(), message: "kappa = 0".into() },
        ]
    }

    #[test]
    fn machine_lines_round_trip() {
        let mut text = String::new();
        for r in &sample() {
            write_human(r, &mut text);
            write_machine(r, &mut text);
        }
        assert_eq!(parse_machine(&text).unwrap(), sample());
    }

    #[test]
    fn truncated_runs_are_rejected() {
        let mut text = String::new();
        write_machine(&sample()[0], &mut text);
        let truncated: String = text.lines().take(2).map(|l| format!("{l}\n")).collect();
        assert!(parse_machine(&truncated).is_err());
        assert!(parse_machine("NODE\t001\tadhoc\t0\trep1\t-\t0\t0\t1\t0.5\n").is_err());
        assert!(parse_machine("RUN\t001\n").is_err());
    }
}
