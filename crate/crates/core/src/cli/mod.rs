//! Command-line front end: `opinion`, `fuse`, `run` and `validate`.
//!
//! [`run`] takes the argument list and output sinks and returns the process
//! exit code, so the binary stays a one-liner and every command is testable
//! in-process.

pub mod output;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::fusion::{consensus, recommend, FusionError};
use crate::opinion::{EvidenceCount, Opinion};
use crate::oracle::{self, MIN_SAMPLES};
use crate::plan::{evaluate_plan, PlanContext, ScenarioSet};
use crate::polyrep::{parse_topics, ExtractorConfig, PolyrepError};

use output::{fmt6, write_human, write_machine, RunOutput, RunRecord};

/// Environment variable holding the log filter (e.g. `debug`).
pub const LOG_ENV: &str = "POLYREP_LOG";

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const FUSION: i32 = 3;
    pub const MALFORMED_TOPIC: i32 = 4;
    pub const PLAN: i32 = 5;
    pub const ORACLE_FAILURE: i32 = 6;
}

#[derive(Debug, Parser)]
#[command(name = "polyrep", version, about = "Subjective Logic fusion of information-need representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Map positive/negative evidence onto an opinion.
    Opinion {
        /// Positive evidence.
        #[arg(long = "r", allow_negative_numbers = true)]
        positive: f64,
        /// Negative evidence.
        #[arg(long = "s", allow_negative_numbers = true)]
        negative: f64,
        /// Base rate.
        #[arg(long = "a", default_value_t = 0.5, allow_negative_numbers = true)]
        base_rate: f64,
    },
    /// Fuse two opinions given as `b,d,u,a`.
    Fuse {
        #[arg(long = "op", value_enum)]
        op: FuseOp,
        /// First operand (the trust opinion for `recommend`).
        #[arg(allow_hyphen_values = true)]
        left: String,
        /// Second operand (the recommended opinion for `recommend`).
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Run every topic in a file through a named scenario plan.
    Run {
        #[arg(long)]
        topics: PathBuf,
        #[arg(long)]
        scenarios: PathBuf,
        #[arg(long)]
        scenario: String,
        /// TOML extractor config (lexicon, stopwords, per-representation overrides).
        #[arg(long)]
        extractor: Option<PathBuf>,
        #[arg(long = "base-rate", default_value_t = 0.5)]
        base_rate: f64,
        #[arg(long, value_enum, default_value_t = Format::Both)]
        format: Format,
        /// Exit non-zero when any topic fails to fuse.
        #[arg(long)]
        strict: bool,
    },
    /// Run the statistical and algebraic oracle suite.
    Validate {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FuseOp {
    Consensus,
    Recommend,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
    Both,
}

/// Installs the `env_logger` backend filtered by [`LOG_ENV`] (default: warnings).
pub fn init_logging() {
    let env = env_logger::Env::new().filter_or(LOG_ENV, "warn");
    let _ = env_logger::Builder::from_env(env).try_init();
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Opinion { positive, negative, base_rate } => cmd_opinion(positive, negative, base_rate, out),
        Command::Fuse { op, left, right } => cmd_fuse(op, &left, &right, out),
        Command::Run { topics, scenarios, scenario, extractor, base_rate, format, strict } => cmd_run(
            &RunRequest { topics, scenarios, scenario, extractor, base_rate, format, strict },
            out,
        ),
        Command::Validate { seed, samples } => cmd_validate(seed, samples, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl ToString) -> Failure {
    Failure { code, message: message.to_string() }
}

fn io_fail(path: &Path, e: std::io::Error) -> Failure {
    fail(exit::IO, format!("cannot read `{}`: {e}", path.display()))
}

type CmdResult = Result<i32, Failure>;

fn cmd_opinion(r: f64, s: f64, a: f64, out: &mut dyn Write) -> CmdResult {
    let evidence = EvidenceCount::new(r, s).map_err(|e| fail(exit::USAGE, e))?;
    let o = Opinion::from_evidence("cli", "x", evidence, a).map_err(|e| fail(exit::USAGE, e))?;
    let _ = writeln!(
        out,
        "b={} d={} u={} a={} E={}",
        fmt6(o.belief()),
        fmt6(o.disbelief()),
        fmt6(o.uncertainty()),
        fmt6(o.base_rate()),
        fmt6(o.expectation())
    );
    Ok(exit::OK)
}

/// Parses a `b,d,u,a` quadruple.
fn parse_quadruple(text: &str, owner: &str, proposition: &str) -> Result<Opinion, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(fail(exit::USAGE, format!("`{text}` is not a `b,d,u,a` quadruple")));
    }
    let mut v = [0.0; 4];
    for (slot, part) in v.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .map_err(|_| fail(exit::USAGE, format!("`{part}` in `{text}` is not a number")))?;
    }
    Opinion::new(owner, proposition, v[0], v[1], v[2], v[3])
        .map_err(|e| fail(exit::USAGE, format!("`{text}`: {e}")))
}

fn cmd_fuse(op: FuseOp, left: &str, right: &str, out: &mut dyn Write) -> CmdResult {
    let fused = match op {
        FuseOp::Consensus => {
            let a = parse_quadruple(left, "A", "x")?;
            let b = parse_quadruple(right, "B", "x")?;
            consensus(&a, &b)
        }
        FuseOp::Recommend => {
            let trust = parse_quadruple(left, "A", "B")?;
            let rec = parse_quadruple(right, "B", "x")?;
            recommend(&trust, &rec)
        }
    };
    let fused = fused.map_err(|e| match e {
        FusionError::BothDogmatic => fail(exit::FUSION, e),
        other => fail(exit::USAGE, other),
    })?;
    let (b, d, u, a) = fused.components();
    let _ = writeln!(out, "{},{},{},{}", fmt6(b), fmt6(d), fmt6(u), fmt6(a));
    Ok(exit::OK)
}

struct RunRequest {
    topics: PathBuf,
    scenarios: PathBuf,
    scenario: String,
    extractor: Option<PathBuf>,
    base_rate: f64,
    format: Format,
    strict: bool,
}

fn cmd_run(req: &RunRequest, out: &mut dyn Write) -> CmdResult {
    if !(0.0..=1.0).contains(&req.base_rate) {
        return Err(fail(exit::USAGE, format!("--base-rate {} lies outside [0, 1]", req.base_rate)));
    }
    let scenario_text = fs::read_to_string(&req.scenarios).map_err(|e| io_fail(&req.scenarios, e))?;
    let scenarios = ScenarioSet::parse(&scenario_text)
        .map_err(|e| fail(exit::PLAN, format!("{}: {e}", req.scenarios.display())))?;
    let plan = scenarios.get(&req.scenario).map_err(|e| fail(exit::PLAN, e))?;

    let config = match &req.extractor {
        Some(path) => ExtractorConfig::from_file(path).map_err(|e| fail(exit::IO, e))?,
        None => ExtractorConfig::default(),
    };
    let extractor = config.load().map_err(|e| fail(exit::IO, e))?;

    let topic_text = fs::read_to_string(&req.topics).map_err(|e| io_fail(&req.topics, e))?;
    let default_id = req.topics.file_stem().and_then(|s| s.to_str()).unwrap_or("topic");
    let topics = parse_topics(&topic_text, default_id).map_err(|e| match e {
        e @ PolyrepError::MalformedTopic { .. } => fail(exit::MALFORMED_TOPIC, format!("{}: {e}", req.topics.display())),
        other => fail(exit::IO, other),
    })?;
    log::debug!("running {} topic(s) through scenario `{}`", topics.len(), req.scenario);

    let records: Vec<RunRecord> = topics
        .par_iter()
        .map(|topic| {
            let ctx = PlanContext { topic, extractor: &extractor, base_rate: req.base_rate };
            match evaluate_plan(plan, &ctx) {
                Ok(eval) => RunRecord::Fused(RunOutput::from_evaluation(topic.id(), &req.scenario, &eval)),
                Err(e) => {
                    log::warn!("topic {}: {e}", topic.id());
                    RunRecord::Failed {
                        topic: topic.id().to_string(),
                        scenario: req.scenario.clone(),
                        message: e.to_string(),
                    }
                }
            }
        })
        .collect();

    let mut text = String::new();
    for record in &records {
        if matches!(req.format, Format::Human | Format::Both) {
            write_human(record, &mut text);
        }
        if matches!(req.format, Format::Machine | Format::Both) {
            write_machine(record, &mut text);
        }
    }
    let _ = out.write_all(text.as_bytes());

    let failures = records.iter().filter(|r| matches!(r, RunRecord::Failed { .. })).count();
    if req.strict && failures > 0 {
        return Err(fail(exit::FUSION, format!("{failures} topic(s) failed to fuse")));
    }
    Ok(exit::OK)
}

fn cmd_validate(seed: u64, samples: u64, out: &mut dyn Write) -> CmdResult {
    if samples < MIN_SAMPLES {
        return Err(fail(exit::USAGE, format!("--samples must be at least {MIN_SAMPLES}, got {samples}")));
    }
    let reports = oracle::run_suite(seed, samples).map_err(|e| fail(exit::IO, e))?;
    let _ = write!(out, "{}", oracle::format_table(&reports));
    if reports.iter().all(|r| r.pass) {
        Ok(exit::OK)
    } else {
        Ok(exit::ORACLE_FAILURE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("polyrep").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn opinion_command() {
        assert_eq!(
            call(&["opinion", "--r", "2", "--s", "0"]),
            (0, "b=0.500000 d=0.000000 u=0.500000 a=0.500000 E=0.750000\n".into(), String::new())
        );
        let (code, out, _) = call(&["opinion", "--r", "0", "--s", "0", "--a", "0.3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "b=0.000000 d=0.000000 u=1.000000 a=0.300000 E=0.300000\n");
        assert_eq!(call(&["opinion", "--r", "-1", "--s", "0"]).0, exit::USAGE);
        assert_eq!(call(&["opinion", "--r", "1", "--s", "0", "--a", "1.5"]).0, exit::USAGE);
        assert_eq!(call(&["opinion", "--r", "x", "--s", "0"]).0, exit::USAGE);
        assert_eq!(call(&["opinion", "--s", "0"]).0, exit::USAGE);
    }

    #[test]
    fn fuse_command() {
        let (code, out, _) = call(&["fuse", "--op", "consensus", "0.8,0,0.2,0.5", "0,0.8,0.2,0.5"]);
        assert_eq!((code, out.as_str()), (0, "0.444444,0.444444,0.111111,0.500000\n"));
        let (code, out, _) = call(&["fuse", "--op", "recommend", "1,0,0,0.5", "0.8,0.1,0.1,0.6"]);
        assert_eq!((code, out.as_str()), (0, "0.800000,0.100000,0.100000,0.600000\n"));
        let (code, _, err) = call(&["fuse", "--op", "consensus", "1,0,0,0.5", "0,1,0,0.5"]);
        assert_eq!(code, exit::FUSION);
        assert!(err.contains("kappa = 0"), "{err}");
        assert_eq!(call(&["fuse", "--op", "consensus", "0.5,0.5,0.5,0.5", "0,0,1,0.5"]).0, exit::USAGE);
        assert_eq!(call(&["fuse", "--op", "average", "0,0,1,0.5", "0,0,1,0.5"]).0, exit::USAGE);
    }

    #[test]
    fn validate_rejects_small_sample_counts() {
        assert_eq!(call(&["validate", "--samples", "10"]).0, exit::USAGE);
    }

    #[test]
    fn help_exits_cleanly() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("validate"));
    }
}
