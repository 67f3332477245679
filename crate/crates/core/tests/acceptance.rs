//! Acceptance criteria. Each test prints one PASS/FAIL line to stderr; run
//! with `--test-threads=1` to see them in order.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use polyrep::cli::{self, exit, output::parse_machine, output::RunRecord};
use polyrep::oracle::{beta_mean_check_seeded, random_opinion};
use polyrep::polyrep::{Lexicon, Stopwords};
use polyrep::{
    consensus, extract_evidence, parse_topic, recommend, EvidenceCount, FusionError, LexicalExtractor, Opinion,
    RepIndex, Topic,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Writes to stderr directly rather than through `println!`, so the verdict
/// shows up even when the harness captures test output.
fn report(id: u32, title: &str, failures: &[String], elapsed: Duration) {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "criterion {id} [{verdict}] {title} ({elapsed:.2?})");
    for f in failures.iter().take(10) {
        let _ = writeln!(err, "    {f}");
    }
    drop(err);
    assert!(failures.is_empty(), "criterion {id} failed: {} violation(s)", failures.len());
}

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn within(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol
}

#[test]
fn criterion_1_evidence_mapping_identity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut failures = Vec::new();
    for _ in 0..100_000 {
        let (r, s, a) = (rng.random_range(0.0..=1000.0), rng.random_range(0.0..=1000.0), rng.random::<f64>());
        let o = Opinion::from_evidence("A", "x", EvidenceCount::new(r, s).unwrap(), a).unwrap();
        let (b, d, u, _) = o.components();
        if (b + d) + u != 1.0 {
            failures.push(format!("r={r} s={s}: b+d+u = {:e}", (b + d) + u));
        }
        let back = Opinion::from_evidence("A", "x", o.to_evidence().unwrap(), a).unwrap();
        let (b2, d2, u2, _) = back.components();
        if !(within(b, b2, 1e-9) && within(d, d2, 1e-9) && within(u, u2, 1e-9)) {
            failures.push(format!("r={r} s={s}: round trip drifted"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(5) {
        failures.push(format!("runtime {elapsed:?} exceeds 5 s"));
    }
    report(1, "evidence mapping sums to one exactly and round-trips within 1e-9", &failures, elapsed);
}

#[test]
fn criterion_2_consensus_is_evidence_addition() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = Vec::new();
    for _ in 0..10_000 {
        let a_rate = rng.random::<f64>();
        let a = random_opinion(&mut rng, "A", a_rate);
        let b = random_opinion(&mut rng, "B", a_rate);
        let fused = consensus(&a, &b).unwrap();
        let ea = a.to_evidence().unwrap();
        let eb = b.to_evidence().unwrap();
        let summed = EvidenceCount::new(ea.positive() + eb.positive(), ea.negative() + eb.negative()).unwrap();
        let oracle = Opinion::from_evidence("oracle", "x", summed, a_rate).unwrap();
        let (x, y) = (fused.components(), oracle.components());
        if !(within(x.0, y.0, 1e-9) && within(x.1, y.1, 1e-9) && within(x.2, y.2, 1e-9)) {
            failures.push(format!("{a} ⊕ {b}: {x:?} vs {y:?}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(5) {
        failures.push(format!("runtime {elapsed:?} exceeds 5 s"));
    }
    report(2, "consensus matches evidence addition within 1e-9 on 10^4 pairs", &failures, elapsed);
}

#[test]
fn criterion_3_algebraic_laws() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failures = Vec::new();
    for _ in 0..10_000 {
        let rate = rng.random::<f64>();
        let a = random_opinion(&mut rng, "A", rate);
        let b = random_opinion(&mut rng, "B", rate);
        let c = random_opinion(&mut rng, "C", rate);

        let ab = consensus(&a, &b).unwrap().components();
        let ba = consensus(&b, &a).unwrap().components();
        if !(within(ab.0, ba.0, 1e-12) && within(ab.1, ba.1, 1e-12) && within(ab.2, ba.2, 1e-12) && within(ab.3, ba.3, 1e-12)) {
            failures.push(format!("commutativity: {ab:?} vs {ba:?}"));
        }

        let left = consensus(&consensus(&a, &b).unwrap(), &c).unwrap().components();
        let right = consensus(&a, &consensus(&b, &c).unwrap()).unwrap().components();
        if !(within(left.0, right.0, 1e-9) && within(left.1, right.1, 1e-9) && within(left.2, right.2, 1e-9)) {
            failures.push(format!("associativity: {left:?} vs {right:?}"));
        }

        let vacuous = Opinion::vacuous("V", "x", rng.random::<f64>()).unwrap();
        let neutral = consensus(&vacuous, &a).unwrap().components();
        let orig = a.components();
        if !(within(neutral.0, orig.0, 1e-12) && within(neutral.1, orig.1, 1e-12) && within(neutral.2, orig.2, 1e-12))
            || (orig.2 < 1.0 && !within(neutral.3, orig.3, 1e-12))
        {
            failures.push(format!("vacuous neutrality: {neutral:?} vs {orig:?}"));
        }

        let rec = a.with_owner("B");
        let full = Opinion::new("A", "B", 1.0, 0.0, 0.0, rng.random::<f64>()).unwrap();
        let id = recommend(&full, &rec).unwrap().components();
        if !(within(id.0, orig.0, 1e-12) && within(id.1, orig.1, 1e-12) && within(id.2, orig.2, 1e-12) && within(id.3, orig.3, 1e-12)) {
            failures.push(format!("full-trust identity: {id:?} vs {orig:?}"));
        }

        let x = rng.random::<f64>();
        let zero = Opinion::new("A", "B", 0.0, x, 1.0 - x, 0.5).unwrap();
        let z = recommend(&zero, &rec).unwrap();
        if z.uncertainty() != 1.0 || z.belief() != 0.0 || z.disbelief() != 0.0 {
            failures.push(format!("zero-trust: {:?}", z.components()));
        }
    }
    report(3, "commutativity, associativity, vacuous neutrality, trust identities", &failures, start.elapsed());
}

fn random_valid(rng: &mut ChaCha8Rng, owner: &str) -> Opinion {
    let rate = rng.random::<f64>();
    match rng.random_range(0..10) {
        // A share of dogmatic and vacuous operands keeps the boundary in play.
        0 => {
            let b = rng.random::<f64>();
            Opinion::new(owner, "x", b, 1.0 - b, 0.0, rate).unwrap()
        }
        1 => Opinion::vacuous(owner, "x", rate).unwrap(),
        _ => random_opinion(rng, owner, rate),
    }
}

#[test]
fn criterion_4_uncertainty_direction() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    let mut checked = 0;
    for _ in 0..100_000 {
        let a = random_valid(&mut rng, "A");
        let b = random_valid(&mut rng, "B");
        match consensus(&a, &b) {
            Ok(c) => {
                checked += 1;
                if c.uncertainty() > a.uncertainty().min(b.uncertainty()) + 1e-12 {
                    failures.push(format!("consensus raised uncertainty: {a} ⊕ {b} → {c}"));
                }
            }
            Err(FusionError::BothDogmatic) => assert!(a.is_dogmatic() && b.is_dogmatic()),
            Err(e) => failures.push(e.to_string()),
        }
        let trust = a.with_proposition("B");
        let r = recommend(&trust, &b).unwrap();
        if r.uncertainty() < b.uncertainty() - 1e-12 {
            failures.push(format!("recommendation lowered uncertainty: {trust} ⊗ {b} → {r}"));
        }
    }
    assert!(checked > 95_000);
    report(4, "consensus never raises, recommendation never lowers uncertainty", &failures, start.elapsed());
}

#[test]
fn criterion_5_beta_oracle_expectation() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut seed = 500;
    for (r, s) in [(0.0, 0.0), (2.0, 0.0), (8.0, 8.0), (50.0, 10.0)] {
        for a in [0.3, 0.5] {
            seed += 1;
            let ev = EvidenceCount::new(r, s).unwrap();
            let analytic = (r + 2.0 * a) / (r + s + 2.0);
            let e = Opinion::from_evidence("A", "x", ev, a).unwrap().expectation();
            // b + a·u and (r + 2a)/(r + s + 2) are the same rational, but the
            // two evaluation orders can round one ulp apart (r=50, s=10, a=0.5).
            if !within(e, analytic, f64::EPSILON) {
                failures.push(format!("r={r} s={s} a={a}: E={e} vs analytic {analytic}"));
            }
            let report = beta_mean_check_seeded(ev, a, 1_000_000, seed).unwrap();
            println!("    {report}");
            if !report.pass {
                failures.push(format!("Beta sampling disagrees: {report}"));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(30) {
        failures.push(format!("runtime {elapsed:?} exceeds 30 s"));
    }
    report(5, "expectation matches Beta(r+2a, s+2(1-a)) mean within 3 SE", &failures, elapsed);
}

#[test]
fn criterion_6_worked_examples() {
    let start = Instant::now();
    let mut failures = Vec::new();

    let lexicon = Lexicon::load(&manifest().join("data/lexicon.tsv")).unwrap();
    let extractor = LexicalExtractor::new(lexicon, Stopwords::default());
    let topic = Topic::new("health-bill", ["", "", "", "", "health bill US"]).unwrap();
    let ev = extract_evidence(&topic, RepIndex::KEYWORDS, &extractor);
    if (ev.positive(), ev.negative()) != (3.0, 1.0) {
        failures.push(format!("health bill US: r={} s={}", ev.positive(), ev.negative()));
    }
    let o = Opinion::from_evidence("rep5", "health-bill", ev, 0.5).unwrap();
    let (b, d, u, _) = o.components();
    if !(within(b, 0.5, 1e-12) && within(d, 1.0 / 6.0, 1e-12) && within(u, 1.0 / 3.0, 1e-12)) {
        failures.push(format!("health bill US opinion {:?}", o.components()));
    }

    let fig3 = parse_topic(&std::fs::read_to_string(manifest().join("tests/fixtures/topic_001.txt")).unwrap()).unwrap();
    if RepIndex::all().any(|i| fig3.representation(i).is_empty()) {
        failures.push("sample topic lacks a representation".into());
    }
    if fig3.keywords() != ["manipulation", "nano spheres", "peptides", "immobilisation"] {
        failures.push(format!("keywords {:?}", fig3.keywords()));
    }
    report(6, "`health bill US` → (1/2, 1/6, 1/3); sample topic parses", &failures, start.elapsed());
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("polyrep").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn criterion_7_end_to_end_determinism() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let m = manifest();
    let (topics, scenarios, extractor) = (
        m.join("tests/fixtures/topic_001.txt"),
        m.join("tests/fixtures/scenarios.conf"),
        m.join("data/extractor.toml"),
    );

    // Oracle route for the frozen values: evidence addition for consensus,
    // the discounting formula evaluated directly for recommendation.
    let ex = polyrep::ExtractorConfig::from_file(&extractor).unwrap().load().unwrap();
    let fig3 = parse_topic(&std::fs::read_to_string(&topics).unwrap()).unwrap();
    let evidence = |i: usize| extract_evidence(&fig3, RepIndex::new(i).unwrap(), &ex);
    let from = |e: EvidenceCount| Opinion::from_evidence("o", "x", e, 0.5).unwrap().components();
    let adhoc = from(evidence(1) + evidence(5));
    let (b2, d2, u2, _) = from(evidence(2));
    let (b4, d4, u4, a4) = from(evidence(4));
    let context = (b2 * b4, b2 * d4, d2 + u2 + b2 * u4, a4);

    for (scenario, expected) in [("adhoc", adhoc), ("context", context)] {
        let args = [
            "run", "--topics", path(&topics), "--scenarios", path(&scenarios), "--scenario", scenario, "--extractor",
            path(&extractor),
        ];
        let first = run_cli(&args);
        let second = run_cli(&args);
        if first.0 != 0 {
            failures.push(format!("{scenario}: exit {} ({})", first.0, first.2));
            continue;
        }
        if first.1 != second.1 {
            failures.push(format!("{scenario}: output differs between invocations"));
        }
        let golden_path = m.join(format!("tests/golden/fig3_{scenario}.txt"));
        match std::fs::read_to_string(&golden_path) {
            Ok(golden) if golden == first.1 => {}
            Ok(_) => failures.push(format!("{scenario}: output differs from {}", golden_path.display())),
            Err(e) => failures.push(format!("{scenario}: {e}")),
        }
        match parse_machine(&first.1).as_deref() {
            Ok([RunRecord::Fused(run)]) => {
                let got = (run.opinion.belief, run.opinion.disbelief, run.opinion.uncertainty, run.opinion.base_rate);
                // Output carries six decimals.
                if !(within(got.0, expected.0, 5e-7)
                    && within(got.1, expected.1, 5e-7)
                    && within(got.2, expected.2, 5e-7)
                    && within(got.3, expected.3, 5e-7))
                {
                    failures.push(format!("{scenario}: {got:?} vs oracle {expected:?}"));
                }
                if run.trace.len() != 3 {
                    failures.push(format!("{scenario}: trace has {} nodes", run.trace.len()));
                }
            }
            other => failures.push(format!("{scenario}: unexpected records {other:?}")),
        }
    }
    report(7, "`run` is byte-identical across invocations and matches the golden files", &failures, start.elapsed());
}

#[test]
fn criterion_8_error_surface() {
    let start = Instant::now();
    let mut failures = Vec::new();

    let a = Opinion::new("A", "x", 1.0, 0.0, 0.0, 0.5).unwrap();
    let b = Opinion::new("B", "x", 0.0, 1.0, 0.0, 0.5).unwrap();
    if consensus(&a, &b) != Err(FusionError::BothDogmatic) {
        failures.push("dogmatic consensus did not raise BothDogmatic".into());
    }
    let (code, _, err) = run_cli(&["fuse", "--op", "consensus", "1,0,0,0.5", "0,1,0,0.5"]);
    if code != exit::FUSION || !err.contains("kappa = 0") {
        failures.push(format!("fuse on dogmatic pair: exit {code}, `{}`", err.trim()));
    }

    let dir = tempfile::tempdir().unwrap();
    let topics = dir.path().join("topics.txt");
    let scenarios = dir.path().join("scenarios.conf");
    std::fs::write(&scenarios, "adhoc = consensus(rep1, rep5)\n").unwrap();

    std::fs::write(&topics, "Representation 1: a\nRepresentation 2: b\nRepresentation 3: c\nRepresentation 5: k\n").unwrap();
    let (code, _, err) = run_cli(&["run", "--topics", path(&topics), "--scenarios", path(&scenarios), "--scenario", "adhoc"]);
    if code != exit::MALFORMED_TOPIC || !err.contains("Representation 4") || !err.contains("line") {
        failures.push(format!("malformed topic: exit {code}, `{}`", err.trim()));
    }

    std::fs::write(&topics, "Representation 1: a\nRepresentation 2: b\nRepresentation 3: c\nRepresentation 4: d\nRepresentation 5: k\n").unwrap();
    std::fs::write(&scenarios, "adhoc = consensus(rep1, rep5)\nbroken = consensus(rep1\n").unwrap();
    let (code, _, err) = run_cli(&["run", "--topics", path(&topics), "--scenarios", path(&scenarios), "--scenario", "adhoc"]);
    if code != exit::PLAN || !err.contains("line 2, column 24") || !err.contains("byte 15") {
        failures.push(format!("malformed plan: exit {code}, `{}`", err.trim()));
    }

    std::fs::write(&scenarios, "adhoc = consensus(rep1, rep5)\n").unwrap();
    let (code, _, err) = run_cli(&["run", "--topics", path(&topics), "--scenarios", path(&scenarios), "--scenario", "missing"]);
    if code != exit::PLAN {
        failures.push(format!("unknown scenario: exit {code}, `{}`", err.trim()));
    }
    report(8, "BothDogmatic, malformed topic (exit 4) and plan (exit 5) with positions", &failures, start.elapsed());
}
