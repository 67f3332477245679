//! Independent correctness checks for the opinion calculus.
//!
//! Two routes are compared against the operators:
//!
//! * **Beta sampling.** An opinion built from evidence `(r, s)` with base rate
//!   `a` has expectation `(r + 2a) / (r + s + 2)`, the mean of
//!   `Beta(r + 2a, s + 2(1 − a))`. The check draws samples from that Beta
//!   distribution and compares the empirical mean with the opinion's
//!   expectation at three standard errors.
//! * **Evidence addition.** Consensus of two non-dogmatic opinions with equal
//!   base rates equals the opinion built from the sum of their evidence.
//!
//! Sampling is reproducible across platforms: every run uses a ChaCha8 stream
//! cipher generator (`rand_chacha::ChaCha8Rng`, seeded with
//! `seed_from_u64(seed)`, stream `k` for the `k`-th check of a suite) feeding
//! `rand_distr::Beta`, which implements Cheng's BB/BC rejection algorithms.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution};
use thiserror::Error;

use crate::fusion::{consensus, FusionError};
use crate::opinion::{EvidenceCount, Opinion, OpinionError};

pub const MIN_SAMPLES: u64 = 100_000;
/// Componentwise agreement required between the consensus and evidence routes.
pub const EVIDENCE_ROUTE_TOLERANCE: f64 = 1e-9;
/// Evidence fixtures `(r, s)` exercised by the suite, each at every base rate
/// in [`SUITE_BASE_RATES`].
pub const SUITE_EVIDENCE: [(f64, f64); 4] = [(0.0, 0.0), (2.0, 0.0), (8.0, 8.0), (50.0, 10.0)];
pub const SUITE_BASE_RATES: [f64; 2] = [0.3, 0.5];
pub const SUITE_RANDOM_PAIRS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("Beta({alpha}, {beta}) is degenerate: both shape parameters must be positive")]
    DegenerateDistribution { alpha: f64, beta: f64 },
    #[error("{0} samples requested, at least {MIN_SAMPLES} required")]
    TooFewSamples(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Opinion(#[from] OpinionError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
}

/// Outcome of one oracle comparison. `pass` holds exactly when
/// `|analytic − empirical| ≤ 3·standard_error`.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub quantity: String,
    pub analytic: f64,
    pub empirical: f64,
    pub samples: u64,
    pub standard_error: f64,
    pub pass: bool,
}

impl OracleReport {
    pub fn new(quantity: impl Into<String>, analytic: f64, empirical: f64, samples: u64, standard_error: f64) -> Self {
        let pass = (analytic - empirical).abs() <= 3.0 * standard_error;
        Self { quantity: quantity.into(), analytic, empirical, samples, standard_error, pass }
    }

    pub fn deviation(&self) -> f64 {
        (self.analytic - self.empirical).abs()
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<36} {:>12.9} {:>12.9} {:>9} {:>11.3e} {}",
            self.quantity,
            self.analytic,
            self.empirical,
            self.samples,
            self.standard_error,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

/// Renders reports as a plain-text table, one line per report.
pub fn format_table(reports: &[OracleReport]) -> String {
    let mut out = format!(
        "{:<36} {:>12} {:>12} {:>9} {:>11} {}\n",
        "quantity", "analytic", "empirical", "samples", "std_err", "result"
    );
    for r in reports {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    out.push_str(&format!("{passed}/{} passed\n", reports.len()));
    out
}

fn beta_params(evidence: EvidenceCount, base_rate: f64) -> (f64, f64) {
    (
        evidence.positive() + 2.0 * base_rate,
        evidence.negative() + 2.0 * (1.0 - base_rate),
    )
}

/// Compares an opinion's expectation with the empirical mean of the matching
/// Beta distribution.
pub fn beta_mean_check(
    evidence: EvidenceCount,
    base_rate: f64,
    samples: u64,
    rng: &mut impl Rng,
) -> Result<OracleReport, OracleError> {
    if samples < MIN_SAMPLES {
        return Err(OracleError::TooFewSamples(samples));
    }
    let opinion = Opinion::from_evidence("oracle", "x", evidence, base_rate)?;
    let (alpha, beta) = beta_params(evidence, base_rate);
    if alpha <= 0.0 || beta <= 0.0 {
        return Err(OracleError::DegenerateDistribution { alpha, beta });
    }
    let dist = Beta::new(alpha, beta).map_err(|_| OracleError::DegenerateDistribution { alpha, beta })?;

    // Welford's running mean and variance.
    let (mut mean, mut m2) = (0.0f64, 0.0f64);
    for k in 1..=samples {
        let x: f64 = dist.sample(rng);
        let delta = x - mean;
        mean += delta / k as f64;
        m2 += delta * (x - mean);
    }
    let variance = m2 / (samples - 1) as f64;
    let standard_error = (variance / samples as f64).sqrt();

    Ok(OracleReport::new(
        format!("E[Beta] r={} s={} a={}", evidence.positive(), evidence.negative(), base_rate),
        opinion.expectation(),
        mean,
        samples,
        standard_error,
    ))
}

/// [`beta_mean_check`] with a fresh generator seeded from `seed`.
pub fn beta_mean_check_seeded(
    evidence: EvidenceCount,
    base_rate: f64,
    samples: u64,
    seed: u64,
) -> Result<OracleReport, OracleError> {
    beta_mean_check(evidence, base_rate, samples, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn evidence_route(a: &Opinion, b: &Opinion) -> Result<(Opinion, Opinion), OracleError> {
    if a.is_dogmatic() || b.is_dogmatic() {
        return Err(OracleError::Precondition("both opinions must have u > 0".into()));
    }
    if a.base_rate() != b.base_rate() {
        return Err(OracleError::Precondition("opinions must share a base rate".into()));
    }
    let fused = consensus(a, b)?;
    let summed = a.to_evidence()? + b.to_evidence()?;
    let via_evidence = Opinion::from_evidence("oracle", a.proposition(), summed, a.base_rate())?;
    Ok((fused, via_evidence))
}

/// Largest componentwise gap between the two routes as `(operator, evidence)`.
fn worst_component(fused: &Opinion, via_evidence: &Opinion) -> (f64, f64) {
    let (x, y) = (fused.components(), via_evidence.components());
    [(x.0, y.0), (x.1, y.1), (x.2, y.2)]
        .into_iter()
        .max_by(|p, q| (p.0 - p.1).abs().total_cmp(&(q.0 - q.1).abs()))
        .expect("three components")
}

/// Compares consensus against the evidence-addition route for one pair.
/// The report shows the component where the routes differ most.
pub fn consensus_evidence_check(a: &Opinion, b: &Opinion) -> Result<OracleReport, OracleError> {
    let (fused, via_evidence) = evidence_route(a, b)?;
    let (analytic, empirical) = worst_component(&fused, &via_evidence);
    Ok(OracleReport::new(
        format!(
            "consensus≡Σevidence ({:.3},{:.3},{:.3})⊕({:.3},{:.3},{:.3})",
            a.belief(),
            a.disbelief(),
            a.uncertainty(),
            b.belief(),
            b.disbelief(),
            b.uncertainty()
        ),
        analytic,
        empirical,
        1,
        EVIDENCE_ROUTE_TOLERANCE / 3.0,
    ))
}

/// A uniformly distributed point of the opinion simplex with `u > 0`.
pub fn random_opinion(rng: &mut impl Rng, owner: &str, base_rate: f64) -> Opinion {
    loop {
        let (x, y): (f64, f64) = (rng.random(), rng.random());
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        let (b, d, u) = (lo, hi - lo, 1.0 - hi);
        if u > 0.0 {
            return Opinion::new(owner, "x", b, d, u, base_rate).expect("simplex point");
        }
    }
}

/// Runs the evidence-route comparison over `pairs` random non-dogmatic pairs
/// sharing a random base rate, reporting the worst pair.
pub fn consensus_evidence_sweep(pairs: usize, rng: &mut impl Rng) -> Result<OracleReport, OracleError> {
    let mut worst: Option<(f64, f64)> = None;
    for _ in 0..pairs {
        let base_rate: f64 = rng.random();
        let a = random_opinion(rng, "A", base_rate);
        let b = random_opinion(rng, "B", base_rate);
        let (fused, via_evidence) = evidence_route(&a, &b)?;
        let candidate = worst_component(&fused, &via_evidence);
        if worst.is_none_or(|w| (candidate.0 - candidate.1).abs() > (w.0 - w.1).abs()) {
            worst = Some(candidate);
        }
    }
    let (analytic, empirical) = worst.unwrap_or((0.0, 0.0));
    Ok(OracleReport::new(
        format!("consensus≡Σevidence, {pairs} random pairs"),
        analytic,
        empirical,
        pairs as u64,
        EVIDENCE_ROUTE_TOLERANCE / 3.0,
    ))
}

/// The full oracle suite: Beta-mean checks over the evidence fixtures and
/// base rates, fixed consensus pairs, and a random consensus sweep.
pub fn run_suite(seed: u64, samples: u64) -> Result<Vec<OracleReport>, OracleError> {
    if samples < MIN_SAMPLES {
        return Err(OracleError::TooFewSamples(samples));
    }
    let mut reports = Vec::new();
    let mut stream = 0u64;
    let mut next_rng = || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        stream += 1;
        rng
    };
    for &(r, s) in &SUITE_EVIDENCE {
        for &a in &SUITE_BASE_RATES {
            reports.push(beta_mean_check(EvidenceCount::new(r, s)?, a, samples, &mut next_rng())?);
        }
    }

    let opposed = (
        Opinion::new("A", "x", 0.8, 0.0, 0.2, 0.5)?,
        Opinion::new("B", "x", 0.0, 0.8, 0.2, 0.5)?,
    );
    reports.push(consensus_evidence_check(&opposed.0, &opposed.1)?);
    let vacuous = Opinion::vacuous("A", "x", 0.5)?;
    reports.push(consensus_evidence_check(&vacuous, &vacuous.with_owner("B"))?);
    reports.push(consensus_evidence_sweep(SUITE_RANDOM_PAIRS, &mut next_rng())?);
    Ok(reports)
}
