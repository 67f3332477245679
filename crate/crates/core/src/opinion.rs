//! Binomial opinions and the evidence mapping.
//!
//! An [`Opinion`] is the quadruple `(belief, disbelief, uncertainty, base_rate)`
//! held by an observer about a proposition. Belief, disbelief and uncertainty
//! always sum to one. Opinions are built either directly from their components
//! or from positive/negative evidence tallies ([`EvidenceCount`]), which map
//! onto opinions as
//!
//! ```text
//! b = r / (r + s + 2)    d = s / (r + s + 2)    u = 2 / (r + s + 2)
//! ```
//!
//! The inverse (`r = 2b/u`, `s = 2d/u`) is defined for every opinion with
//! non-zero uncertainty.

use std::fmt;
use std::ops::Add;

use thiserror::Error;

/// Accepted drift on component bounds and on `b + d + u = 1` at construction.
pub const CONSTRUCTION_TOLERANCE: f64 = 1e-9;

/// Weight of the non-informative prior in the evidence mapping.
const PRIOR_WEIGHT: f64 = 2.0;

/// Errors raised while building opinions or evidence tallies.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OpinionError {
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),
    #[error("dogmatic opinion (uncertainty = 0) has no finite evidence representation")]
    DogmaticOpinion,
    #[error("invalid evidence: {0}")]
    InvalidEvidence(String),
}

/// How an opinion came into being.
///
/// Carried as metadata only; no operator inspects it. A recommended opinion is
/// what the recommender passes on, which need not be its own first-hand view.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Provenance {
    #[default]
    FirstHand,
    Consensus,
    Recommended,
}

/// Positive (`r`) and negative (`s`) evidence about a proposition.
///
/// Tallies are reals so that extractors may weight observations.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EvidenceCount {
    positive: f64,
    negative: f64,
}

impl EvidenceCount {
    pub fn new(positive: f64, negative: f64) -> Result<Self, OpinionError> {
        for (name, v) in [("positive", positive), ("negative", negative)] {
            if !v.is_finite() || v < 0.0 {
                return Err(OpinionError::InvalidEvidence(format!(
                    "{name} evidence must be a finite non-negative real, got {v}"
                )));
            }
        }
        Ok(Self { positive, negative })
    }

    pub const fn zero() -> Self {
        Self { positive: 0.0, negative: 0.0 }
    }

    pub fn positive(&self) -> f64 {
        self.positive
    }

    pub fn negative(&self) -> f64 {
        self.negative
    }

    pub fn total(&self) -> f64 {
        self.positive + self.negative
    }
}

impl Add for EvidenceCount {
    type Output = EvidenceCount;

    fn add(self, rhs: Self) -> Self::Output {
        EvidenceCount {
            positive: self.positive + rhs.positive,
            negative: self.negative + rhs.negative,
        }
    }
}

/// An observer's opinion `ω^owner_proposition = (b, d, u, a)`.
///
/// Values are immutable once built. `owner` and `proposition` are identifiers
/// that never enter the arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct Opinion {
    owner: String,
    proposition: String,
    belief: f64,
    disbelief: f64,
    uncertainty: f64,
    base_rate: f64,
    provenance: Provenance,
}

impl Opinion {
    /// Builds an opinion from its components.
    ///
    /// Components may drift outside `[0, 1]`, and `b + d + u` away from one,
    /// by at most [`CONSTRUCTION_TOLERANCE`]; such inputs are clamped and
    /// renormalized. Anything further off is rejected.
    pub fn new(
        owner: impl Into<String>,
        proposition: impl Into<String>,
        belief: f64,
        disbelief: f64,
        uncertainty: f64,
        base_rate: f64,
    ) -> Result<Self, OpinionError> {
        let (b, d, u, a) = validate_components(belief, disbelief, uncertainty, base_rate)?;
        Ok(Self {
            owner: owner.into(),
            proposition: proposition.into(),
            belief: b,
            disbelief: d,
            uncertainty: u,
            base_rate: a,
            provenance: Provenance::FirstHand,
        })
    }

    /// The vacuous opinion `(0, 0, 1, a)`: nothing is known.
    pub fn vacuous(
        owner: impl Into<String>,
        proposition: impl Into<String>,
        base_rate: f64,
    ) -> Result<Self, OpinionError> {
        Self::new(owner, proposition, 0.0, 0.0, 1.0, base_rate)
    }

    /// Maps evidence onto an opinion. `b + d + u` evaluates to exactly `1.0`.
    pub fn from_evidence(
        owner: impl Into<String>,
        proposition: impl Into<String>,
        evidence: EvidenceCount,
        base_rate: f64,
    ) -> Result<Self, OpinionError> {
        check_unit("base_rate", base_rate)?;
        let total = evidence.positive + evidence.negative + PRIOR_WEIGHT;
        let (b, d, u) = snap_unit_sum(
            evidence.positive / total,
            evidence.negative / total,
            PRIOR_WEIGHT / total,
        );
        Ok(Self {
            owner: owner.into(),
            proposition: proposition.into(),
            belief: b,
            disbelief: d,
            uncertainty: u,
            base_rate: base_rate.clamp(0.0, 1.0),
            provenance: Provenance::FirstHand,
        })
    }

    /// Recovers the evidence behind this opinion.
    ///
    /// Precision degrades as uncertainty approaches zero: the tallies grow as
    /// `1/u` and inherit the relative rounding error of `u`.
    pub fn to_evidence(&self) -> Result<EvidenceCount, OpinionError> {
        if self.uncertainty <= 0.0 {
            return Err(OpinionError::DogmaticOpinion);
        }
        EvidenceCount::new(
            PRIOR_WEIGHT * self.belief / self.uncertainty,
            PRIOR_WEIGHT * self.disbelief / self.uncertainty,
        )
    }

    /// Probability expectation `E = b + a·u`.
    pub fn expectation(&self) -> f64 {
        (self.belief + self.base_rate * self.uncertainty).clamp(0.0, 1.0)
    }

    pub fn owner(&self) -> &str {
        &self.owner
    }

    pub fn proposition(&self) -> &str {
        &self.proposition
    }

    pub fn belief(&self) -> f64 {
        self.belief
    }

    pub fn disbelief(&self) -> f64 {
        self.disbelief
    }

    pub fn uncertainty(&self) -> f64 {
        self.uncertainty
    }

    pub fn base_rate(&self) -> f64 {
        self.base_rate
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// `(b, d, u, a)` as a tuple.
    pub fn components(&self) -> (f64, f64, f64, f64) {
        (self.belief, self.disbelief, self.uncertainty, self.base_rate)
    }

    pub fn is_dogmatic(&self) -> bool {
        self.uncertainty == 0.0
    }

    pub fn is_vacuous(&self) -> bool {
        self.uncertainty == 1.0
    }

    /// Same components, different owner.
    pub fn with_owner(&self, owner: impl Into<String>) -> Self {
        Self { owner: owner.into(), ..self.clone() }
    }

    /// Same components, different proposition.
    pub fn with_proposition(&self, proposition: impl Into<String>) -> Self {
        Self { proposition: proposition.into(), ..self.clone() }
    }

    /// Assembles an operator result. Components come from closed-form
    /// expressions whose exact values already satisfy the invariants, so only
    /// rounding is corrected.
    pub(crate) fn derived(
        owner: String,
        proposition: String,
        (b, d, u, a): (f64, f64, f64, f64),
        provenance: Provenance,
    ) -> Self {
        let (b, d, u) = snap_unit_sum(b.clamp(0.0, 1.0), d.clamp(0.0, 1.0), u.clamp(0.0, 1.0));
        Self {
            owner,
            proposition,
            belief: b,
            disbelief: d,
            uncertainty: u,
            base_rate: a.clamp(0.0, 1.0),
            provenance,
        }
    }
}

impl fmt::Display for Opinion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ω[{}→{}](b={}, d={}, u={}, a={})",
            self.owner, self.proposition, self.belief, self.disbelief, self.uncertainty, self.base_rate
        )
    }
}

fn check_unit(name: &str, v: f64) -> Result<(), OpinionError> {
    if !v.is_finite() {
        return Err(OpinionError::ConstraintViolation(format!("{name} is not finite ({v})")));
    }
    if !(-CONSTRUCTION_TOLERANCE..=1.0 + CONSTRUCTION_TOLERANCE).contains(&v) {
        return Err(OpinionError::ConstraintViolation(format!(
            "{name} = {v} lies outside [0, 1]"
        )));
    }
    Ok(())
}

fn validate_components(
    b: f64,
    d: f64,
    u: f64,
    a: f64,
) -> Result<(f64, f64, f64, f64), OpinionError> {
    check_unit("belief", b)?;
    check_unit("disbelief", d)?;
    check_unit("uncertainty", u)?;
    check_unit("base_rate", a)?;
    let (b, d, u) = (b.clamp(0.0, 1.0), d.clamp(0.0, 1.0), u.clamp(0.0, 1.0));
    let sum = b + d + u;
    if (sum - 1.0).abs() > CONSTRUCTION_TOLERANCE {
        return Err(OpinionError::ConstraintViolation(format!(
            "belief + disbelief + uncertainty = {sum}, expected 1"
        )));
    }
    let (b, d, u) = snap_unit_sum(b / sum, d / sum, u / sum);
    Ok((b, d, u, a.clamp(0.0, 1.0)))
}

/// Adjusts one nonzero component by a few ulps so that `(b + d) + u`
/// evaluates to exactly `1.0`. Inputs must already sum to one within rounding.
///
/// Stepping the largest component is not always enough: `b + d` moves in
/// steps of its own ulp and the low bits of `u` can carry the sum past `1.0`.
/// So each component is retargeted at the residual `1 - others` and searched
/// from there, smallest nonzero component first. Zeros are never touched, so
/// dogmatic and vacuous opinions keep their exact shape.
fn snap_unit_sum(b: f64, d: f64, u: f64) -> (f64, f64, f64) {
    let sums_to_one = |c: [f64; 3]| (c[0] + c[1]) + c[2] == 1.0;
    let c = [b, d, u];
    if sums_to_one(c) {
        return (b, d, u);
    }
    let mut order = [0, 1, 2];
    order.sort_by(|&i, &j| c[i].total_cmp(&c[j]));
    for i in order.into_iter().filter(|&i| c[i] > 0.0) {
        let others: f64 = (0..3).filter(|&j| j != i).map(|j| c[j]).sum();
        let residual = 1.0 - others;
        for start in [residual, c[i]] {
            let mut up = start;
            let mut down = start;
            for _ in 0..=8 {
                for v in [up, down] {
                    if v > 0.0 && v <= 1.0 && (v - c[i]).abs() <= 1e-12 {
                        let mut trial = c;
                        trial[i] = v;
                        if sums_to_one(trial) {
                            return (trial[0], trial[1], trial[2]);
                        }
                    }
                }
                up = up.next_up();
                down = down.next_down();
            }
        }
    }
    (b, d, u)
}
