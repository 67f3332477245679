//! Consensus (⊕) and recommendation (⊗) operators.

use thiserror::Error;

use crate::opinion::{Opinion, Provenance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FusionError {
    /// Both operands have zero uncertainty, so `κ = u^A + u^B − u^A·u^B = 0`.
    #[error("consensus undefined: both opinions are dogmatic (u = 0), so kappa = 0")]
    BothDogmatic,
    #[error("consensus requires a shared proposition, got `{left}` and `{right}`")]
    PropositionMismatch { left: String, right: String },
    #[error("trust opinion is about `{trusted}` but the recommendation comes from `{recommender}`")]
    RecommenderMismatch { trusted: String, recommender: String },
}

/// Owner label of a fused opinion. Composite operands are parenthesised so
/// nested fusions stay unambiguous.
fn compose_owner(left: &str, sep: char, right: &str) -> String {
    let wrap = |s: &str| {
        if s.contains([',', ';']) {
            format!("({s})")
        } else {
            s.to_string()
        }
    };
    format!("{}{sep}{}", wrap(left), wrap(right))
}

/// Consensus of two opinions held by independent observers about the same
/// proposition.
///
/// With `κ = u^A + u^B − u^A·u^B`:
///
/// ```text
/// b = (b^A·u^B + b^B·u^A) / κ
/// d = (d^A·u^B + d^B·u^A) / κ
/// u = u^A·u^B / κ
/// a = (a^B·u^A + a^A·u^B − (a^A + a^B)·u^A·u^B) / (u^A + u^B − 2·u^A·u^B)
/// ```
///
/// When both operands are vacuous the base-rate denominator vanishes and the
/// base rates are averaged instead.
pub fn consensus(a: &Opinion, b: &Opinion) -> Result<Opinion, FusionError> {
    if a.proposition() != b.proposition() {
        return Err(FusionError::PropositionMismatch {
            left: a.proposition().to_string(),
            right: b.proposition().to_string(),
        });
    }
    let (ba, da, ua, aa) = a.components();
    let (bb, db, ub, ab) = b.components();

    let kappa = ua + ub - ua * ub;
    if kappa == 0.0 {
        return Err(FusionError::BothDogmatic);
    }

    let belief = (ba * ub + bb * ua) / kappa;
    let disbelief = (da * ub + db * ua) / kappa;
    let uncertainty = (ua * ub) / kappa;
    let base_rate = if ua == 1.0 && ub == 1.0 {
        (aa + ab) / 2.0
    } else {
        (ab * ua + aa * ub - (aa + ab) * ua * ub) / (ua + ub - 2.0 * ua * ub)
    };

    Ok(Opinion::derived(
        compose_owner(a.owner(), ',', b.owner()),
        a.proposition().to_string(),
        (belief, disbelief, uncertainty, base_rate),
        Provenance::Consensus,
    ))
}

/// Recommendation (discounting): `trust` is A's opinion about recommender B,
/// `rec` is the opinion B passes on about the proposition.
///
/// ```text
/// b = b^A_B·b^B    d = b^A_B·d^B    u = d^A_B + u^A_B + b^A_B·u^B    a = a^B
/// ```
///
/// The trust opinion's proposition must name the recommender, i.e. equal
/// `rec.owner()`.
pub fn recommend(trust: &Opinion, rec: &Opinion) -> Result<Opinion, FusionError> {
    if trust.proposition() != rec.owner() {
        return Err(FusionError::RecommenderMismatch {
            trusted: trust.proposition().to_string(),
            recommender: rec.owner().to_string(),
        });
    }
    let (bt, dt, ut, _) = trust.components();
    let (br, dr, ur, ar) = rec.components();

    let belief = bt * br;
    let disbelief = bt * dr;
    let uncertainty = dt + ut + bt * ur;

    Ok(Opinion::derived(
        compose_owner(trust.owner(), ';', rec.owner()),
        rec.proposition().to_string(),
        (belief, disbelief, uncertainty, ar),
        Provenance::Recommended,
    ))
}
