//! Subjective Logic opinions for multi-representation information needs.
//!
//! Each textual representation of an information need (what the user looks
//! for, why, their background, the ideal answer, the keywords) is treated as
//! an observer holding an uncertain opinion about the need. Opinions come from
//! evidence counts and are combined by scenario-specific fusion plans built
//! from two operators:
//!
//! * [`consensus`] for independent representations, which pools their
//!   evidence and reduces uncertainty;
//! * [`recommend`] for dependent representations, where one discounts the
//!   other.
//!
//! ```
//! use polyrep::{consensus, EvidenceCount, Opinion};
//!
//! let keywords = Opinion::from_evidence("rep5", "need", EvidenceCount::new(3.0, 1.0)?, 0.5)?;
//! let query = Opinion::from_evidence("rep1", "need", EvidenceCount::new(6.0, 0.0)?, 0.5)?;
//! let fused = consensus(&keywords, &query)?;
//! assert!(fused.uncertainty() < keywords.uncertainty().min(query.uncertainty()));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! See the crate's `examples/` directory for one runnable program per
//! capability, and the `polyrep` binary for the command-line interface.

pub mod cli;
pub mod frame;
pub mod fusion;
pub mod opinion;
pub mod oracle;
pub mod plan;
pub mod polyrep;

pub use frame::{Frame, FrameError, MassAssignment, StateSet};
pub use fusion::{consensus, recommend, FusionError};
pub use opinion::{EvidenceCount, Opinion, OpinionError, Provenance};
pub use oracle::{OracleError, OracleReport};
pub use plan::{evaluate_plan, parse_plan, Evaluation, Plan, PlanContext, PlanExpr, PlanNode, ScenarioSet};
pub use polyrep::{
    extract_evidence, parse_topic, parse_topics, representation_opinion, EvidenceExtractor, ExtractorConfig,
    LexicalExtractor, RepIndex, Topic,
};
