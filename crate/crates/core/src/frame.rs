//! Frames of discernment and belief-mass assignments over their powerset.
//!
//! Subsets of a frame are stored as bitmasks ([`StateSet`]), which caps frames
//! at [`MAX_STATES`] elementary states. Masses are kept sparsely: only subsets
//! with non-zero mass are stored.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::opinion::{Opinion, CONSTRUCTION_TOLERANCE};

pub const MAX_STATES: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),
    #[error("state `{0}` is not part of the frame")]
    UnknownState(String),
}

/// A subset of a frame's states, bit `i` standing for the `i`-th state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateSet(u16);

impl StateSet {
    pub const EMPTY: StateSet = StateSet(0);

    pub fn from_bits(bits: u16) -> Self {
        StateSet(bits)
    }

    pub fn singleton(index: usize) -> Self {
        StateSet(1 << index)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 & (1 << index) != 0
    }

    pub fn is_subset_of(self, other: StateSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint_from(self, other: StateSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }
}

/// A proposition with its exhaustive, mutually exclusive elementary states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    proposition: String,
    states: Vec<String>,
}

impl Frame {
    pub fn new<S: Into<String>>(
        proposition: impl Into<String>,
        states: impl IntoIterator<Item = S>,
    ) -> Result<Self, FrameError> {
        let states: Vec<String> = states.into_iter().map(Into::into).collect();
        if states.is_empty() {
            return Err(FrameError::InvalidFrame("a frame needs at least one state".into()));
        }
        if states.len() > MAX_STATES {
            return Err(FrameError::InvalidFrame(format!(
                "{} states exceed the limit of {MAX_STATES}",
                states.len()
            )));
        }
        for (i, s) in states.iter().enumerate() {
            if s.is_empty() {
                return Err(FrameError::InvalidFrame("state identifiers must be non-empty".into()));
            }
            if states[..i].contains(s) {
                return Err(FrameError::InvalidFrame(format!("duplicate state `{s}`")));
            }
        }
        Ok(Self { proposition: proposition.into(), states })
    }

    /// Two-state frame `{need, not-need}` over a proposition.
    pub fn binary(proposition: impl Into<String>) -> Self {
        Self::new(proposition, ["need", "not-need"]).expect("two distinct states")
    }

    pub fn proposition(&self) -> &str {
        &self.proposition
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Θ itself.
    pub fn full_set(&self) -> StateSet {
        StateSet(((1u32 << self.states.len()) - 1) as u16)
    }

    pub fn index_of(&self, state: &str) -> Option<usize> {
        self.states.iter().position(|s| s == state)
    }

    pub fn subset<S: AsRef<str>>(&self, states: &[S]) -> Result<StateSet, FrameError> {
        let mut bits = 0u16;
        for s in states {
            let idx = self
                .index_of(s.as_ref())
                .ok_or_else(|| FrameError::UnknownState(s.as_ref().to_string()))?;
            bits |= 1 << idx;
        }
        Ok(StateSet(bits))
    }

    /// Default base rate of a single state: uniform over the frame.
    pub fn uniform_base_rate(&self) -> f64 {
        1.0 / self.states.len() as f64
    }
}

/// Belief masses over non-empty subsets of a frame, summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct MassAssignment {
    frame: Frame,
    masses: BTreeMap<StateSet, f64>,
}

impl MassAssignment {
    /// Validates and stores a mass assignment. Subsets not mentioned carry
    /// zero mass. The empty set may not receive mass, masses may not be
    /// negative, and the total must be one within tolerance.
    pub fn new(
        frame: Frame,
        masses: impl IntoIterator<Item = (StateSet, f64)>,
    ) -> Result<Self, FrameError> {
        let full = frame.full_set();
        let mut stored = BTreeMap::new();
        let mut total = 0.0;
        for (set, mass) in masses {
            if !mass.is_finite() || mass < 0.0 {
                return Err(FrameError::ConstraintViolation(format!(
                    "mass {mass} on subset {:#b} is not a non-negative real",
                    set.bits()
                )));
            }
            if set.is_empty() {
                if mass > 0.0 {
                    return Err(FrameError::ConstraintViolation(
                        "the empty set must carry zero mass".into(),
                    ));
                }
                continue;
            }
            if !set.is_subset_of(full) {
                return Err(FrameError::ConstraintViolation(format!(
                    "subset {:#b} references states outside the frame",
                    set.bits()
                )));
            }
            if stored.contains_key(&set) {
                return Err(FrameError::ConstraintViolation(format!(
                    "subset {:#b} assigned twice",
                    set.bits()
                )));
            }
            total += mass;
            if mass > 0.0 {
                stored.insert(set, mass);
            }
        }
        if (total - 1.0).abs() > CONSTRUCTION_TOLERANCE {
            return Err(FrameError::ConstraintViolation(format!(
                "masses sum to {total}, expected 1"
            )));
        }
        Ok(Self { frame, masses: stored })
    }

    /// Convenience constructor taking subsets by state name.
    pub fn from_named<S: AsRef<str>>(
        frame: Frame,
        masses: &[(&[S], f64)],
    ) -> Result<Self, FrameError> {
        let sets = masses
            .iter()
            .map(|(states, m)| Ok((frame.subset(states)?, *m)))
            .collect::<Result<Vec<_>, FrameError>>()?;
        Self::new(frame, sets)
    }

    /// All mass on Θ.
    pub fn vacuous(frame: Frame) -> Self {
        let full = frame.full_set();
        Self { frame, masses: BTreeMap::from([(full, 1.0)]) }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn mass(&self, set: StateSet) -> f64 {
        self.masses.get(&set).copied().unwrap_or(0.0)
    }

    /// Non-zero masses in subset order.
    pub fn iter(&self) -> impl Iterator<Item = (StateSet, f64)> + '_ {
        self.masses.iter().map(|(s, m)| (*s, *m))
    }

    /// Coarsens the assignment to a binary opinion about one state.
    ///
    /// Belief collects the mass of subsets contained in `{state}`, disbelief
    /// the mass of subsets disjoint from it; the remainder is uncertainty.
    /// The base rate is uniform over the frame.
    pub fn focus_opinion(&self, state: &str, owner: impl Into<String>) -> Result<Opinion, FrameError> {
        let idx = self
            .frame
            .index_of(state)
            .ok_or_else(|| FrameError::UnknownState(state.to_string()))?;
        let target = StateSet::singleton(idx);
        let mut belief = 0.0;
        let mut disbelief = 0.0;
        for (set, mass) in self.iter() {
            if set.is_subset_of(target) {
                belief += mass;
            } else if set.is_disjoint_from(target) {
                disbelief += mass;
            }
        }
        let uncertainty = (1.0 - belief - disbelief).max(0.0);
        Opinion::new(
            owner,
            format!("{}#{}", self.frame.proposition, state),
            belief,
            disbelief,
            uncertainty,
            self.frame.uniform_base_rate(),
        )
        .map_err(|e| FrameError::ConstraintViolation(e.to_string()))
    }
}
