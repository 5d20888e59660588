//! Hesitant fuzzy linguistic term set (HFLTS) decision engine.
//!
//! The pipeline turns qualitative assessments into a role choice:
//!
//! 1. [`standardize`] raw criterion values into `[0, 1]` against a population,
//! 2. map values onto a seven-term linguistic scale ([`value_to_terms`]),
//! 3. build [`GrammarExpression`]s ("greater than h", "between l and vh", ...),
//! 4. transform each expression into a consecutive term run ([`Hflts`]),
//! 5. take term envelopes ([`TermInterval`]) and their 1-cut numeric intervals,
//! 6. aggregate the per-criterion intervals per alternative
//!    ([`aggregate_intervals`]) and score them with [`possibility_rank`],
//! 7. pick the best alternative ([`DecisionEngine::decide`]).
//!
//! The engine is deterministic: ties are broken by alternative order
//! (cluster head, then cluster member, then relay).

mod decision;
mod expression;
mod interval;
mod matrix;
mod term;

pub use decision::{
    evaluate_status, min_max_scale, standardize, CriteriaBounds, CriteriaVector, CriteriaWeights,
    Decision, DecisionEngine, Status, StatusThresholds, WeightMode, CRITERIA_COUNT, CRITERIA_NAMES,
};
pub use expression::{Alternative, GrammarExpression, ALTERNATIVES};
pub use interval::{aggregate_intervals, possibility_rank, AggregationMode, NumericInterval};
pub use matrix::{EnvelopeMatrix, ExpressionMatrix, HfltsMatrix, SlotKind};
pub use term::{value_to_terms, Hflts, LinguisticTerm, TermInterval, TERM_COUNT};

use thiserror::Error;

/// Errors produced by the decision engine.
#[derive(Debug, Error, PartialEq)]
pub enum HfltsError {
    /// Term index outside the seven-term scale.
    #[error("linguistic term index {0} outside 1..=7")]
    BadTermIndex(u8),
    /// Unknown term label while parsing.
    #[error("unknown linguistic term label {0:?}")]
    BadTermLabel(String),
    /// A strict comparative expression anchored at the scale boundary
    /// produces an empty term set.
    #[error("expression {0:?} transforms to an empty term set")]
    EmptyTransform(String),
    /// A `between` expression with reversed anchors.
    #[error("between anchors out of order: {0} > {1}")]
    ReversedAnchors(String, String),
    /// Value outside the unit interval.
    #[error("value {0} outside [0, 1]")]
    ValueOutOfRange(f64),
    /// Numeric interval with lower bound above upper bound.
    #[error("interval lower bound {0} above upper bound {1}")]
    ReversedInterval(f64, f64),
    /// Criteria weights that do not form a distribution.
    #[error("criteria weights must be nonnegative and sum to 1, got sum {0}")]
    BadWeights(f64),
    /// Malformed expression matrix text.
    #[error("matrix parse error at line {line}: {message}")]
    MatrixParse { line: usize, message: String },
}
