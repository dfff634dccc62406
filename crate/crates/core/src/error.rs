use thiserror::Error;

use crate::graph::Violation;

/// Errors produced by parsing, solving and sampling operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A graph or matching file could not be parsed. `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Two matchings of different sizes were compared.
    #[error("matching size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    /// An operation was given a matching that is not a valid perfect
    /// matching of the graph.
    #[error("invalid matching: {}", format_violations(.violations))]
    InvalidMatching { violations: Vec<Violation> },

    /// The graph admits no perfect matching but the operation requires one.
    #[error("graph has no perfect matching")]
    Infeasible,

    /// A distance threshold outside `[0, n]`.
    #[error("distance threshold {d} out of range [0, {n}]")]
    DistanceOutOfRange { d: usize, n: usize },

    /// Enumeration found more solutions than the caller allowed.
    #[error("enumeration exceeded the limit of {limit} matchings")]
    EnumerationOverLimit { limit: usize },

    /// The sampler ran out of its step budget before collecting enough samples.
    #[error(
        "sampler collected {collected} of {requested} samples within the budget of {budget} steps"
    )]
    SampleBudgetExhausted {
        collected: usize,
        requested: usize,
        budget: u64,
    },

    /// An operation requiring pool members was given an empty pool.
    #[error("pool is empty")]
    EmptyPool,

    /// Diverse pool construction needs at least two slots.
    #[error("pool size k = {k} is too small; need k >= 2")]
    PoolSizeTooSmall { k: usize },

    /// Exact marginals require a complete enumeration.
    #[error("enumeration is incomplete; exact marginals unavailable")]
    IncompleteEnumeration,

    /// Empirical marginals require at least one sample.
    #[error("sample list is empty")]
    EmptySampleList,

    /// Samples over graphs of different sizes were mixed.
    #[error("mixed sample sizes: expected n = {expected}, found n = {found}")]
    MixedSampleSizes { expected: usize, found: usize },

    /// A matching file disagrees with the graph it is used against.
    #[error("matching is for n = {got} but the graph has n = {expected}")]
    MatchingSizeMismatch { expected: usize, got: usize },
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(Violation::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
