use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by the walk, discrimination, and sampling layers.
#[derive(Debug, Error)]
pub enum Error {
    /// A user-supplied coin matrix failed the unitarity check.
    #[error("coin at x = {x} is not unitary (max |C\u{2020}C - 1| entry = {deviation:.2e})")]
    NonUnitaryCoin { x: i64, deviation: f64 },

    /// A coin angle lies outside the closed interval [0, pi/4].
    #[error("coin angle {theta} rad at x = {x} is outside [0, pi/4]")]
    AngleOutOfRange { x: i64, theta: f64 },

    /// A protocol must contain at least one step.
    #[error("a protocol needs at least one step")]
    EmptyProtocol,

    /// Requested a conditional coin state at a position with no weight.
    #[error("no probability weight at position {0}")]
    ZeroWeight(i64),

    /// a|psi+> + b|psi-> has vanishing norm and cannot be normalized.
    #[error("superposition a = {a}, b = {b} has vanishing norm")]
    DegenerateSuperposition { a: f64, b: f64 },

    /// The overlap coefficient must satisfy 0 <= alpha < 1.
    #[error("alpha = {0} is outside [0, 1)")]
    AlphaOutOfRange(f64),

    /// phi must lie in (0, pi/2].
    #[error("phi = {0} rad is outside (0, pi/2]")]
    PhiOutOfRange(f64),

    /// Probability escaped the expected outcome positions; the protocol is broken.
    #[error("probability {leaked:.2e} leaked outside the outcome positions -1, 1, 3")]
    Leakage { leaked: f64 },

    /// A probability map is not a valid distribution.
    #[error("bad distribution: {0}")]
    BadDistribution(String),

    /// A protocol file could not be parsed; `line` is 1-based.
    #[error("protocol file line {line}: {message}")]
    ProtocolParse { line: usize, message: String },
}
