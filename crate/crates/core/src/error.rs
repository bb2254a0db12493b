use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A physical or numerical parameter is outside its allowed range.
    InvalidParameter { name: &'static str, reason: String },
    /// A mode index outside `1..=N` (or `1..=M` for Fock modes).
    InvalidMode { index: usize, max: usize },
    /// A position outside `[0, L]`.
    OutOfWell { x: f64, width: f64 },
    DimensionMismatch { left: usize, right: usize },
    /// The interior block is larger than the truncation allows.
    BlockTooLarge { max_index: usize, dim: usize },
    /// Too few modes to represent a requested wave packet.
    InsufficientModes { captured: f64, required: f64 },
    /// A Richardson sequence whose successive estimates drift apart.
    NonConvergent { last_change: f64, previous_change: f64 },
    /// A variance more negative than rounding can explain.
    NegativeVariance(f64),
    /// A reported quantity broke an invariant it must satisfy.
    InvariantViolation(String),
    /// The adaptive integrator ran out of subdivisions.
    Quadrature { error_estimate: f64 },
    /// The requested Fock space exceeds the desk-scale bounds.
    FockTooLarge { reason: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { name, reason } => write!(f, "invalid {name}: {reason}"),
            Error::InvalidMode { index, max } => {
                write!(f, "mode index {index} outside 1..={max}")
            }
            Error::OutOfWell { x, width } => write!(f, "position {x} outside [0, {width}]"),
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::BlockTooLarge { max_index, dim } => write!(
                f,
                "interior block {max_index} too large for dimension {dim} (need 4*block <= N)"
            ),
            Error::InsufficientModes { captured, required } => write!(
                f,
                "truncation captures {captured:.6} of the packet norm, need {required}"
            ),
            Error::NonConvergent {
                last_change,
                previous_change,
            } => write!(
                f,
                "derivative estimates diverge: change {last_change:e} after {previous_change:e}"
            ),
            Error::NegativeVariance(v) => write!(f, "negative variance {v:e}"),
            Error::InvariantViolation(msg) => write!(f, "invariant violated: {msg}"),
            Error::Quadrature { error_estimate } => write!(
                f,
                "adaptive quadrature did not converge (error estimate {error_estimate:e})"
            ),
            Error::FockTooLarge { reason } => write!(f, "Fock space too large: {reason}"),
        }
    }
}

impl core::error::Error for Error {}
