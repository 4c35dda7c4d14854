use crate::numeric::Int;
use thiserror::Error;

/// Errors shared across the library.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero vector has no primitive form")]
    ZeroVector,

    #[error("matrix rows are linearly dependent")]
    RankDeficient,

    #[error("rows do not generate a primitive sublattice; witness lattice point {witness:?}")]
    NotPrimitive { witness: Vec<Int> },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operation requires a nonempty polyhedron")]
    EmptyPolyhedron,

    #[error("objective is not bounded above by 0 on the cone")]
    InvalidObjective,

    #[error("input polyhedron must be bounded")]
    UnboundedInput,

    #[error("direction {direction:?} has unbounded {side} on the polyhedron")]
    UnboundedDirectionRange { direction: Vec<Int>, side: Side },

    #[error("big-M value is unbounded; upstream invariant violated")]
    UnboundedBigM,

    #[error("facet inequality already holds on the polyhedron")]
    AlreadyValid,

    #[error("inequality is not valid on the recession cone")]
    InvalidFacet,

    #[error("trace has not stabilized within the run")]
    NotStabilized,

    #[error("integral-point recovery system has no solution")]
    NoSolution,

    #[error("recovered point lies outside the polyhedron")]
    PointNotInQ,

    #[error("iteration cap of {cap} exceeded")]
    CapExceeded { cap: usize },

    #[error("integer hull facet has a non-integral offset (internal bug)")]
    NonIntegralOffset,

    #[error("claim-2 potential decrease violated on a trace (internal bug)")]
    Claim2Violation,

    #[error("final closure iterate does not equal the integer hull: {0}")]
    Unverified(String),
}

/// Which end of an LP range was infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Min,
    Max,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Min => write!(f, "minimum"),
            Side::Max => write!(f, "maximum"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
