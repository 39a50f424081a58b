use thiserror::Error;

use crate::setsystem::EventSet;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set size {0} outside the supported range 1..=16")]
    GroundSize(usize),

    #[error("event {mask:#b} is not a subset of a ground set with {n} atoms")]
    InvalidEvent { mask: u32, n: usize },

    #[error("atom index {index} outside 1..={n}")]
    InvalidAtom { index: usize, n: usize },

    #[error("event {0:?} is not a member of the set system")]
    Membership(EventSet),

    #[error("event {0:?} is a member of the set system, expected a non-member")]
    UnexpectedMember(EventSet),

    #[error("set system is not a pre-Dynkin system")]
    NotPreDynkin,

    #[error("operands live on different ground sets ({0} vs {1} atoms)")]
    GroundMismatch(usize, usize),

    #[error("set system #{0} is not a π-system")]
    PiSystem(usize),

    #[error("size limit exceeded: {0}")]
    SizeLimitExceeded(String),

    #[error("probability is not extendable to the power set")]
    NotExtendable,

    #[error("conditioning error: {0}")]
    Conditioning(String),

    #[error("anchor point is not feasible for the polytope")]
    InfeasibleAnchor,

    #[error("polytope is empty")]
    EmptyPolytope,

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid distortion function: {0}")]
    InvalidDistortion(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("basis gambles are linearly dependent")]
    LinearDependence,
}
