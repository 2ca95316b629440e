use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two shapes that must agree do not.
    ShapeMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    DimensionOutOfRange {
        dim: usize,
        max: usize,
    },
    /// A face of a listed simplex is not itself listed.
    MissingFace {
        simplex: Vec<usize>,
        face: Vec<usize>,
    },
    InvalidSimplex {
        simplex: Vec<usize>,
        reason: &'static str,
    },
    DuplicateSimplex(Vec<usize>),
    BoundaryNotZero {
        k: usize,
    },
    NonIntegerEntry {
        row: usize,
        col: usize,
    },
    NotACycle,
    NotNullHomologous,
    ZeroGamma,
    NegativeCapacity {
        index: usize,
    },
    InvalidBounds {
        var: usize,
    },
    InfeasibleFlow(String),
    ZeroStep,
    GuardExceeded {
        limit: usize,
        found: usize,
    },
    IterationCap {
        cap: usize,
        value: String,
    },
    VoidBoundaryNotCycle {
        void: usize,
    },
    VoidIndexOutOfRange {
        simplex: usize,
        void: usize,
    },
    GammaSplitNotPartition,
    Gamma1Boundary,
    Gamma2Boundary,
    Unreachable(&'static str),
    EmptySubset {
        index: usize,
    },
    InvalidParameter(String),
    GiveUp(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Error::*;
        match self {
            ShapeMismatch {
                what,
                expected,
                found,
            } => {
                write!(
                    f,
                    "shape mismatch in {what}: expected {expected}, found {found}"
                )
            }
            DimensionOutOfRange { dim, max } => {
                write!(f, "dimension {dim} out of range (max {max})")
            }
            MissingFace { simplex, face } => {
                write!(
                    f,
                    "complex not closed: face {face:?} of {simplex:?} is missing"
                )
            }
            InvalidSimplex { simplex, reason } => {
                write!(f, "invalid simplex {simplex:?}: {reason}")
            }
            DuplicateSimplex(s) => write!(f, "duplicate simplex {s:?}"),
            BoundaryNotZero { k } => write!(f, "boundary of boundary is nonzero at dimension {k}"),
            NonIntegerEntry { row, col } => write!(f, "non-integer entry at ({row}, {col})"),
            NotACycle => write!(f, "gamma is not a cycle"),
            NotNullHomologous => write!(f, "gamma is not null-homologous"),
            ZeroGamma => write!(f, "gamma is the zero chain"),
            NegativeCapacity { index } => write!(f, "negative capacity on simplex {index}"),
            InvalidBounds { var } => {
                write!(f, "lower bound exceeds upper bound for variable {var}")
            }
            InfeasibleFlow(why) => write!(f, "infeasible flow: {why}"),
            ZeroStep => write!(f, "augmenting chain has zero step size"),
            GuardExceeded { limit, found } => {
                write!(f, "size guard exceeded: {found} > {limit}")
            }
            IterationCap { cap, value } => {
                write!(f, "iteration cap {cap} reached at value {value}")
            }
            VoidBoundaryNotCycle { void } => write!(f, "boundary of void {void} is not a cycle"),
            VoidIndexOutOfRange { simplex, void } => {
                write!(f, "simplex {simplex} references void {void} out of range")
            }
            GammaSplitNotPartition => {
                write!(
                    f,
                    "gamma1/gamma2 supports do not partition the source void boundary"
                )
            }
            Gamma1Boundary => write!(f, "boundary of gamma1 is not -gamma"),
            Gamma2Boundary => write!(f, "boundary of gamma2 is not gamma"),
            Unreachable(what) => write!(f, "unreachable: {what}"),
            EmptySubset { index } => write!(f, "family member {index} is empty"),
            InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            GiveUp(what) => write!(f, "gave up: {what}"),
        }
    }
}

impl core::error::Error for Error {}
