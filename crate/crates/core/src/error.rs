use thiserror::Error;

/// Shape of a relation as `(rows, cols)`.
pub type Shape = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{op}: shape mismatch between {left:?} and {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: Shape,
        right: Shape,
    },

    #[error("{what} index {index} out of range (size {len})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },

    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("row {row} of a function graph has {count} entries, expected exactly one")]
    NotAFunction { row: usize, count: usize },

    #[error("relation is not a preorder: {reason} at ({a}, {b})")]
    NotAPreorder {
        reason: &'static str,
        a: usize,
        b: usize,
    },

    #[error("not a complete lattice: {0}")]
    NotALattice(String),

    #[error("powerset of {size} elements exceeds the cap of {cap}")]
    PowersetCap { size: usize, cap: usize },

    #[error("concept count exceeds the cap of {cap}")]
    ConceptCap { cap: usize },

    #[error("concept with extent {0} does not belong to this lattice")]
    ForeignConcept(String),

    #[error("{0}: endpoint classifications do not match")]
    EndpointMismatch(&'static str),

    #[error("fundamental property fails at instance {instance}, type {type_index}")]
    InvalidInfomorphism { instance: usize, type_index: usize },

    #[error("not a bond: {0}")]
    NotABond(BondViolation),

    #[error("not a bonding pair: pairing constraint fails at concept {concept}")]
    NotABondingPair { concept: usize },

    #[error("not a collective concept")]
    NotACollectiveConcept,

    #[error("not an adjoint pair: fails at ({left}, {right})")]
    NotAdjoint { left: usize, right: usize },

    #[error("not a concept lattice morphism: {0}")]
    NotAConceptLatticeMorphism(String),

    #[error("not a complete homomorphism: fails on subset {witness:?}")]
    NotACompleteHomomorphism { witness: Vec<usize> },

    #[error("incompatible dual invariant: instance {instance} separates types {alpha} and {beta}")]
    IncompatibleInvariant {
        instance: usize,
        alpha: usize,
        beta: usize,
    },

    #[error("{0} sets differ")]
    FiberMismatch(&'static str),
}

/// Which closure condition a candidate bond relation violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BondViolation {
    /// Row of the given target instance is not an intent of the source.
    Row(usize),
    /// Column of the given source type is not an extent of the target.
    Column(usize),
}

impl std::fmt::Display for BondViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BondViolation::Row(r) => write!(f, "row {r} is not an intent of the source"),
            BondViolation::Column(c) => write!(f, "column {c} is not an extent of the target"),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
