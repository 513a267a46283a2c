use alloc::string::String;

use crate::zchain::Gen;

/// Errors raised while building or evaluating chain-level structures.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A perturbation series did not terminate within the guard.
    #[error("nilpotency guard exceeded: series at {generator} still nonzero after {terms} terms")]
    NilpotencyGuardExceeded { generator: Gen, terms: usize },

    /// A V-path of a discrete vector field was longer than the guard.
    #[error("admissibility guard exceeded: V-path from {generator} longer than {guard} (field not admissible as far as checked)")]
    AdmissibilityGuardExceeded { generator: Gen, guard: usize },

    /// A degree whose basis cannot be enumerated was needed.
    #[error("degree {degree} of {complex} is not effective (basis is open)")]
    NotEffective { complex: String, degree: usize },

    #[error("face index {index} out of range for a simplex of dimension {dim}")]
    FaceIndex { index: usize, dim: usize },

    #[error("missing face d_{index} for generator {generator}")]
    MissingFace { generator: Gen, index: usize },

    #[error("augmentation applied to {generator} of degree {degree}")]
    NotDegreeZero { generator: Gen, degree: usize },

    #[error("chain complexes do not match: {left} vs {right}")]
    EndpointMismatch { left: String, right: String },

    #[error("chain is not a cycle: boundary is {boundary}")]
    NotACycle { boundary: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("condition (*) violated at {0}")]
    StarViolation(Gen),

    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
