use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("morphism is not well defined: {0}")]
    NotWellDefined(String),
    #[error("illegal entry at ({row}, {col}): {reason}")]
    IllegalBlock { row: usize, col: usize, reason: String },
    #[error("element has no preimage")]
    NoPreimage,
    #[error("result is outside the representable class: {0}")]
    NotRepresentable(String),
    #[error("homology is not finitely generated: {0}")]
    NotFinitelyGenerated(String),
    #[error("extension target must be divisible (only Q and Q/Z summands)")]
    NotDivisibleTarget,
    #[error("element is not a cycle")]
    NotACycle,
    #[error("lift through the coefficient embedding failed: {0}")]
    LiftFailure(String),
    #[error("complex is not degreewise free (degree {0})")]
    NotFree(i32),
    #[error("colimit is not finitely generated: tail map is not an isomorphism in degree {degree}")]
    NotFinitelyGeneratedColimit { degree: i32 },
    #[error("not a subcomplex: {0}")]
    InvalidSubcomplex(String),
    #[error("not a simplicial map: {0}")]
    NotSimplicial(String),
    #[error("document error: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
