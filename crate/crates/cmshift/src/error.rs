use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    BadField(String),
    #[error("invalid scalar literal: {0}")]
    BadScalar(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("inconsistent relation: {0}")]
    InconsistentRelation(String),
    #[error("not admissible within cap {cap}: nonzero paths of length {cap} survive")]
    NotAdmissible { cap: usize },
    #[error("quiver error: {0}")]
    BadQuiver(String),
    #[error("algebra mismatch: modules live over different algebras")]
    AlgebraMismatch,
    #[error("algebra invariant violated: {0}")]
    BadAlgebra(String),
    #[error("idempotent lifting failed at seed {seed}: {reason}")]
    LiftingFailed { seed: u64, reason: String },
    #[error("non-split simple component: corner of dimension {dim} over the base field")]
    NonSplit { dim: usize },
    #[error("decomposition not found within retry budget (seed {seed})")]
    DecompositionFailed { seed: u64 },
    #[error("k = {k} exceeds dominant dimension {domdim}")]
    LevelExceedsDomdim { k: usize, domdim: String },
    #[error("not QF-3: dominant dimension is 0 but level {k} >= 1 was requested")]
    NotQf3 { k: usize },
    #[error("tilting verification failed: {0}")]
    TiltingFailed(String),
    #[error("M is not a generator-cogenerator: {0}")]
    NotGeneratorCogenerator(String),
    #[error("theorem not applicable: {0}")]
    NotApplicable(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Other(String),
}
