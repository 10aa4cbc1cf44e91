use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid quiver: {0}")]
    Quiver(String),
    #[error("invalid relation: {0}")]
    Relation(String),
    #[error("relations are not minimal: `{contained}` contains `{generator}`")]
    NonMinimal { generator: String, contained: String },
    #[error("algebra is infinite-dimensional: nonzero path of length {0} reached the cap")]
    InfiniteDimensional(usize),
    #[error("path `{0}` lies in the ideal")]
    ZeroPath(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("relation `{relation}` does not act as zero{context}")]
    RelationViolated { relation: String, context: String },
    #[error("square for arrow `{arrow}` does not commute{context}")]
    NotCommuting { arrow: String, context: String },
    #[error("oracle mode `{mode}` does not apply: {reason}")]
    ModeMismatch { mode: String, reason: String },
    #[error("the map phi is not injective at vertex {0}")]
    PhiNotInjective(String),
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
