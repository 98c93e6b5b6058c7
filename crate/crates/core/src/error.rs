use thiserror::Error;

/// Errors raised by set-system, matrix and graph operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("subset {mask:#b} has bits outside a ground set of size {size}")]
    InvalidSubset { mask: u32, size: usize },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element index {index} out of range for ground set of size {size}")]
    ElementOutOfRange { index: usize, size: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("ground set of size {size} exceeds the limit of {max} for {what}")]
    TooLarge {
        what: &'static str,
        size: usize,
        max: usize,
    },
    #[error("subsets are not pairwise disjoint")]
    Overlap,
    #[error("set system is improper (no feasible sets)")]
    Improper,
    #[error("empty result: no feasible set F with Y ⊆ F ⊆ E−X, so the minor is not order-independent")]
    NotRealizable,
    #[error("no feasible witness for the 3-minor closed form; the result would be order-dependent")]
    NoThreeMinorWitness,
    #[error("set system is not normal (the empty set is not feasible)")]
    NotNormal,
    #[error("principal submatrix is singular")]
    SingularPivot,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("graph has loops")]
    LoopsPresent,
    #[error("vertices `{0}` and `{1}` are not adjacent")]
    NotAdjacent(String, String),
    #[error("malformed chord word: {0}")]
    MalformedWord(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogName(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("obstruction cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
