use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed group spec `{0}`")]
    MalformedSpec(String),
    #[error("dihedral order must be even and at least 4, got {0}")]
    OddDihedral(usize),
    #[error("{what} out of supported range: {value} (limit {limit})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("bad table shape: {0}")]
    Shape(String),
    #[error("identity is not at index 0")]
    IdentityNotAtZero,
    #[error("not a Latin square: {0}")]
    NotLatinSquare(String),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("{what} of order {order} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        order: usize,
        cap: usize,
    },
    #[error("ordinal {0} is outside the computed run")]
    OrdinalOutOfRange(String),
    #[error("horizon {horizon} exceeds the {available} computed stages")]
    HorizonTooLong { horizon: usize, available: usize },
    #[error("group is not centerless (center order {0})")]
    NotCenterless(usize),
    #[error("tower did not terminate at a finite stage: {0}")]
    NoFiniteTermination(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),
    #[error("unit graph for class {0} is not rigid")]
    NonRigidUnit(usize),
    #[error("unit graphs for classes {0} and {1} are isomorphic")]
    IsomorphicUnits(usize, usize),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
