use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("endpoint mismatch: source {source_vertex:?} does not match range {range:?}")]
    EndpointMismatch { source_vertex: String, range: String },
    #[error("degree {requested} is not below {available}")]
    DegreeNotBelow { requested: String, available: String },
    #[error("color word does not match the path's color multiset")]
    ColorWordMismatch,
    #[error("rank mismatch: expected k = {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("missing factorization square for {0} . {1}")]
    MissingSquare(String, String),
    #[error("vertex set is not {0}")]
    NotSaturatedHereditary(&'static str),
    #[error("vertex {0:?} is not a line point")]
    NotLinePoint(String),
    #[error("vertex {0:?} is outside the saturated hereditary closure")]
    OutsideClosure(String),
    #[error("degree {0} does not dominate every right leg")]
    NotDominating(String),
    #[error("({0}, {1}) is not a monomial of the normal form")]
    NotAMonomial(String, String),
    #[error("elements belong to different graphs")]
    GraphMismatch,
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cannot read {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid presentation: {0}")]
    Invalid(String),
}
