use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),

    #[error("duplicate edge id `{0}`")]
    DuplicateEdgeId(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("edge `{edge}` has non-positive or non-finite length {length}")]
    NonPositiveLength { edge: String, length: f64 },

    #[error("graph is not connected: vertex `{unreachable}` cannot be reached")]
    NotConnected { unreachable: String },

    #[error("edge `{edge}` is a loop or duplicates an existing vertex pair")]
    MultiEdgeOrLoop { edge: String },

    #[error("edge `{edge}` has length {length} but a shorter route of length {shortest} exists")]
    DistanceInconsistent {
        edge: String,
        length: f64,
        shortest: f64,
    },

    #[error("offset {offset} is outside the edge `{edge}` of length {length}")]
    OffsetOutOfRange {
        edge: String,
        offset: f64,
        length: f64,
    },

    #[error("vertex `{vertex}` has degree {degree}, expected 2")]
    NotDegreeTwo { vertex: String, degree: usize },

    #[error("merging at `{vertex}` would create a loop or multi-edge")]
    WouldCreateMultiEdgeOrLoop { vertex: String },

    #[error("factorization of the resistance matrix failed")]
    FactorizationFailed,

    #[error("graph is not a tree")]
    NotATree,

    #[error("points {first} and {second} coincide")]
    DuplicatePoints { first: usize, second: usize },

    #[error("parameter {field} = {value} outside allowed range {allowed}")]
    ParamOutOfRange {
        field: &'static str,
        value: f64,
        allowed: &'static str,
    },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not positive semi-definite (min eigenvalue {min_eig})")]
    NotPsd { min_eig: f64 },

    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(usize),

    #[error("star size n = {0} out of range (n >= 2)")]
    NOutOfRange(usize),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyGraph => "EmptyGraph",
            Error::DuplicateVertex(_) => "DuplicateVertex",
            Error::DuplicateEdgeId(_) => "DuplicateEdgeId",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::UnknownEdge(_) => "UnknownEdge",
            Error::NonPositiveLength { .. } => "NonPositiveLength",
            Error::NotConnected { .. } => "NotConnected",
            Error::MultiEdgeOrLoop { .. } => "MultiEdgeOrLoop",
            Error::DistanceInconsistent { .. } => "DistanceInconsistent",
            Error::OffsetOutOfRange { .. } => "OffsetOutOfRange",
            Error::NotDegreeTwo { .. } => "NotDegreeTwo",
            Error::WouldCreateMultiEdgeOrLoop { .. } => "WouldCreateMultiEdgeOrLoop",
            Error::FactorizationFailed => "FactorizationFailed",
            Error::NotATree => "NotATree",
            Error::DuplicatePoints { .. } => "DuplicatePoints",
            Error::ParamOutOfRange { .. } => "ParamOutOfRange",
            Error::NonFinite => "NonFinite",
            Error::NotSquare { .. } => "NotSquare",
            Error::NotPsd { .. } => "NotPsd",
            Error::TooFewSamples(_) => "TooFewSamples",
            Error::NOutOfRange(_) => "NOutOfRange",
        }
    }
}
