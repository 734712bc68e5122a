use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate arc {0} -> {1}")]
    DuplicateArc(usize, usize),

    #[error("digraph is not semicomplete: no arc between {0} and {1}")]
    NotSemicomplete(usize, usize),

    #[error("digraph on {n} vertices exceeds the dense adjacency limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("component bound ell must be at least 1")]
    ZeroEll,

    #[error("exhaustive search refused: n = {n} exceeds guard {limit}")]
    OracleGuard { n: usize, limit: usize },

    #[error("no strong tournament on {0} vertices")]
    InvalidBlockSize(usize),

    #[error("cannot flip {0} -> {1}: arc missing or reverse arc already present")]
    FlipPrecondition(usize, usize),

    #[error("vertex {0} lies in both the solution and the compression set")]
    Overlap(usize),

    #[error("cover-free family ({n},({r},{s})) not verified within budget {budget}")]
    FamilyBudgetExhausted {
        n: usize,
        r: usize,
        s: usize,
        budget: usize,
    },

    #[error("invalid cover-free family request: {0}")]
    InvalidFamily(String),

    #[error("invalid generator spec: {0}")]
    GenSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// Stable machine-readable name, used in CLI and FFI reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::VertexOutOfRange { .. } => "vertex_out_of_range",
            Error::SelfLoop(_) | Error::DuplicateArc(..) => "invalid_digraph",
            Error::NotSemicomplete(..) => "not_semicomplete",
            Error::TooLarge { .. } => "too_large",
            Error::ZeroEll | Error::InvalidArgument(_) => "invalid_argument",
            Error::OracleGuard { .. } => "oracle_guard",
            Error::InvalidBlockSize(_) | Error::FlipPrecondition(..) | Error::GenSpec(_) => "generator",
            Error::Overlap(_) => "overlap",
            Error::FamilyBudgetExhausted { .. } | Error::InvalidFamily(_) => "family",
            Error::Io { .. } => "io",
        }
    }
}
