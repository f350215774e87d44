use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("axiom `{axiom}` violated (max residual {residual:.3e})")]
    AxiomViolation { axiom: String, residual: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no two-sided integral exists")]
    NoIntegral,
    #[error("two-sided integral space has dimension {0}")]
    NonUniqueIntegral(usize),
    #[error("irrep decomposition incomplete: sum of squared dims {found} != {expected}")]
    DecompositionIncomplete { found: usize, expected: usize },
    #[error("non-integer fusion multiplicity {0}")]
    NonIntegerMultiplicity(f64),
    #[error("fusion basis Gram matrix deviates from identity by {0:.3e}")]
    GramDefect(f64),
    #[error("site mismatch: {0}")]
    SiteMismatch(String),
    #[error("edge ({0}, {1}) does not join an odd and an even vertex")]
    NotBipartite(usize, usize),
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("state needs {needed} amplitudes, budget is {budget}")]
    MemoryBudgetExceeded { needed: u128, budget: u128 },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("functional on undirected hyperedge `{0}` is not symmetric")]
    AsymmetricFunctional(String),
    #[error("site {site} has the wrong parity for {term}")]
    SiteParity { site: usize, term: &'static str },
    #[error("contraction intermediate of {needed} entries exceeds budget {budget}")]
    ContractionBudgetExceeded { needed: u128, budget: u128 },
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
