use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("idempotent word needs at least one factor")]
    EmptyList,
    #[error("invalid letter name {0:?}")]
    InvalidLetter(String),
    #[error("duplicate alphabet entry {0:?}")]
    DuplicateName(String),
    #[error("unknown letter or vertex {0:?}")]
    UnknownVertex(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("presentation is not of the form r = 1 (relation {0} has a nonempty right-hand side)")]
    NotSpecialPresentation(usize),
    #[error("stable letter {0:?} already belongs to the alphabet")]
    StableLetterClash(String),
    #[error("presentation was not produced by the construction: {0}")]
    NotConstructionShape(String),
    #[error("no word-problem oracle available for {0}")]
    OracleMissing(String),
    #[error("factorization index {0} is outside 1..=|W|")]
    InvalidFactor(usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid HNN data: {0}")]
    InvalidHnn(String),
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Error {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
