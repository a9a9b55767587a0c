use thiserror::Error;

/// Errors produced by tower construction, linear algebra, weight computations
/// and document handling.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor prime")]
    BadBase(u64),
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("modulus is not irreducible over the base field")]
    NotIrreducible,
    #[error("operation needs a finite field")]
    InfiniteField,
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("vectors or codes belong to different towers")]
    TowerMismatch,
    #[error("trace image is only defined for separable towers")]
    InseparableTower,
    #[error("the zero code has no rank distance")]
    ZeroCode,
    #[error("r = {r} is outside 1..={dim}")]
    BadR { r: usize, dim: usize },
    #[error("randomized witness search exhausted its budget")]
    SearchExhausted,
    #[error("witness strategy does not apply: {0}")]
    StrategyInapplicable(String),
    #[error("weights disagree for r = {r}: dRr={d_rr} Mr={m_r} OSr={os_r} Dr={d_r}")]
    EquivalenceViolation {
        r: usize,
        d_rr: usize,
        m_r: usize,
        os_r: usize,
        d_r: usize,
    },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("row {row} has length {found}, expected {expected}")]
    RowLengthMismatch {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("elements do not form a basis of the extension")]
    NotABasis,
    #[error("inapplicable request: {0}")]
    Inapplicable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
