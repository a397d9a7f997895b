use thiserror::Error;

/// Errors raised by game construction, index evaluation and the axiom harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("player count {0} outside supported range 1..={max}", max = crate::MAX_PLAYERS)]
    PlayerCount(usize),
    #[error("duplicate player label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown player label {0:?}")]
    UnknownLabel(String),
    #[error("coalition bits {bits:#b} are not a subset of a {n}-player set")]
    InvalidCoalition { bits: u32, n: usize },
    #[error("coalitions {0} and {1} must be disjoint")]
    NotDisjoint(String, String),
    #[error("coalition {inner} is not contained in {outer}")]
    NotContained { inner: String, outer: String },
    #[error("coalition must be non-empty")]
    EmptyCoalition,
    #[error("worth table has {got} entries, expected {expected}")]
    WorthTableLength { got: usize, expected: usize },
    #[error("worth of the empty coalition must be 0, got {0}")]
    NonZeroEmptyWorth(String),
    #[error("unanimity carrier must be non-empty")]
    EmptyCarrier,
    #[error("invalid generator parameters: {0}")]
    Generator(String),
    #[error("internal family is vacuous on coalitions with fewer than two players")]
    VacuousFamily,
    #[error("{0} is not a 2-partition of the queried coalition")]
    NotAPartition(String),
    #[error("family out of domain: {0}")]
    Domain(String),
    #[error("family has no weights for {0}")]
    MissingWeights(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("identity violated: {0}")]
    IdentityViolated(String),
    #[error("cannot parse numeric literal {0:?}")]
    Literal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
