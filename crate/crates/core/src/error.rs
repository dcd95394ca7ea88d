use thiserror::Error;

/// Errors raised by the library. Variant names follow the failure modes of
/// the individual operations; every variant carries a short human-readable
/// context string.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("unsupported characteristic: {0}")]
    UnsupportedCharacteristic(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular fiber: {0}")]
    SingularFiber(String),
    #[error("bad reduction at p = {0}")]
    BadPrime(u64),
    #[error("budget exceeded: field of size {size} exceeds budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error("ansatz violated: {0}")]
    AnsatzViolated(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("Weil polynomial shape violated: {0}")]
    WeilShapeViolated(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("prime {0} ramifies in the field")]
    RamifiedPrime(u64),
    #[error("input is not simple: {0}")]
    NotSimpleInput(String),
    #[error("ill-conditioned configuration: {0}")]
    IllConditioned(String),
    #[error("analytic continuation failed: {0}")]
    ContinuationFailed(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("pole at {0}")]
    Pole(String),
    #[error("degenerate point: {0}")]
    DegeneratePoint(String),
}

pub type Result<T> = std::result::Result<T, Error>;
