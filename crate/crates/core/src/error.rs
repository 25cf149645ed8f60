use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed field spec `{0}` (expected `P` or `P^K`)")]
    MalformedField(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds 2^16")]
    FieldTooLarge(u64),
    #[error("element {value} out of range for a field of order {order}")]
    ElementOutOfRange { value: u64, order: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operation `{0}` needs a second operand")]
    MissingOperand(&'static str),
    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(String, String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("{what} of size {size} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
    #[error("no k <= {k_max} satisfies q^l < p^k < (1 + eps) q^l")]
    NoParams { k_max: u32 },
    #[error("matrix does not represent the graph: {0}")]
    NotRepresenting(String),
    #[error("decoding failed: {0}")]
    Decode(String),
    #[error("protocol failure: receiver {receiver} decoded {got}, sender had {expected}")]
    ProtocolFailure {
        receiver: usize,
        got: bool,
        expected: bool,
    },
    #[error("not a partition of the vertex set: {0}")]
    NotPartition(String),
    #[error("construction check failed: {0}")]
    Construction(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
