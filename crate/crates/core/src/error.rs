use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("bad modulus: {0}")]
    BadModulus(String),

    #[error("no built-in modulus for q = {0}; pass one explicitly")]
    NoDefaultModulus(u64),

    #[error("element {element} is outside a field of order {order}")]
    ElementOutOfRange { element: u32, order: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands live over different fields")]
    FieldMismatch,

    #[error("multiplier must be nonzero")]
    ZeroMultiplier,

    #[error("operation requires a prime field, got q = {0}")]
    PrimeFieldRequired(u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("operation requires a nonempty set")]
    EmptySet,

    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn cap(what: &'static str, needed: u128, cap: u128) -> Self {
        Error::CapExceeded { what, needed, cap }
    }
}
