use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid base {0}: bases must lie in 2..=4294967295")]
    InvalidBase(u64),
    #[error("digit {digit} is out of range for base {base}")]
    InvalidDigit { digit: u32, base: u32 },
    #[error("empty digit string")]
    EmptyDigits,
    #[error("{0} must be positive")]
    NotPositive(&'static str),
    #[error("shift exponent n = {n} is smaller than the digit count {digits} of the prefix")]
    Overlap { n: u64, digits: u64 },
    #[error("base {base} divides {value}; the construction would not be a palindrome")]
    DivisibleByBase { value: String, base: u32 },
    #[error("bases {g} and {h} are multiplicatively dependent")]
    DependentBases { g: u32, h: u32 },
    #[error("bases must be distinct (got {0} twice)")]
    EqualBases(u32),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("could not fully factor {0}")]
    FactorizationLimit(String),
    #[error("checkpoint does not match this search: {0}")]
    CheckpointMismatch(String),
    #[error("corrupt checkpoint: {0}")]
    CorruptCheckpoint(String),
    #[error("bound {0} exceeds the supported range of 128-bit words")]
    BoundTooLarge(String),
}
