use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid length vector: {0}")]
    InvalidLengths(String),

    #[error("invalid preference vector: {0}")]
    InvalidPreferences(String),

    #[error("preference vector is not nondecreasing")]
    NotNondecreasing,

    #[error("operation needs at least {needed} entries, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error(
        "search budget exceeded: needs at least {needed} parking experiments, budget is {budget}"
    )]
    BudgetExceeded { needed: u64, budget: u64 },

    #[error("length vector is not superdecreasing")]
    NotSuperdecreasing,

    #[error("length vector is not almost constant")]
    NotAlmostConstant,

    #[error("preference {value} is not congruent to 1 modulo {modulus}")]
    NonIntegral { value: u32, modulus: u32 },

    #[error("malformed difference shape: {0}")]
    MalformedShape(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
}

pub type Result<T> = std::result::Result<T, Error>;
