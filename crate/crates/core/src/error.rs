use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("interval endpoints [{lower}, {upper}] are not both in [0, 1]")]
    OutOfRange { lower: f64, upper: f64 },
    #[error("interval lower endpoint {lower} exceeds upper endpoint {upper}")]
    Inverted { lower: f64, upper: f64 },
    #[error("scalar {0} is negative")]
    NegativeScalar(f64),
    #[error("a hesitant element needs at least one interval")]
    EmptyElement,

    #[error("soft sets are defined over different universes")]
    UniverseMismatch,
    #[error("parameter sets do not intersect")]
    EmptyParameterIntersection,
    #[error("operation needs identical parameter sets")]
    ParameterMismatch,
    #[error("universe is empty")]
    EmptyUniverse,
    #[error("parameter set is empty")]
    EmptyParameters,
    #[error("family of soft sets is empty")]
    EmptyFamily,
    #[error("duplicate identifier `{0}`")]
    DuplicateIdentifier(String),
    #[error("table has {found} entries where {expected} were expected")]
    TableShape { expected: usize, found: usize },

    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("schema violation: {0}")]
    Schema(String),

    #[error("unknown law `{0}`")]
    UnknownLaw(String),
    #[error("invalid checker configuration: {0}")]
    InvalidConfig(String),
    #[error("enumeration of {needed} tuples exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
}
