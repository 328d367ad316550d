use thiserror::Error;

/// Errors raised by the algebra kernel and the constructions built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live over different variable tables")]
    TableMismatch,
    #[error("operands use different factor sets")]
    FactorSetMismatch,
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("`{0}` is not a valid identifier")]
    InvalidName(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative exponent on non-Laurent variable `{0}`")]
    NegativeExponent(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid denominator factor `{0}`: {1}")]
    InvalidFactor(String, &'static str),
    #[error("denominator `{0}` is outside the multiplicative set and does not divide exactly")]
    DenominatorOutsideFactorSet(String),
    #[error("`{0}` is not invertible in the localization")]
    NotInvertible(String),
    #[error("morphism does not cover variable `{0}`")]
    MissingImage(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("section is incompatible with the blowup chart: {0}")]
    IncompatibleSection(String),
    #[error("generator `{name}` is not a member: pole along `{factor}`")]
    NonMemberGenerator { name: String, factor: String },
    #[error("{0}")]
    Unsupported(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
