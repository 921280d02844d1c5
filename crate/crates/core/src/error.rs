use thiserror::Error;

/// Domain errors shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial has degree zero in `{0}`")]
    DegreeZero(String),
    #[error("polynomial degree in `{0}` is below 2")]
    DegreeTooLow(String),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroInput,
    #[error("syntax error at line {line}, column {col}: {msg}")]
    SyntaxError { line: usize, col: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("i/o error: {0}")]
    IoError(String),
    #[error("invalid field `{field}`: {msg}")]
    ValidationError { field: String, msg: String },
    #[error("ratios fail the compatibility identity")]
    IncompatibleSpec,
    #[error("ratio denominator vanishes at ({n}, {m})")]
    RatioPole { n: usize, m: usize },
    #[error("cannot evaluate expression: {0}")]
    EvaluationError(String),
    #[error("series argument does not vanish at the origin")]
    NonzeroAtOrigin,
    #[error("insufficient order: need {needed}, have {have}")]
    InsufficientOrder { needed: usize, have: usize },
    #[error("series orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("base point is a singular point of the operator")]
    SingularPoint,
    #[error("square order changed from {0} to {1} when adding terms")]
    Unstable(usize, usize),
    #[error("no operator within the given bounds")]
    NotFound,
    #[error("ratio degrees differ: limit is 0 or infinite")]
    Confluent,
    #[error("resultant vanishes identically")]
    IdenticallyZeroResultant,
    #[error("curve is not quadratic in `{0}`")]
    NotQuadratic(String),
    #[error("cos(2*pi*{0}/{1}) is not rational")]
    IrrationalCos(i64, i64),
    #[error("substitution sends the curve to zero")]
    DegenerateMap,
    #[error("map component is constant")]
    ConstantMap,
    #[error("variable lists differ")]
    VariableMismatch,
}

impl Error {
    /// Variant name as printed by the command line tool.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DegreeZero(_) => "DegreeZero",
            Error::DegreeTooLow(_) => "DegreeTooLow",
            Error::ZeroInput => "ZeroInput",
            Error::SyntaxError { .. } => "SyntaxError",
            Error::UnknownVariable(_) => "UnknownVariable",
            Error::IoError(_) => "IoError",
            Error::ValidationError { .. } => "ValidationError",
            Error::IncompatibleSpec => "IncompatibleSpec",
            Error::RatioPole { .. } => "RatioPole",
            Error::EvaluationError(_) => "EvaluationError",
            Error::NonzeroAtOrigin => "NonzeroAtOrigin",
            Error::InsufficientOrder { .. } => "InsufficientOrder",
            Error::OrderMismatch(..) => "OrderMismatch",
            Error::SingularPoint => "SingularPoint",
            Error::Unstable(..) => "Unstable",
            Error::NotFound => "NotFound",
            Error::Confluent => "Confluent",
            Error::IdenticallyZeroResultant => "IdenticallyZeroResultant",
            Error::NotQuadratic(_) => "NotQuadratic",
            Error::IrrationalCos(..) => "IrrationalCos",
            Error::DegenerateMap => "DegenerateMap",
            Error::ConstantMap => "ConstantMap",
            Error::VariableMismatch => "VariableMismatch",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
