use thiserror::Error;

/// Failures of exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    ZeroDivisor,
    #[error("not exactly divisible")]
    NotDivisible,
    #[error("denominator vanishes modulo {modulus}")]
    BadReduction { modulus: String },
    #[error("residue moduli differ: {left} vs {right}")]
    ModulusMismatch { left: String, right: String },
    #[error("evaluation hit a zero denominator")]
    ZeroDenominator,
    #[error("variable {0} has no assigned value")]
    Unassigned(String),
    #[error("rational content in an integer polynomial")]
    RationalContent,
    #[error("symbolic budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("transform parameter must be nonzero")]
    ZeroParameter,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("valuation of zero")]
    ZeroInput,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("predicted index {index} exceeds the index budget {limit}")]
    QTooLarge { index: String, limit: i64 },
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point is a singular point of the curve")]
    SingularPoint,
    #[error("no order found up to {bound}")]
    OrderNotFound { bound: u64 },
}

impl ArithError {
    /// Stable snake_case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            ArithError::ZeroDivisor => "zero_divisor",
            ArithError::NotDivisible => "not_divisible",
            ArithError::BadReduction { .. } => "bad_reduction",
            ArithError::ModulusMismatch { .. } => "modulus_mismatch",
            ArithError::ZeroDenominator => "zero_denominator",
            ArithError::Unassigned(_) => "unassigned",
            ArithError::RationalContent => "rational_content",
            ArithError::BudgetExceeded(_) => "budget_exceeded",
            ArithError::ZeroParameter => "zero_parameter",
            ArithError::Parse(_) => "parse",
            ArithError::ZeroInput => "zero_input",
            ArithError::InvalidArgument(_) => "invalid_argument",
            ArithError::QTooLarge { .. } => "q_too_large",
            ArithError::NotOnCurve => "not_on_curve",
            ArithError::SingularPoint => "singular_point",
            ArithError::OrderNotFound { .. } => "order_not_found",
        }
    }
}

pub type Result<T, E = ArithError> = std::result::Result<T, E>;
