use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("invalid conductor {0}")]
    InvalidConductor(i64),
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("class has zero primitive part")]
    ZeroPrimitivePart,
    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(usize),
    #[error("linear forms are linearly dependent")]
    DependentForms,
    #[error("not a decomposition of F")]
    NotDecomposition,
    #[error("no product structure: dim J_1 = {found}, expected {expected}")]
    NoProductStructure { found: usize, expected: usize },
    #[error("violates product shape: {0}")]
    ShapeViolation(String),
    #[error("{0} is not in G_{1}")]
    NotInFamily(String, u32),
    #[error("all pairing coefficients vanish; cannot normalize")]
    CannotNormalize,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("enumeration budget of {0} exceeded")]
    BudgetExceeded(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
