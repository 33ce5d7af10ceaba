use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("variable index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("symbol `{0}` has no assigned value")]
    UnassignedSymbol(String),

    #[error("element is not purely of degree one: {0}")]
    DegreeViolation(String),

    #[error("arity mismatch: symbol has {expected} slots, got {found} arguments")]
    ArityMismatch { expected: usize, found: usize },

    #[error("argument x-degree {degree} exceeds the truncation bound {bound}")]
    TruncationExceeded { degree: u32, bound: u32 },

    #[error("missing lower component of order {0}")]
    MissingComponent(usize),

    #[error("component of order {order} is not normal")]
    NonNormal { order: usize },

    #[error("first component does not preserve the unit")]
    NotUnital,

    #[error("cocycle assertion failed at order {order}: {detail}")]
    CocycleAssertion { order: usize, detail: String },

    #[error("invalid ambiguity cocycle: {0}")]
    InvalidCocycle(String),

    #[error("incompatible morphisms: {0}")]
    Incompatible(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported schema version {found} (expected {expected})")]
    SchemaVersion { expected: u32, found: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
