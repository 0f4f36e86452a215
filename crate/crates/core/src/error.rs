use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("composition index {index} out of range for arity {arity}")]
    CompositionIndex { index: usize, arity: usize },
    #[error("arity must be at least {min}, got {got}")]
    ArityTooSmall { min: usize, got: usize },
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("parameter q is only accepted by the D family")]
    UnexpectedQ,
    #[error("generator `{0}` is not mapped by the substitution")]
    Unmapped(String),
    #[error("generator substitution is not invertible")]
    NonInvertible,
    #[error("morphism is not well defined")]
    NotAMorphism,
    #[error("rewriting exceeded {0} steps, suspected nontermination")]
    StepCap(usize),
    #[error("product of two leaves is undefined")]
    LeafProduct,
    #[error("label {label} outside [1, {gamma}]")]
    Label { label: u32, gamma: u32 },
    #[error("search space {size} exceeds the limit {limit}")]
    SearchTooLarge { size: u64, limit: u64 },
    #[error("coefficient denominator not invertible modulo {0}")]
    NotInvertibleModP(u64),
    #[error("series error: {0}")]
    Series(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
