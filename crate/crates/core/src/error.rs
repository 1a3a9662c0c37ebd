use thiserror::Error;

/// Unified error type for the whole crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cover closure violates antisymmetry: {0} and {1} are in a cycle")]
    Cycle(usize, usize),
    #[error("element index {index} out of range for size {size}")]
    Index { index: usize, size: usize },
    #[error("elements {0} and {1} are not ordered as required")]
    Order(usize, usize),
    #[error("rank structure invalid: {0}")]
    Rank(String),
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("functions belong to different posets")]
    PosetMismatch,
    #[error("invalid cross-cut: {0}")]
    InvalidCrossCut(String),
    #[error("invalid element for this operation: {0}")]
    BadElement(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("basis exchange axiom fails: {0}")]
    ExchangeAxiom(String),
    #[error("invalid argument: {0}")]
    Arity(String),
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("inconsistent subdivision fixture: {0}")]
    Fixture(String),
    #[error("poset has no unique {0}")]
    NoBounds(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
