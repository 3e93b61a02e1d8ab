use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed fan: {0}")]
    MalformedFan(String),
    #[error("sublattice is not saturated")]
    NotSaturated,
    #[error("lattice is not contained in the ambient lattice: {0}")]
    NotContained(String),
    #[error("layer lattice is not a split direct summand: {0}")]
    NotSplit(String),
    #[error("fan is not compatible with the lattice: {0}")]
    NotCompatible(String),
    #[error("ray is not in the relative interior of the cone")]
    RayNotInterior,
    #[error("inclusion relation contains a cycle")]
    CycleDetected,
    #[error("element {0} is not the last member of the building set")]
    NotLast(usize),
    #[error("fan has not been validated: {0}")]
    NotValidated(String),
    #[error("no equal-sign basis found: {0}")]
    NoBasis(String),
    #[error("fan is not good for the arrangement: {0}")]
    NotGood(String),
    #[error("not a well-connected building set: {0}")]
    NotBuilding(String),
    #[error("building set order does not refine inclusion: {0}")]
    BadOrder(String),
    #[error("set is not nested: {0}")]
    NotNested(String),
    #[error("presentations live in different polynomial rings")]
    DegreeMismatch,
    #[error("torsion in graded slice of degree {degree}: {divisors:?}")]
    Torsion { degree: usize, divisors: Vec<String> },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("search budget of {0} subdivisions exhausted")]
    BudgetExhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
