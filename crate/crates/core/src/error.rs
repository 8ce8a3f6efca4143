use thiserror::Error;

use crate::Int;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("({p}, {q}) is not primitive")]
    NonPrimitive { p: Int, q: Int },
    #[error("(0, 0) is not a slope")]
    ZeroSlope,
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(Int),
    #[error("boundary index {index} out of range (manifold has {count} boundary tori)")]
    BadBoundaryIndex { index: usize, count: usize },
    #[error("Seifert invariants are not in normal form")]
    NotNormalized,
    #[error("invalid Seifert data: {0}")]
    InvalidSeifert(String),
    #[error("no slope on this boundary is torsion in H1")]
    NoTorsionSlope,
    #[error("every slope on this boundary is torsion in H1")]
    NotUnique,
    #[error("enumeration exceeded the budget of {budget} steps")]
    TooLarge { budget: u64 },
    #[error("H1 has free rank {0}; the Alexander polynomial needs free rank 1")]
    RankNotOne(usize),
    #[error("manifold is not a rational homology sphere")]
    NotQhs,
    #[error("realizability search exceeded the budget of {budget} candidates")]
    BudgetExceeded { budget: u64 },
    #[error("cone list is empty")]
    EmptyCones,
    #[error("p = {0} is outside the range p >= 2")]
    BadP(Int),
    #[error("invalid finite group: {0}")]
    InvalidGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("exponent {0} is too large to expand into a word")]
    ExponentTooLarge(Int),
}

pub type Result<T> = std::result::Result<T, Error>;
