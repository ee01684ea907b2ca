use thiserror::Error;

use crate::laws::LawReport;

/// Errors raised by the series, geometry and valuation layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by a series with zero constant term")]
    DivisionByNonUnit,
    #[error("series is not divisible by {0}")]
    NotDivisible(&'static str),
    #[error("inner series of a composition must have zero constant term")]
    ConstantTermNotZero,
    #[error("requested degree {degree} exceeds the series order {order}")]
    DegreeExceedsOrder { degree: u32, order: u32 },
    #[error("vector ({0}, {1}) is not primitive")]
    NotPrimitive(i64, i64),
    #[error("triangle is not unimodular (twice-area {0})")]
    NotUnimodularTriangle(i64),
    #[error("matrix determinant {0} is not ±1")]
    NotUnimodular(i64),
    #[error("empty point set")]
    EmptyInput,
    #[error("polygon is not two-dimensional")]
    NotFullDimensional,
    #[error("polygon is not a segment")]
    NotSegment,
    #[error("polygon has no chord between non-adjacent boundary lattice points")]
    NoValidChord,
    #[error("series is not D4-invariant")]
    NotInvariant,
    #[error("no representation in the invariant generators at degree {0}")]
    NoRepresentation(u32),
    #[error("rho violates {}", .0.law)]
    InvalidRho(Box<LawReport>),
    #[error("f1 violates {}", .0.law)]
    LawViolation(Box<LawReport>),
    #[error("closed form for Z(mT) requires a simple valuation (c = 0, g = 0)")]
    NotSimpleSpec,
    #[error("no kappa candidate passes the 0-dilativity test")]
    NoCandidatePasses,
    #[error("both kappa candidates pass the 0-dilativity test")]
    BothPass,
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
