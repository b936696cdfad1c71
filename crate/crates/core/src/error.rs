use thiserror::Error;

use crate::poly::Poly;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("value too large: {0}")]
    TooLarge(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("modulus is reducible; witness factor {witness}")]
    Reducible { witness: Poly },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    CtxMismatch,
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("cannot factor {0}: exceeds 2^63")]
    FactorizationOverflow(u128),
    #[error("{0} is not the cardinality of a subfield")]
    NotASubfield(u64),
    #[error("subfield of cardinality {0} is not a level of the extension tower")]
    SubfieldNotInTower(u64),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("invalid g: need g(0) = 1 and deg g <= n - 1")]
    BadG,
    #[error("invalid h: need monic of degree m with h(0) != 0")]
    BadH,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("polynomial vanishes at zero")]
    VanishesAtZero,
    #[error("integer overflow")]
    Overflow,
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("enumeration needs {needed} candidates, ceiling is {ceiling}")]
    CeilingExceeded { needed: u128, ceiling: u128 },
    #[error("parameters out of domain: {0}")]
    DomainBound(String),
    #[error("expected degree {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("formula needs a unique decomposition, found {0}")]
    NotUniquelyDecomposable(usize),
    #[error("element has degree {got} over the subfield, expected {expected}")]
    WrongDegreeElement { expected: u32, got: u32 },
    #[error("coefficient does not lie in the base field")]
    CoefficientNotInBase,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("division in closed form is not exact")]
    NonIntegerResult,
    #[error("polynomial is not self-reciprocal")]
    NotSelfReciprocal,
    #[error("polynomial has no X^m h(X + 1/X) representation")]
    NoRepresentation,
    #[error("degree must be even")]
    OddDegree,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
