use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    BadExtensionDegree,
    #[error("modulus must be a monic irreducible polynomial of degree {expected}")]
    BadModulus { expected: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial must be nonzero")]
    ZeroPolynomial,
    #[error("both polynomials are zero")]
    BothZero,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial must be nonconstant")]
    ConstantPolynomial,
    #[error("polynomial must be irreducible")]
    Reducible,
    #[error("moduli are not pairwise coprime")]
    NonCoprimeModuli,
    #[error("degree must be at least 1")]
    DegreeTooSmall,
    #[error("degrees of f and g must agree")]
    DegreeMismatch,
    #[error("matrices must have the same size and field")]
    ShapeMismatch,
    #[error("matrix is singular")]
    Singular,
    #[error("constant term must be nonzero")]
    ZeroConstantTerm,
    #[error("element is zero")]
    ZeroElement,
    #[error("invalid nilpotent profile: {0}")]
    BadProfile(String),
    #[error("no fresh conjugate available despite satisfied hypothesis")]
    ConjugatesExhausted,
    #[error("neither affine stabilizer is trivial (internal invariant violated)")]
    StabilizerDichotomy,
    #[error("parse error: {0}")]
    Parse(String),
}
