use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("singular matrix")]
    Singular,
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("not a Lie algebra: {0}")]
    NotLie(String),
    #[error("not a representation: {0}")]
    NotRepresentation(String),
    #[error("representation does not act by derivations")]
    NotDerivation,
    #[error("map is not a Lie algebra automorphism")]
    NotAutomorphism,
    #[error("map is not an involution")]
    NotInvolution,
    #[error("subspace is not the fixed-point space of the automorphism")]
    NotFixedSpace,
    #[error("not a Rota-Baxter operator: {0}")]
    NotRotaBaxter(String),
    #[error("not a quadratic Rota-Baxter algebra: {0}")]
    NotQuadratic(String),
    #[error("weight must be nonzero for this construction")]
    ZeroWeight,
    #[error("not a relative Rota-Baxter operator: {0}")]
    NotRelative(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
