use thiserror::Error;

/// Errors raised by the arithmetic, lattice and genus layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not an odd prime")]
    InvalidModulus(u32),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("zero polynomial is not allowed here")]
    ZeroInput,
    #[error("polynomial must be monic: {0}")]
    NotMonic(String),
    #[error("polynomial must be square-free: {0}")]
    NotSquarefree(String),
    #[error("{0} is a perfect square")]
    PerfectSquare(String),
    #[error("{0} is a square in K_inf (real quadratic case)")]
    RealQuadratic(String),
    #[error("degree bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("singular Gram matrix")]
    Singular,
    #[error("form is not definite")]
    NotDefinite,
    #[error("lattice is not reduced")]
    NotReduced,
    #[error("determinant mismatch: {0}")]
    DeterminantMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no lattice found: {0}")]
    NotFound(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
