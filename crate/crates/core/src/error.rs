use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("infinite variety: ideal is not zero-dimensional (no pure power of `{0}` among leading monomials), Hermite counting does not apply")]
    InfiniteVariety(String),
    #[error("collision between vortices {0} and {1}")]
    Collision(usize, usize),
    #[error("not a critical point: gradient norm {norm:e} exceeds tolerance {tol:e}")]
    NotCritical { norm: f64, tol: f64 },
    #[error("newton iteration failed: {0}")]
    NewtonFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
