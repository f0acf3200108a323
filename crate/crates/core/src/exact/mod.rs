//! Exact rational and sparse multivariate polynomial arithmetic.

mod monomial;
mod order;
mod poly;
pub mod rational;
mod text;

pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use poly::{MultiPoly, Ring};
pub use rational::{rational_arith, Rational, RationalOp};
