//! Relative equilibria of the (1+N)-point-vortex problem.
//!
//! One strong vortex of unit circulation interacts with `N` weak vortices of
//! circulation `ε μᵢ`. As `ε → 0` the weak vortices settle on the unit
//! circle at angular positions that are critical points of the reduced
//! potential
//!
//! ```text
//! V(θ) = -Σ_{i<j} μᵢ μⱼ [cos(θᵢ - θⱼ) + ½ log(2 - 2 cos(θᵢ - θⱼ))]
//! ```
//!
//! The crate finds those critical points numerically ([`search`]),
//! classifies their linear stability through the weighted Hessian
//! `μ⁻¹ V_θθ` ([`potential`]), certifies how many there are with exact
//! Gröbner bases and Hermite's root-counting method ([`groebner`],
//! [`hermite`], [`algebraic`]), and continues them to finite `ε` with Newton's
//! method on the full vortex equations ([`dynamics`]).

pub mod algebraic;
pub mod dynamics;
pub mod error;
pub mod exact;
pub mod export;
pub mod groebner;
pub mod hermite;
pub mod par;
pub mod potential;
pub mod search;

pub use error::{Error, Result};
