//! Exact arithmetic for definite ternary quadratic forms over F_q[t]:
//! polynomial arithmetic, L-polynomials and class numbers of imaginary
//! quadratic orders, local invariants, lattice reduction and enumeration,
//! genus class lists, even Clifford orders and the closed-form identities
//! that tie them together.

pub mod clifford;
pub mod error;
pub mod ffpoly;
pub mod formulas;
pub mod genus;
pub mod lattice;
pub mod localsym;
pub mod matrix;
pub mod upoly;
pub mod verify;
pub mod zeta_l;

pub use error::{Error, Result};
