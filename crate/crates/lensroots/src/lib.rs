//! Roots of mixed polynomials f(z, zbar): find them, sign them, count
//! them, certify the signed count by a winding number, and build the
//! lens-equation families whose root counts the library is about.
//!
//! The entry point is [`solver::solve_all`]; everything else supports it
//! or consumes its [`solver::RootReport`].

pub mod classify;
pub mod cli;
pub mod error;
pub mod families;
pub mod mixedpoly;
pub mod plot;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use mixedpoly::MixedPolynomial;
pub use solver::{solve_all, RootReport};
