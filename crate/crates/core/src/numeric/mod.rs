//! Exact arithmetic: rationals, Gaussian rationals, and dense linear algebra
//! over them.

mod gaussian;
mod matrix;
mod rational;

pub use gaussian::GaussianRational;
pub use matrix::{normalize_leading, ExactMatrix};
pub use rational::{ParseRationalError, Rational};
