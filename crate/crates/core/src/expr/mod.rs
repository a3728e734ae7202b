//! Canonical term algebra: atoms, expressions, and their text syntax.

mod atoms;
mod canonical;
mod parse;

pub use atoms::{AtomSet, LogKind, Monomial, Var, VarSet, NVARS};
pub use canonical::{Expr, VarValues};
pub use parse::parse;
