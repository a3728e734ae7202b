//! Exact tension-field calculus on the Thurston model geometries.
//!
//! Functions are canonical sums of terms over a chart-specific atom algebra
//! with Gaussian-rational coefficients ([`Expr`]). Each [`Geometry`] applies
//! its Laplace–Beltrami (tension) and conformality operators exactly, so
//! properness orders of polyharmonic functions are decided without
//! tolerances. The [`oracle`] module re-derives the tension field numerically
//! from the metric to check the symbolic rules.

pub mod error;
pub mod expr;
pub mod families;
pub mod geometry;
pub mod numeric;
pub mod oracle;
pub mod suite;

pub use error::{Error, Result};
pub use expr::{parse, AtomSet, Expr, LogKind, Monomial, Var};
pub use geometry::{Convention, Geometry, Order, ProductGeometry, VerificationReport};
pub use numeric::{ExactMatrix, GaussianRational, Rational};
