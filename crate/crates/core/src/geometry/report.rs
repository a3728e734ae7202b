use std::fmt;

use serde::Serialize;

use super::Convention;
use crate::oracle::ResidualReport;
use crate::Expr;

/// Properness order of a function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Order {
    /// The zero function; no order is assigned.
    Zero,
    /// Proper `r`-harmonic: `τ^r f = 0`, `τ^{r-1} f ≠ 0`.
    Proper(u32),
    /// `τ^k f ≠ 0` for every `k` up to the bound.
    ExceedsBound(u32),
}

impl Order {
    pub fn proper(self) -> Option<u32> {
        match self {
            Order::Proper(r) => Some(r),
            _ => None,
        }
    }

    /// Integer form used in reports: `r`, `0` for the zero function, `-1`
    /// past the bound.
    pub fn as_i64(self) -> i64 {
        match self {
            Order::Zero => 0,
            Order::Proper(r) => r as i64,
            Order::ExceedsBound(_) => -1,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Zero => f.write_str("0 (zero function)"),
            Order::Proper(1) => f.write_str("1 (harmonic)"),
            Order::Proper(2) => f.write_str("2 (biharmonic)"),
            Order::Proper(r) => write!(f, "{r}"),
            Order::ExceedsBound(b) => write!(f, "exceeds bound {b}"),
        }
    }
}

/// The tension chain of a function and its properness order.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub geometry: String,
    pub convention: Convention,
    pub input: Expr,
    /// `chain[i] = τ^i(input)`; ends at the first zero, or after `r_max` steps.
    pub chain: Vec<Expr>,
    pub order: Order,
    pub residuals: Option<ResidualReport>,
}

impl VerificationReport {
    pub fn printed_chain(&self) -> Vec<String> {
        self.chain.iter().map(ToString::to_string).collect()
    }
}
