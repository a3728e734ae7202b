use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Chart variables. `Z` and `Zb` are the Wirtinger pair, treated as
/// independent symbols by differentiation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Var {
    X,
    Y,
    T,
    S,
    Z,
    Zb,
}

pub const NVARS: usize = 6;

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::Y, Var::T, Var::S, Var::Z, Var::Zb];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::T => "t",
            Var::S => "s",
            Var::Z => "z",
            Var::Zb => "zb",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }

    pub fn is_conformal(self) -> bool {
        matches!(self, Var::Z | Var::Zb)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The logarithmic atom of a conformal chart: `log(1 - z zb)` on the
/// hyperbolic disc, `log(1 + z zb)` on the punctured sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LogKind {
    OneMinus,
    OnePlus,
}

impl LogKind {
    /// Sign `σ` in `w = 1 + σ·z·zb`.
    pub fn sigma(self) -> i64 {
        match self {
            LogKind::OneMinus => -1,
            LogKind::OnePlus => 1,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            LogKind::OneMinus => "log1m",
            LogKind::OnePlus => "log1p",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VarSet(u8);

impl VarSet {
    pub fn empty() -> Self {
        VarSet(0)
    }

    pub fn of(vars: &[Var]) -> Self {
        VarSet(vars.iter().fold(0, |acc, v| acc | (1 << v.index())))
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 & (1 << v.index()) != 0
    }

    pub fn insert(&mut self, v: Var) {
        self.0 |= 1 << v.index();
    }

    pub fn remove(&mut self, v: Var) {
        self.0 &= !(1 << v.index());
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn intersects(self, other: VarSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Var> {
        Var::ALL.into_iter().filter(move |v| self.contains(*v))
    }
}

/// Which atoms an expression may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AtomSet {
    pub vars: VarSet,
    /// Variable `v` of the exponential atoms `e^{m·v}`, if any.
    pub exp_base: Option<Var>,
    pub log: Option<LogKind>,
}

impl AtomSet {
    pub fn polynomial(vars: &[Var]) -> Self {
        AtomSet { vars: VarSet::of(vars), exp_base: None, log: None }
    }

    pub fn sol() -> Self {
        AtomSet { exp_base: Some(Var::T), ..Self::polynomial(&[Var::X, Var::Y, Var::T]) }
    }

    pub fn xyt() -> Self {
        Self::polynomial(&[Var::X, Var::Y, Var::T])
    }

    pub fn conformal(kind: LogKind) -> Self {
        AtomSet { log: Some(kind), ..Self::polynomial(&[Var::Z, Var::Zb]) }
    }

    pub fn line(v: Var) -> Self {
        Self::polynomial(&[v])
    }

    /// Disjoint union of two factor algebras.
    pub fn product(self, other: AtomSet) -> Result<AtomSet> {
        if self.vars.intersects(other.vars) {
            return Err(Error::Usage("factor algebras share a variable".into()));
        }
        let exp_base = match (self.exp_base, other.exp_base) {
            (Some(_), Some(_)) => {
                return Err(Error::Usage("both factors carry exponential atoms".into()))
            }
            (a, b) => a.or(b),
        };
        let log = match (self.log, other.log) {
            (Some(_), Some(_)) => {
                return Err(Error::Usage("both factors carry a log atom".into()))
            }
            (a, b) => a.or(b),
        };
        Ok(AtomSet { vars: self.vars.union(other.vars), exp_base, log })
    }

    /// True if every expression over `self` is also an expression over `other`.
    pub fn is_subset_of(&self, other: &AtomSet) -> bool {
        self.vars.is_subset(other.vars)
            && (self.exp_base.is_none() || self.exp_base == other.exp_base)
            && (self.log.is_none() || self.log == other.log)
    }

    pub fn rename(mut self, from: Var, to: Var) -> Self {
        if self.vars.contains(from) {
            self.vars.remove(from);
            self.vars.insert(to);
        }
        if self.exp_base == Some(from) {
            self.exp_base = Some(to);
        }
        self
    }
}

/// Power signature of a term: `L^log · e^{exp·base} · Π var^pows`.
///
/// The derived order is lexicographic on (log power, exponential weight,
/// variable exponents in `Var` order); expressions store terms in this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub log: u8,
    pub exp: i32,
    pub pows: [u32; NVARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var, k: u32) -> Self {
        let mut m = Monomial::default();
        m.pows[v.index()] = k;
        m
    }

    pub fn pow(&self, v: Var) -> u32 {
        self.pows[v.index()]
    }

    pub fn is_one(&self) -> bool {
        *self == Monomial::default()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut pows = self.pows;
        for (p, q) in pows.iter_mut().zip(other.pows) {
            *p += q;
        }
        Monomial { log: self.log + other.log, exp: self.exp + other.exp, pows }
    }

    pub fn has_conformal_power(&self) -> bool {
        self.pow(Var::Z) > 0 || self.pow(Var::Zb) > 0
    }

    /// Checks the monomial against an algebra, including the log-closure
    /// restriction (log power at most one, never times `z` or `zb`).
    pub fn check(&self, atoms: &AtomSet) -> Result<()> {
        for v in Var::ALL {
            if self.pow(v) > 0 && !atoms.vars.contains(v) {
                return Err(Error::Usage(format!("variable {v} is not in this algebra")));
            }
        }
        if self.exp != 0 && atoms.exp_base.is_none() {
            return Err(Error::Usage("exponential atom is not in this algebra".into()));
        }
        if self.log > 0 {
            if atoms.log.is_none() {
                return Err(Error::Usage("log atom is not in this algebra".into()));
            }
            if self.log > 1 {
                return Err(Error::Closure("log atom raised to a power above one".into()));
            }
            if self.has_conformal_power() {
                return Err(Error::Closure(
                    "log atom multiplied by a power of z or zb".into(),
                ));
            }
        }
        Ok(())
    }
}
