use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use super::atoms::{AtomSet, LogKind, Monomial, Var, NVARS};
use crate::error::{Error, Result};
use crate::numeric::{GaussianRational, Rational};

/// A finite sum of terms `c · m` in an atom algebra, kept canonical: terms
/// sorted by monomial, no repeated monomial, no zero coefficient.
///
/// Two expressions over the same algebra are mathematically equal exactly
/// when they compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Expr {
    atoms: AtomSet,
    terms: BTreeMap<Monomial, GaussianRational>,
}

/// Complex values assigned to the chart variables for evaluation.
pub type VarValues = [Complex64; NVARS];

impl Expr {
    pub fn zero(atoms: AtomSet) -> Self {
        Expr { atoms, terms: BTreeMap::new() }
    }

    pub fn constant(atoms: AtomSet, c: GaussianRational) -> Self {
        let mut e = Expr::zero(atoms);
        if !c.is_zero() {
            e.terms.insert(Monomial::one(), c);
        }
        e
    }

    pub fn one(atoms: AtomSet) -> Self {
        Self::constant(atoms, GaussianRational::one())
    }

    pub fn term(atoms: AtomSet, c: GaussianRational, m: Monomial) -> Result<Self> {
        m.check(&atoms)?;
        let mut e = Expr::zero(atoms);
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        Ok(e)
    }

    pub fn var(atoms: AtomSet, v: Var) -> Result<Self> {
        Self::term(atoms, GaussianRational::one(), Monomial::var(v, 1))
    }

    /// `e^{m·base}` for the algebra's exponential base variable.
    pub fn exp(atoms: AtomSet, weight: i32) -> Result<Self> {
        let m = Monomial { exp: weight, ..Monomial::default() };
        Self::term(atoms, GaussianRational::one(), m)
    }

    pub fn log(atoms: AtomSet) -> Result<Self> {
        let m = Monomial { log: 1, ..Monomial::default() };
        Self::term(atoms, GaussianRational::one(), m)
    }

    /// Builds from `(coefficient, monomial)` pairs, merging like terms.
    pub fn from_terms(
        atoms: AtomSet,
        terms: impl IntoIterator<Item = (GaussianRational, Monomial)>,
    ) -> Result<Self> {
        let mut e = Expr::zero(atoms);
        for (c, m) in terms {
            m.check(&atoms)?;
            e.accumulate(m, &c);
        }
        Ok(e)
    }

    fn accumulate(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn atoms(&self) -> AtomSet {
        self.atoms
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact zero test; the canonical form makes this a decision procedure.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn has_log(&self) -> bool {
        self.terms.keys().any(|m| m.log > 0)
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|&v| {
                self.terms.keys().any(|m| {
                    m.pow(v) > 0 || (m.exp != 0 && self.atoms.exp_base == Some(v))
                })
            })
            .collect()
    }

    fn same_algebra(&self, other: &Expr) -> Result<()> {
        if self.atoms != other.atoms {
            return Err(Error::Usage("operands belong to different atom algebras".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Expr) -> Result<Expr> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(*m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Expr) -> Result<Expr> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Expr {
        Expr {
            atoms: self.atoms,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, k: &GaussianRational) -> Expr {
        if k.is_zero() {
            return Expr::zero(self.atoms);
        }
        Expr {
            atoms: self.atoms,
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Expr {
        self.scale(&GaussianRational::integer(k))
    }

    /// Distributed product. Fails with a closure error if a log atom would be
    /// squared or multiplied by `z`/`zb`.
    pub fn mul(&self, other: &Expr) -> Result<Expr> {
        self.same_algebra(other)?;
        let mut out = Expr::zero(self.atoms);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                m.check(&self.atoms)?;
                out.accumulate(m, &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Expr> {
        let mut acc = Expr::one(self.atoms);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn sum<'a>(atoms: AtomSet, items: impl IntoIterator<Item = &'a Expr>) -> Result<Expr> {
        items.into_iter().try_fold(Expr::zero(atoms), |acc, e| acc.add(e))
    }

    /// Exact partial derivative. `z` and `zb` are independent; differentiating
    /// a log-bearing term by either is refused.
    pub fn differentiate(&self, v: Var) -> Result<Expr> {
        if !self.atoms.vars.contains(v) {
            return Err(Error::Usage(format!("variable {v} is not in this algebra")));
        }
        let mut out = Expr::zero(self.atoms);
        for (m, c) in &self.terms {
            if m.log > 0 && v.is_conformal() {
                return Err(Error::Closure(format!(
                    "derivative of the log atom by {v} leaves the algebra"
                )));
            }
            let k = m.pow(v);
            if k > 0 {
                let mut d = *m;
                d.pows[v.index()] -= 1;
                out.accumulate(d, &c.scale(&Rational::integer(k as i64)));
            }
            if m.exp != 0 && self.atoms.exp_base == Some(v) {
                out.accumulate(*m, &c.scale(&Rational::integer(m.exp as i64)));
            }
        }
        Ok(out)
    }

    pub fn differentiate2(&self, a: Var, b: Var) -> Result<Expr> {
        self.differentiate(a)?.differentiate(b)
    }

    /// Splits `f = f0 + L·f1` with `f0`, `f1` log-free.
    pub fn split_log(&self) -> (Expr, Expr) {
        let mut f0 = Expr::zero(self.atoms);
        let mut f1 = Expr::zero(self.atoms);
        for (m, c) in &self.terms {
            if m.log > 0 {
                f1.terms.insert(Monomial { log: 0, ..*m }, c.clone());
            } else {
                f0.terms.insert(*m, c.clone());
            }
        }
        (f0, f1)
    }

    /// Re-homes the expression in a larger algebra.
    pub fn embed(&self, target: AtomSet) -> Result<Expr> {
        if !self.atoms.is_subset_of(&target) {
            return Err(Error::Usage("expression does not embed in the target algebra".into()));
        }
        Ok(Expr { atoms: target, terms: self.terms.clone() })
    }

    /// Renames `from` to `to` (including the exponential base) and re-homes
    /// the result in `target`.
    pub fn rename(&self, from: Var, to: Var, target: AtomSet) -> Result<Expr> {
        if from == to {
            return self.embed(target);
        }
        let renamed_atoms = self.atoms.rename(from, to);
        if !renamed_atoms.is_subset_of(&target) {
            return Err(Error::Usage("renamed expression does not embed in the target".into()));
        }
        let mut out = Expr::zero(target);
        for (m, c) in &self.terms {
            let mut r = *m;
            r.pows[to.index()] = m.pow(from);
            r.pows[from.index()] = 0;
            if m.pow(to) > 0 {
                return Err(Error::Usage(format!("{to} already occurs; cannot rename {from}")));
            }
            out.accumulate(r, c);
        }
        Ok(out)
    }

    /// The reflection `(x, y, t) ↦ (y, x, -t)` on the Sol algebra.
    pub fn mirror_xy(&self) -> Expr {
        let mut out = Expr::zero(self.atoms);
        for (m, c) in &self.terms {
            let mut r = *m;
            r.pows.swap(Var::X.index(), Var::Y.index());
            r.exp = -m.exp;
            let c = if m.pow(Var::T) % 2 == 1 { -c } else { c.clone() };
            out.accumulate(r, &c);
        }
        out
    }

    pub fn conj_coefficients(&self) -> Expr {
        Expr {
            atoms: self.atoms,
            terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect(),
        }
    }

    /// Floating value at an assignment of the chart variables. Log atoms are
    /// real logarithms of `1 ± z·zb`, which must be positive.
    pub fn evaluate(&self, values: &VarValues) -> Result<Complex64> {
        let log_value = match (self.atoms.log, self.has_log()) {
            (Some(kind), true) => Some(log_atom_value(kind, values)?),
            _ => None,
        };
        let base = self.atoms.exp_base.map(|v| values[v.index()]);
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = c.to_complex();
            for var in Var::ALL {
                let k = m.pow(var);
                if k > 0 {
                    v *= values[var.index()].powu(k);
                }
            }
            if m.exp != 0 {
                v *= (base.expect("checked by Monomial::check") * m.exp as f64).exp();
            }
            if m.log > 0 {
                v *= log_value.expect("log value computed above");
            }
            acc += v;
        }
        Ok(acc)
    }
}

fn log_atom_value(kind: LogKind, values: &VarValues) -> Result<f64> {
    let zz = values[Var::Z.index()] * values[Var::Zb.index()];
    let w = Complex64::new(1.0, 0.0) + zz * kind.sigma() as f64;
    if w.re <= 0.0 || w.im.abs() > 1e-12 * w.norm().max(1.0) {
        return Err(Error::Domain(format!(
            "{} needs 1 {} z·zb to be real and positive",
            kind.token(),
            if kind.sigma() < 0 { "-" } else { "+" }
        )));
    }
    Ok(w.re.ln())
}

impl Expr {
    fn write_monomial(&self, f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
        let mut factors: Vec<String> = Vec::new();
        if m.log > 0 {
            factors.push(self.atoms.log.map_or("log", LogKind::token).to_string());
        }
        for v in Var::ALL {
            match m.pow(v) {
                0 => {}
                1 => factors.push(v.name().to_string()),
                k => factors.push(format!("{}^{k}", v.name())),
            }
        }
        if m.exp != 0 {
            factors.push(format!("E({})", m.exp));
        }
        f.write_str(&factors.join("*"))
    }
}

/// Canonical text in descending term order, e.g. `16*x^4 - 48*x^2*E(-2) + 6*E(-4)`.
/// The output re-parses to the same expression.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = (c.im.is_zero() && c.re.is_negative())
                || (c.re.is_zero() && c.im.is_negative());
            let shown = if negative { -c } else { c.clone() };
            match (i == 0, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{shown}")?;
            } else if shown.is_one() {
                self.write_monomial(f, m)?;
            } else {
                write!(f, "{shown}*")?;
                self.write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}
