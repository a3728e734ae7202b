//! Model geometries and their tension (Laplace–Beltrami) and conformality
//! operators.
//!
//! Every chart used here has a divergence-free inverse metric density, so
//! the tension field is the pure second-order part
//! `τ(f) = Σ g^{ab} ∂_a ∂_b f`, and `κ(f, h) = Σ g^{ab} ∂_a f ∂_b h`.
//! The finite-difference oracle checks this against the full divergence
//! form.

mod model;
mod product;
mod report;

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

pub use model::Model;
pub use product::{binomial, product, product_tension_binomial, ProductGeometry};
pub use report::{Order, VerificationReport};

use crate::error::{Error, Result};
use crate::expr::{parse, AtomSet, LogKind, Var, VarValues};
use crate::numeric::GaussianRational;
use crate::Expr;

pub const DEFAULT_R_MAX: u32 = 8;

/// Normalisation of the conformal factor on the disc and punctured-sphere
/// charts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `τ = (1 ∓ z zb)² ∂z ∂zb`, as the conformal metric `4|dz|²/(1 ∓ |z|²)²` implies.
    #[default]
    Metric,
    /// `τ = 4(1 ∓ z zb)² ∂z ∂zb`, the normalisation under which `τ(-log(1 - z zb)) = 4`.
    Printed,
}

impl Convention {
    /// The constant `c` in `τ = c·w²·∂z∂zb`.
    pub fn factor(self) -> i64 {
        match self {
            Convention::Metric => 1,
            Convention::Printed => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::Metric => "metric",
            Convention::Printed => "paper",
        }
    }

    /// Accepts `metric` and `paper` (alias `printed`).
    pub fn from_name(s: &str) -> Option<Convention> {
        match s {
            "metric" => Some(Convention::Metric),
            "paper" | "printed" => Some(Convention::Printed),
            _ => None,
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One factor of a (possibly trivial) product chart.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Block {
    pub model: Model,
    pub rename: Option<(Var, Var)>,
}

impl Block {
    fn atoms(&self) -> AtomSet {
        let a = self.model.native_atoms();
        match self.rename {
            Some((from, to)) => a.rename(from, to),
            None => a,
        }
    }
}

#[derive(Debug, Clone)]
struct Conformal {
    kind: LogKind,
    /// `w = 1 + σ·z·zb`
    w: Expr,
}

/// A chart with its symbolic operators and numeric metric.
#[derive(Debug, Clone)]
pub struct Geometry {
    id: String,
    blocks: Vec<Block>,
    atoms: AtomSet,
    convention: Convention,
    entries: Vec<(Var, Var, Expr)>,
    conformal: Option<Conformal>,
}

impl PartialEq for Geometry {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks && self.convention == other.convention
    }
}

impl Geometry {
    pub(crate) fn from_blocks(id: String, blocks: Vec<Block>, convention: Convention) -> Result<Self> {
        let mut atoms = blocks[0].atoms();
        for b in &blocks[1..] {
            atoms = atoms.product(b.atoms())?;
        }
        let mut entries = Vec::new();
        let mut conformal = None;
        for b in &blocks {
            for (a, c, coef) in b.model.inverse_metric_entries() {
                let (a, c, coef) = match b.rename {
                    Some((from, to)) => {
                        let r = |v: Var| if v == from { to } else { v };
                        (r(a), r(c), coef.rename(from, to, atoms)?)
                    }
                    None => (a, c, coef.embed(atoms)?),
                };
                entries.push((a, c, coef));
            }
            if let Some(kind) = b.model.log_kind() {
                let w = parse(if kind.sigma() < 0 { "1 - z*zb" } else { "1 + z*zb" }, atoms)?;
                conformal = Some(Conformal { kind, w });
            }
        }
        Ok(Geometry { id, blocks, atoms, convention, entries, conformal })
    }

    pub fn model(model: Model, convention: Convention) -> Self {
        Self::from_blocks(model.id().to_string(), vec![Block { model, rename: None }], convention)
            .expect("single-model chart")
    }

    pub fn sol() -> Self {
        Self::model(Model::Sol, Convention::Metric)
    }

    pub fn nil() -> Self {
        Self::model(Model::Nil, Convention::Metric)
    }

    pub fn sl2() -> Self {
        Self::model(Model::Sl2, Convention::Metric)
    }

    pub fn line() -> Self {
        Self::model(Model::Line, Convention::Metric)
    }

    pub fn hyperbolic_disc(convention: Convention) -> Self {
        Self::model(Model::HyperbolicDisc, convention)
    }

    pub fn punctured_sphere(convention: Convention) -> Self {
        Self::model(Model::PuncturedSphere, convention)
    }

    /// `H² × ℝ` with coordinates `(z, zb, t)`.
    pub fn h2xr(convention: Convention) -> Self {
        let mut g = product(&Self::hyperbolic_disc(convention), &Self::line())
            .expect("disjoint factors")
            .combined;
        g.id = "h2xr".into();
        g
    }

    /// Punctured `S² × ℝ` with coordinates `(z, zb, t)`.
    pub fn s2pxr(convention: Convention) -> Self {
        let mut g = product(&Self::punctured_sphere(convention), &Self::line())
            .expect("disjoint factors")
            .combined;
        g.id = "s2pxr".into();
        g
    }

    /// Looks up `sol, nil, sl2, h2, s2p, h2xr, s2pxr, line` or
    /// `product:<id>x<id>`.
    pub fn by_id(id: &str, convention: Convention) -> Result<Self> {
        let base = |s: &str| -> Option<Geometry> {
            Some(match s {
                "sol" => Self::model(Model::Sol, convention),
                "nil" => Self::model(Model::Nil, convention),
                "sl2" => Self::model(Model::Sl2, convention),
                "h2" => Self::hyperbolic_disc(convention),
                "s2p" => Self::punctured_sphere(convention),
                "line" => Self::model(Model::Line, convention),
                "h2xr" => Self::h2xr(convention),
                "s2pxr" => Self::s2pxr(convention),
                _ => return None,
            })
        };
        if let Some(g) = base(id) {
            return Ok(g);
        }
        if let Some(rest) = id.strip_prefix("product:") {
            return Ok(ProductGeometry::by_id(rest, convention)?.combined);
        }
        Err(Error::Usage(format!("unknown geometry '{id}'")))
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub(crate) fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn atoms(&self) -> AtomSet {
        self.atoms
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn with_convention(&self, convention: Convention) -> Self {
        Geometry { convention, ..self.clone() }
    }

    /// True when the chart has a conformal (disc or sphere) factor, the only
    /// place the convention matters.
    pub fn has_conformal_factor(&self) -> bool {
        self.conformal.is_some()
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.model.dim()).sum()
    }

    pub fn coordinate_names(&self) -> Vec<String> {
        self.blocks
            .iter()
            .flat_map(|b| {
                b.model.coordinate_names().iter().map(move |n| match b.rename {
                    Some((from, to)) if from.name() == *n => to.name().to_string(),
                    _ => n.to_string(),
                })
            })
            .collect()
    }

    pub fn parse(&self, src: &str) -> Result<Expr> {
        parse(src, self.atoms)
    }

    fn check_operand(&self, f: &Expr) -> Result<()> {
        if f.atoms() != self.atoms {
            return Err(Error::Usage(format!(
                "expression is not in the algebra of geometry {}",
                self.id
            )));
        }
        Ok(())
    }

    /// The tension field `τ(f)`, exactly.
    pub fn tension(&self, f: &Expr) -> Result<Expr> {
        self.check_operand(f)?;
        let mut out = Expr::zero(self.atoms);
        for (a, b, coef) in &self.entries {
            let d = f.differentiate2(*a, *b)?;
            let d = if a == b { d } else { d.scale_int(2) };
            out = out.add(&coef.mul(&d)?)?;
        }
        if let Some(conf) = &self.conformal {
            let c = self.convention.factor();
            let (f0, f1) = f.split_log();
            let mixed = f0.differentiate2(Var::Z, Var::Zb)?;
            out = out.add(&conf.w.pow(2)?.mul(&mixed)?.scale_int(c))?;
            // τ(L) = c·σ, and the log coefficient f1 is free of z, zb.
            out = out.add(&f1.scale_int(c * conf.kind.sigma()))?;
        }
        Ok(out)
    }

    /// The conformality operator `κ(f, h) = g(∇f, ∇h)`, exactly.
    pub fn conformality(&self, f: &Expr, h: &Expr) -> Result<Expr> {
        self.check_operand(f)?;
        self.check_operand(h)?;
        let mut out = Expr::zero(self.atoms);
        for (a, b, coef) in &self.entries {
            let (fa, ha) = (f.differentiate(*a)?, h.differentiate(*a)?);
            let pairing = if a == b {
                fa.mul(&ha)?
            } else {
                let (fb, hb) = (f.differentiate(*b)?, h.differentiate(*b)?);
                fa.mul(&hb)?.add(&fb.mul(&ha)?)?
            };
            out = out.add(&coef.mul(&pairing)?)?;
        }
        if let Some(conf) = &self.conformal {
            out = out.add(&self.conformal_pairing(conf, f, h)?)?;
        }
        Ok(out)
    }

    /// `(c/2)·w²·(f_z h_zb + f_zb h_z)` with the log parts differentiated by
    /// hand: `L_z = σ·zb/w`, `L_zb = σ·z/w`.
    fn conformal_pairing(&self, conf: &Conformal, f: &Expr, h: &Expr) -> Result<Expr> {
        let atoms = self.atoms;
        let (f0, f1) = f.split_log();
        let (h0, h1) = h.split_log();
        let z = Expr::var(atoms, Var::Z)?;
        let zb = Expr::var(atoms, Var::Zb)?;
        let (f0z, f0zb) = (f0.differentiate(Var::Z)?, f0.differentiate(Var::Zb)?);
        let (h0z, h0zb) = (h0.differentiate(Var::Z)?, h0.differentiate(Var::Zb)?);

        let smooth = f0z.mul(&h0zb)?.add(&f0zb.mul(&h0z)?)?;
        let mut acc = conf.w.pow(2)?.mul(&smooth)?;

        let cross = z
            .mul(&f0z)?
            .mul(&h1)?
            .add(&zb.mul(&f0zb)?.mul(&h1)?)?
            .add(&zb.mul(&f1)?.mul(&h0zb)?)?
            .add(&z.mul(&f1)?.mul(&h0z)?)?;
        acc = acc.add(&conf.w.mul(&cross)?.scale_int(conf.kind.sigma()))?;
        acc = acc.add(&z.mul(&zb)?.mul(&f1)?.mul(&h1)?.scale_int(2))?;

        let half_c = GaussianRational::ratio(self.convention.factor(), 2);
        Ok(acc.scale(&half_c))
    }

    /// `[f, τf, …, τ^r f]`.
    pub fn iterated_tension(&self, f: &Expr, r: u32) -> Result<Vec<Expr>> {
        let mut chain = vec![f.clone()];
        for _ in 0..r {
            let next = self.tension(chain.last().expect("non-empty"))?;
            chain.push(next);
        }
        Ok(chain)
    }

    /// Determines the smallest `r ≤ r_max` with `τ^r f = 0`.
    pub fn classify(&self, f: &Expr, r_max: u32) -> Result<VerificationReport> {
        if r_max == 0 {
            return Err(Error::Usage("r_max must be at least 1".into()));
        }
        self.check_operand(f)?;
        let mut chain = vec![f.clone()];
        let order = if f.is_zero() {
            Order::Zero
        } else {
            loop {
                let next = self.tension(chain.last().expect("non-empty"))?;
                let done = next.is_zero();
                chain.push(next);
                if done {
                    break Order::Proper(chain.len() as u32 - 1);
                }
                if chain.len() as u32 > r_max {
                    break Order::ExceedsBound(r_max);
                }
            }
        };
        Ok(VerificationReport {
            geometry: self.id.clone(),
            convention: self.convention,
            input: f.clone(),
            chain,
            order,
            residuals: None,
        })
    }

    /// The metric matrix in real chart coordinates.
    pub fn metric_at(&self, p: &[f64]) -> Result<DMatrix<f64>> {
        self.check_domain(p, 0.0)?;
        let n = self.dim();
        let mut g = DMatrix::zeros(n, n);
        let mut off = 0;
        for b in &self.blocks {
            let d = b.model.dim();
            g.view_mut((off, off), (d, d)).copy_from(&b.model.metric(&p[off..off + d]));
            off += d;
        }
        Ok(g)
    }

    pub fn check_domain(&self, p: &[f64], margin: f64) -> Result<()> {
        if p.len() != self.dim() {
            return Err(Error::Usage(format!(
                "geometry {} takes {} coordinates, got {}",
                self.id,
                self.dim(),
                p.len()
            )));
        }
        let mut off = 0;
        for b in &self.blocks {
            let d = b.model.dim();
            b.model.check_domain(&p[off..off + d], margin)?;
            off += d;
        }
        Ok(())
    }

    pub fn sample_point<R: Rng>(&self, rng: &mut R) -> Vec<f64> {
        self.blocks.iter().flat_map(|b| b.model.sample(rng)).collect()
    }

    /// Variable values at the real point `p` (`z = x + iy`, `zb = x - iy` on
    /// conformal factors).
    pub fn assignment(&self, p: &[f64]) -> Result<VarValues> {
        self.check_domain(p, 0.0)?;
        let mut values = [Complex64::new(0.0, 0.0); crate::expr::NVARS];
        let mut off = 0;
        for b in &self.blocks {
            let d = b.model.dim();
            b.model.assign(&p[off..off + d], b.rename, &mut values);
            off += d;
        }
        Ok(values)
    }

    pub fn evaluate(&self, f: &Expr, p: &[f64]) -> Result<Complex64> {
        self.check_operand(f)?;
        f.evaluate(&self.assignment(p)?)
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}
