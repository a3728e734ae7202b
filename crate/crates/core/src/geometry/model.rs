//! The individual charts: symbolic inverse metrics, numeric metrics,
//! domains and sampling boxes.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::expr::{parse, AtomSet, LogKind, Var, VarValues};
use crate::Expr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    /// `e^{2t}dx² + e^{-2t}dy² + dt²`
    Sol,
    /// `dx² + dy² + (dt - x dy)²`
    Nil,
    /// `(dx² + dy²)/y² + (dt + dx/y)²`, upper half space `y > 0`
    Sl2,
    /// `4(dx² + dy²)/(1 - x² - y²)²` on the unit disc
    HyperbolicDisc,
    /// `4(dx² + dy²)/(1 + x² + y²)²` on the plane
    PuncturedSphere,
    /// `dt²`
    Line,
}

impl Model {
    pub fn id(self) -> &'static str {
        match self {
            Model::Sol => "sol",
            Model::Nil => "nil",
            Model::Sl2 => "sl2",
            Model::HyperbolicDisc => "h2",
            Model::PuncturedSphere => "s2p",
            Model::Line => "line",
        }
    }

    pub fn native_atoms(self) -> AtomSet {
        match self {
            Model::Sol => AtomSet::sol(),
            Model::Nil | Model::Sl2 => AtomSet::xyt(),
            Model::HyperbolicDisc => AtomSet::conformal(LogKind::OneMinus),
            Model::PuncturedSphere => AtomSet::conformal(LogKind::OnePlus),
            Model::Line => AtomSet::line(Var::T),
        }
    }

    pub fn log_kind(self) -> Option<LogKind> {
        self.native_atoms().log
    }

    pub fn dim(self) -> usize {
        match self {
            Model::Sol | Model::Nil | Model::Sl2 => 3,
            Model::HyperbolicDisc | Model::PuncturedSphere => 2,
            Model::Line => 1,
        }
    }

    pub fn coordinate_names(self) -> &'static [&'static str] {
        match self {
            Model::Sol | Model::Nil | Model::Sl2 => &["x", "y", "t"],
            Model::HyperbolicDisc | Model::PuncturedSphere => &["x", "y"],
            Model::Line => &["t"],
        }
    }

    /// Upper-triangular entries `(a, b, g^{ab})` of the inverse metric over
    /// the native real variables. Conformal charts return nothing here; their
    /// `g^{z zb}` entry is handled together with the log atom.
    pub fn inverse_metric_entries(self) -> Vec<(Var, Var, Expr)> {
        let e = |src: &str| parse(src, self.native_atoms()).expect("built-in entry");
        match self {
            Model::Sol => vec![
                (Var::X, Var::X, e("E(-2)")),
                (Var::Y, Var::Y, e("E(2)")),
                (Var::T, Var::T, e("1")),
            ],
            Model::Nil => vec![
                (Var::X, Var::X, e("1")),
                (Var::Y, Var::Y, e("1")),
                (Var::Y, Var::T, e("x")),
                (Var::T, Var::T, e("1 + x^2")),
            ],
            Model::Sl2 => vec![
                (Var::X, Var::X, e("y^2")),
                (Var::Y, Var::Y, e("y^2")),
                (Var::X, Var::T, e("-y")),
                (Var::T, Var::T, e("2")),
            ],
            Model::Line => vec![(Var::T, Var::T, e("1"))],
            Model::HyperbolicDisc | Model::PuncturedSphere => Vec::new(),
        }
    }

    /// Metric matrix in real chart coordinates.
    pub fn metric(self, p: &[f64]) -> DMatrix<f64> {
        match self {
            Model::Sol => {
                let t = p[2];
                DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                    (2.0 * t).exp(),
                    (-2.0 * t).exp(),
                    1.0,
                ]))
            }
            Model::Nil => {
                let x = p[0];
                DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, 1.0 + x * x, -x, 0.0, -x, 1.0])
            }
            Model::Sl2 => {
                let y = p[1];
                let (a, b) = (1.0 / (y * y), 1.0 / y);
                DMatrix::from_row_slice(3, 3, &[2.0 * a, 0.0, b, 0.0, a, 0.0, b, 0.0, 1.0])
            }
            Model::HyperbolicDisc | Model::PuncturedSphere => {
                let sigma = self.log_kind().expect("conformal").sigma() as f64;
                let w = 1.0 + sigma * (p[0] * p[0] + p[1] * p[1]);
                DMatrix::identity(2, 2) * (4.0 / (w * w))
            }
            Model::Line => DMatrix::identity(1, 1),
        }
    }

    /// Rejects points outside the chart, or closer than `margin` to its
    /// singular locus.
    pub fn check_domain(self, p: &[f64], margin: f64) -> Result<()> {
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("non-finite coordinate".into()));
        }
        match self {
            Model::Sl2 if p[1] <= margin => {
                Err(Error::Domain(format!("y = {} outside y > {margin}", p[1])))
            }
            Model::HyperbolicDisc if p[0] * p[0] + p[1] * p[1] >= 1.0 - margin => Err(
                Error::Domain(format!("|z|^2 = {} outside the disc", p[0] * p[0] + p[1] * p[1])),
            ),
            _ => Ok(()),
        }
    }

    /// A random point of the sampling box.
    pub fn sample<R: Rng>(self, rng: &mut R) -> Vec<f64> {
        let mut u = || rng.gen_range(-1.0..=1.0);
        match self {
            Model::Sol | Model::Nil => vec![u(), u(), u()],
            Model::Sl2 => {
                let x = u();
                let t = u();
                let y = 0.5 + 1.5 * (u() + 1.0) / 2.0;
                vec![x, y, t]
            }
            Model::HyperbolicDisc => loop {
                let (a, b) = (0.9 * u(), 0.9 * u());
                if a * a + b * b <= 0.81 {
                    break vec![a, b];
                }
            },
            Model::PuncturedSphere => vec![u(), u()],
            Model::Line => vec![u()],
        }
    }

    /// Writes the values of the (possibly renamed) variables for the real
    /// point `p`.
    pub fn assign(self, p: &[f64], rename: Option<(Var, Var)>, out: &mut VarValues) {
        let var = |v: Var| match rename {
            Some((from, to)) if from == v => to,
            _ => v,
        };
        let re = |v: f64| Complex64::new(v, 0.0);
        match self {
            Model::Sol | Model::Nil | Model::Sl2 => {
                out[var(Var::X).index()] = re(p[0]);
                out[var(Var::Y).index()] = re(p[1]);
                out[var(Var::T).index()] = re(p[2]);
            }
            Model::HyperbolicDisc | Model::PuncturedSphere => {
                out[Var::Z.index()] = Complex64::new(p[0], p[1]);
                out[Var::Zb.index()] = Complex64::new(p[0], -p[1]);
            }
            Model::Line => out[var(Var::T).index()] = re(p[0]),
        }
    }
}
