//! Finite-difference Laplace–Beltrami from the metric alone.
//!
//! The oracle never looks at the symbolic operator rules: it differences the
//! numeric metric and the function values, using the divergence form
//! expanded as
//!
//! `τf = g^{ij} ∂_i∂_j f + (1/√|g|) ∂_j(g^{ij} √|g|) ∂_i f`
//!
//! with central differences throughout and Richardson extrapolation over
//! successive step halvings.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::Expr;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleConfig {
    /// Coarsest finite-difference step.
    pub step: f64,
    /// Number of step halvings combined by Richardson extrapolation.
    pub levels: u32,
    pub rel_tol: f64,
    /// Floor of the relative-error denominator: the error at a point is
    /// `|fd - sym| / max(|sym|, abs_floor)`.
    pub abs_floor: f64,
    pub samples: usize,
    pub seed: u64,
    /// Distance kept from singular chart loci (`|z| = 1`, `y = 0`).
    pub margin: f64,
    /// Number of chain levels checked: level `k` compares `τ^k f` with the
    /// finite-difference tension of `τ^{k-1} f`.
    pub depth: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            step: 1e-3,
            levels: 2,
            rel_tol: 1e-6,
            abs_floor: 1.0,
            samples: 100,
            seed: 0x5eed,
            margin: 0.05,
            depth: 1,
        }
    }
}

impl OracleConfig {
    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0) || !(self.rel_tol > 0.0) || !(self.abs_floor > 0.0) {
            return Err(Error::Usage("oracle step, tolerance and floor must be positive".into()));
        }
        if self.levels == 0 {
            return Err(Error::Usage("at least one finite-difference level is needed".into()));
        }
        Ok(())
    }
}

pub fn metric_at(g: &Geometry, p: &[f64]) -> Result<DMatrix<f64>> {
    g.metric_at(p)
}

fn inverse_and_volume(g: &Geometry, p: &[f64]) -> Result<(DMatrix<f64>, f64)> {
    let m = g.metric_at(p)?;
    let det = m.determinant();
    if !(det > 0.0) {
        return Err(Error::Domain(format!("metric is not positive definite at {p:?}")));
    }
    let inv = m
        .try_inverse()
        .ok_or_else(|| Error::Domain(format!("singular metric at {p:?}")))?;
    Ok((inv, det.sqrt()))
}

fn shifted(p: &[f64], moves: &[(usize, f64)]) -> Vec<f64> {
    let mut q = p.to_vec();
    for &(i, d) in moves {
        q[i] += d;
    }
    q
}

/// One second-order central-difference estimate of `τf(p)` at step `h`.
fn tension_at_step<F>(g: &Geometry, f: &F, p: &[f64], h: f64) -> Result<Complex64>
where
    F: Fn(&[f64]) -> Result<Complex64>,
{
    let n = g.dim();
    let eval = |q: Vec<f64>| -> Result<Complex64> {
        g.check_domain(&q, 0.0)
            .map_err(|e| Error::Domain(format!("stencil leaves the chart: {e}")))?;
        f(&q)
    };
    let (ginv, vol) = inverse_and_volume(g, p)?;
    let f0 = f(p)?;
    let mut plus = Vec::with_capacity(n);
    let mut minus = Vec::with_capacity(n);
    for i in 0..n {
        plus.push(eval(shifted(p, &[(i, h)]))?);
        minus.push(eval(shifted(p, &[(i, -h)]))?);
    }

    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        acc += ginv[(i, i)] * (plus[i] - 2.0 * f0 + minus[i]) / (h * h);
        for j in (i + 1)..n {
            if ginv[(i, j)] == 0.0 {
                continue;
            }
            let pp = eval(shifted(p, &[(i, h), (j, h)]))?;
            let pm = eval(shifted(p, &[(i, h), (j, -h)]))?;
            let mp = eval(shifted(p, &[(i, -h), (j, h)]))?;
            let mm = eval(shifted(p, &[(i, -h), (j, -h)]))?;
            acc += 2.0 * ginv[(i, j)] * (pp - pm - mp + mm) / (4.0 * h * h);
        }
    }

    // First-order part from the divergence of g^{ij}√|g|.
    let mut densities = Vec::with_capacity(n);
    for j in 0..n {
        let (a_plus, v_plus) = inverse_and_volume(g, &shifted(p, &[(j, h)]))?;
        let (a_minus, v_minus) = inverse_and_volume(g, &shifted(p, &[(j, -h)]))?;
        densities.push((a_plus * v_plus, a_minus * v_minus));
    }
    for i in 0..n {
        let drift: f64 = (0..n)
            .map(|j| (densities[j].0[(i, j)] - densities[j].1[(i, j)]) / (2.0 * h))
            .sum::<f64>()
            / vol;
        if drift != 0.0 {
            acc += drift * (plus[i] - minus[i]) / (2.0 * h);
        }
    }
    Ok(acc)
}

/// Finite-difference tension of the point function `f` at `p`.
pub fn fd_tension<F>(g: &Geometry, f: F, p: &[f64], cfg: &OracleConfig) -> Result<Complex64>
where
    F: Fn(&[f64]) -> Result<Complex64>,
{
    cfg.validate()?;
    g.check_domain(p, cfg.margin)?;
    let mut table: Vec<Complex64> = Vec::with_capacity(cfg.levels as usize);
    for k in 0..cfg.levels {
        let h = cfg.step / 2f64.powi(k as i32);
        table.push(tension_at_step(g, &f, p, h)?);
    }
    // Richardson tableau for an h² leading error.
    for m in 1..cfg.levels as usize {
        let factor = 4f64.powi(m as i32);
        for k in (m..table.len()).rev() {
            table[k] = (factor * table[k] - table[k - 1]) / (factor - 1.0);
        }
    }
    Ok(*table.last().expect("levels >= 1"))
}

/// Symbolic and finite-difference values of one chain level at one point.
#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub point: Vec<f64>,
    pub level: u32,
    #[serde(serialize_with = "ser_complex")]
    pub symbolic: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub finite_difference: Complex64,
}

fn ser_complex<S: serde::Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&c.re)?;
    t.serialize_element(&c.im)?;
    t.end()
}

impl Comparison {
    pub fn abs_error(&self) -> f64 {
        (self.finite_difference - self.symbolic).norm()
    }

    pub fn rel_error(&self, floor: f64) -> f64 {
        self.abs_error() / self.symbolic.norm().max(floor)
    }
}

/// Samples `cfg.samples` admissible points (seeded) and, for each chain level
/// `k = 1..=depth`, pairs `τ^k f(p)` with the finite-difference tension of
/// `τ^{k-1} f` at `p`.
pub fn sample_comparisons(g: &Geometry, f: &Expr, cfg: &OracleConfig) -> Result<Vec<Comparison>> {
    cfg.validate()?;
    let depth = cfg.depth.max(1);
    let chain = g.iterated_tension(f, depth)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::with_capacity(cfg.samples * depth as usize);
    let mut drawn = 0;
    while drawn < cfg.samples {
        let p = g.sample_point(&mut rng);
        if g.check_domain(&p, cfg.margin).is_err() {
            continue;
        }
        drawn += 1;
        for k in 1..=depth as usize {
            let symbolic = g.evaluate(&chain[k], &p)?;
            let below = &chain[k - 1];
            let finite_difference = fd_tension(g, |q| g.evaluate(below, q), &p, cfg)?;
            out.push(Comparison { point: p.clone(), level: k as u32, symbolic, finite_difference });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    pub max_rel: f64,
    pub max_abs: f64,
    pub points: usize,
    pub worst_point: Vec<f64>,
    pub tolerance: f64,
    pub passed: bool,
}

/// Compares symbolic and finite-difference tension over seeded samples.
pub fn cross_validate(g: &Geometry, f: &Expr, cfg: &OracleConfig) -> Result<ResidualReport> {
    let comps = sample_comparisons(g, f, cfg)?;
    let mut report = ResidualReport {
        max_rel: 0.0,
        max_abs: 0.0,
        points: cfg.samples,
        worst_point: Vec::new(),
        tolerance: cfg.rel_tol,
        passed: true,
    };
    for c in &comps {
        let rel = c.rel_error(cfg.abs_floor);
        report.max_abs = report.max_abs.max(c.abs_error());
        if rel > report.max_rel || report.worst_point.is_empty() {
            report.max_rel = rel.max(report.max_rel);
            report.worst_point = c.point.clone();
        }
    }
    report.passed = report.max_rel <= cfg.rel_tol;
    Ok(report)
}

/// `symbolic / finite-difference` at each sampled point. Under a consistent
/// convention this is 1; a constant other than 1 exposes a scaled operator.
pub fn operator_ratios(g: &Geometry, f: &Expr, cfg: &OracleConfig) -> Result<Vec<Complex64>> {
    let comps = sample_comparisons(g, f, &OracleConfig { depth: 1, ..cfg.clone() })?;
    comps
        .iter()
        .map(|c| {
            if c.finite_difference.norm() < 1e-12 {
                Err(Error::Domain(format!("finite-difference tension vanishes at {:?}", c.point)))
            } else {
                Ok(c.symbolic / c.finite_difference)
            }
        })
        .collect()
}
