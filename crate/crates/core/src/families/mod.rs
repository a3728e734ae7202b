//! Explicit families of proper r-harmonic functions, and the ansatz kernel
//! generator that produces the Sol axis families.

mod ansatz;
mod catalog;

pub use ansatz::{primitive_expr, primitive_integer_form, AnsatzSystem};
pub use catalog::{
    build_family, family, nil_f2_degenerate, parse_literals, sl2_f2_degenerate, FamilyArgs, FamilyDescriptor,
    FamilyMember, FAMILIES,
};

use crate::error::{Error, Result};
use crate::expr::{AtomSet, Monomial, Var};
use crate::geometry::{Convention, Geometry, Order, ProductGeometry, DEFAULT_R_MAX};
use crate::numeric::GaussianRational;
use crate::Expr;

pub type C = GaussianRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// The two conformal surfaces used as factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Surface {
    HyperbolicDisc,
    PuncturedSphere,
}

impl Surface {
    pub fn geometry(self, convention: Convention) -> Geometry {
        match self {
            Surface::HyperbolicDisc => Geometry::hyperbolic_disc(convention),
            Surface::PuncturedSphere => Geometry::punctured_sphere(convention),
        }
    }

    pub fn times_line(self, convention: Convention) -> Geometry {
        match self {
            Surface::HyperbolicDisc => Geometry::h2xr(convention),
            Surface::PuncturedSphere => Geometry::s2pxr(convention),
        }
    }
}

fn all_zero(params: &[C]) -> bool {
    params.iter().all(C::is_zero)
}

fn require_nonzero(params: &[C], what: &str) -> Result<()> {
    if all_zero(params) {
        Err(Error::Usage(format!("{what} must not all be zero")))
    } else {
        Ok(())
    }
}

fn mono(atoms: AtomSet, c: &C, exps: &[(Var, u32)], weight: i32) -> Result<Expr> {
    let mut m = Monomial { exp: weight, ..Monomial::default() };
    for &(v, k) in exps {
        m.pows[v.index()] += k;
    }
    Expr::term(atoms, c.clone(), m)
}

fn linear_combination(atoms: AtomSet, coeffs: &[C], basis: &[Expr]) -> Result<Expr> {
    coeffs
        .iter()
        .zip(basis)
        .try_fold(Expr::zero(atoms), |acc, (c, b)| acc.add(&b.scale(c)))
}

/// Harmonic Sol function of degree `n` along one axis: the one-dimensional
/// kernel of `τ` on `{x^k e^{-(n-k)t}}`, scaled to coprime integers with a
/// positive `x^n` coefficient. The `y` family is its image under
/// `(x, y, t) -> (y, x, -t)`, which is an isometry of Sol.
pub fn sol_harmonic_axis_family(n: u32, axis: Axis) -> Result<Expr> {
    if n < 2 {
        return Err(Error::Usage("axis families start at n = 2".into()));
    }
    let g = Geometry::sol();
    let atoms = g.atoms();
    let basis = (0..=n)
        .map(|k| mono(atoms, &C::one(), &[(Var::X, k)], -((n - k) as i32)))
        .collect::<Result<Vec<_>>>()?;
    let kernel = AnsatzSystem::new(&g, basis, 1)?.generate_kernel()?;
    let fx = match kernel.as_slice() {
        [f] => primitive_expr(f),
        _ => {
            return Err(Error::Consistency(format!(
                "axis kernel for n = {n} has dimension {}",
                kernel.len()
            )))
        }
    };
    Ok(match axis {
        Axis::X => fx,
        Axis::Y => fx.mirror_xy(),
    })
}

fn bilinear_xy(atoms: AtomSet, p: &[C; 4]) -> Result<Expr> {
    let basis = [
        mono(atoms, &C::one(), &[], 0)?,
        mono(atoms, &C::one(), &[(Var::X, 1)], 0)?,
        mono(atoms, &C::one(), &[(Var::Y, 1)], 0)?,
        mono(atoms, &C::one(), &[(Var::X, 1), (Var::Y, 1)], 0)?,
    ];
    linear_combination(atoms, p, &basis)
}

/// `t^{2k} f1 + t^{2k+1} f2` with `f1 = a1 + a2 x + a3 y + a4 xy` and `f2`
/// likewise from `b`. This is proper `(k+1)`-harmonic on Sol.
pub fn sol_tower_unshifted(k: u32, a: &[C; 4], b: &[C; 4]) -> Result<Expr> {
    if all_zero(a) && all_zero(b) {
        return Err(Error::Usage("tower parameters must not all be zero".into()));
    }
    let atoms = AtomSet::sol();
    let f1 = bilinear_xy(atoms, a)?;
    let f2 = bilinear_xy(atoms, b)?;
    let t = Expr::var(atoms, Var::T)?;
    t.pow(2 * k)?.mul(&f1)?.add(&t.pow(2 * k + 1)?.mul(&f2)?)
}

/// The tower member that is proper `r`-harmonic:
/// `t^{2(r-1)} f1 + t^{2r-1} f2`.
pub fn sol_tower(r: u32, a: &[C; 4], b: &[C; 4]) -> Result<Expr> {
    if r == 0 {
        return Err(Error::Usage("tower order must be at least 1".into()));
    }
    sol_tower_unshifted(r - 1, a, b)
}

/// `a(α + βy)·f_{nx} + b(γ + δx)·f_{ny}` for `n ∈ {2, 3}`; harmonic.
#[allow(clippy::too_many_arguments)]
pub fn sol_mixed_harmonic(n: u32, a: &C, b: &C, alpha: &C, beta: &C, gamma: &C, delta: &C) -> Result<Expr> {
    if n != 2 && n != 3 {
        return Err(Error::Usage("mixed Sol family is defined for n = 2 and n = 3".into()));
    }
    require_nonzero(&[a.clone(), b.clone()], "(a, b)")?;
    require_nonzero(&[alpha.clone(), beta.clone()], "(alpha, beta)")?;
    require_nonzero(&[gamma.clone(), delta.clone()], "(gamma, delta)")?;
    let atoms = AtomSet::sol();
    let fx = sol_harmonic_axis_family(n, Axis::X)?;
    let fy = sol_harmonic_axis_family(n, Axis::Y)?;
    let one = Expr::one(atoms);
    let x = Expr::var(atoms, Var::X)?;
    let y = Expr::var(atoms, Var::Y)?;
    let left = one.scale(alpha).add(&y.scale(beta))?.mul(&fx)?.scale(a);
    let right = one.scale(gamma).add(&x.scale(delta))?.mul(&fy)?.scale(b);
    left.add(&right)
}

/// The factors `h2 = a2(2x² - e^{-2t}) + a3(2x³ - 3x e^{-2t})` and
/// `h3 = b2(2y² - e^{2t}) + b3(2y³ - 3y e^{2t})`.
pub fn sol_h2h3_factors(a2: &C, a3: &C, b2: &C, b3: &C) -> Result<(Expr, Expr)> {
    require_nonzero(&[a2.clone(), a3.clone()], "(a2, a3)")?;
    require_nonzero(&[b2.clone(), b3.clone()], "(b2, b3)")?;
    let h2 = sol_harmonic_axis_family(2, Axis::X)?
        .scale(a2)
        .add(&sol_harmonic_axis_family(3, Axis::X)?.scale(a3))?;
    let h3 = sol_harmonic_axis_family(2, Axis::Y)?
        .scale(b2)
        .add(&sol_harmonic_axis_family(3, Axis::Y)?.scale(b3))?;
    Ok((h2, h3))
}

/// `h2·h3`; proper biharmonic with `τ(h2·h3) = -8(a2 + 3a3 x)(b2 + 3b3 y)`.
pub fn sol_h2h3(a2: &C, a3: &C, b2: &C, b3: &C) -> Result<Expr> {
    let (h2, h3) = sol_h2h3_factors(a2, a3, b2, b3)?;
    h2.mul(&h3)
}

/// `Σ c_k (x + iy)^k` (or `x - iy` when `conjugate`) over the `(x, y, t)`
/// algebra.
pub fn holomorphic_xy(coeffs: &[C], conjugate: bool) -> Result<Expr> {
    let atoms = AtomSet::xyt();
    let i = if conjugate { -C::i() } else { C::i() };
    let w = Expr::var(atoms, Var::X)?.add(&Expr::var(atoms, Var::Y)?.scale(&i))?;
    let powers = (0..coeffs.len() as u32).map(|k| w.pow(k)).collect::<Result<Vec<_>>>()?;
    linear_combination(atoms, coeffs, &powers)
}

fn xyt_harmonic(a: &[C; 2], a2_var: Var, hol: &[C], antihol: &[C]) -> Result<Expr> {
    if all_zero(a) && all_zero(hol) && all_zero(antihol) {
        return Err(Error::Usage("harmonic family parameters must not all be zero".into()));
    }
    let atoms = AtomSet::xyt();
    let t = Expr::var(atoms, Var::T)?;
    let t_part = t.scale(&a[0]).add(&Expr::var(atoms, a2_var)?.mul(&t)?.scale(&a[1]))?;
    holomorphic_xy(hol, false)?.add(&holomorphic_xy(antihol, true)?)?.add(&t_part)
}

/// `h1(x + iy) + h2(x - iy) + a1 t + a2 xt` with polynomial `h1`, `h2`;
/// harmonic on Nil.
pub fn nil_harmonic(a: &[C; 2], hol: &[C], antihol: &[C]) -> Result<Expr> {
    xyt_harmonic(a, Var::X, hol, antihol)
}

/// `h1(x + iy) + h2(x - iy) + a1 t + a2 yt`; harmonic on SL2~.
pub fn sl2_harmonic(a: &[C; 2], hol: &[C], antihol: &[C]) -> Result<Expr> {
    xyt_harmonic(a, Var::Y, hol, antihol)
}

const NIL_F2_TERMS: [&[(Var, u32)]; 12] = [
    &[(Var::X, 2)],
    &[(Var::Y, 2)],
    &[(Var::Y, 1), (Var::T, 1)],
    &[(Var::X, 3)],
    &[(Var::X, 2), (Var::Y, 1)],
    &[(Var::X, 2), (Var::T, 1)],
    &[(Var::X, 1), (Var::Y, 2)],
    &[(Var::Y, 3)],
    &[(Var::X, 3), (Var::Y, 1)],
    &[(Var::X, 1), (Var::Y, 3)],
    &[(Var::Y, 2), (Var::T, 1)],
    &[(Var::X, 3), (Var::T, 1)],
];

const SL2_F2_TERMS: [&[(Var, u32)]; 6] = [
    &[(Var::X, 1), (Var::T, 1)],
    &[(Var::T, 2)],
    &[(Var::X, 1), (Var::T, 2)],
    &[(Var::Y, 1), (Var::T, 2)],
    &[(Var::T, 3)],
    &[(Var::Y, 1), (Var::T, 3)],
];

fn from_term_table(coeffs: &[C], table: &[&[(Var, u32)]]) -> Result<Expr> {
    let atoms = AtomSet::xyt();
    coeffs
        .iter()
        .zip(table)
        .try_fold(Expr::zero(atoms), |acc, (c, exps)| acc.add(&mono(atoms, c, exps, 0)?))
}

/// The twelve-parameter biharmonic family on Nil:
/// `b1 x² + b2 y² + b3 yt + b4 x³ + b5 x²y + b6 x²t + b7 xy² + b8 y³ +
/// b9 x³y + b10 xy³ + b11 y²t + b12 x³t`.
pub fn nil_biharmonic12(b: &[C; 12]) -> Result<Expr> {
    require_nonzero(b, "b")?;
    from_term_table(b, &NIL_F2_TERMS)
}

/// The six-parameter biharmonic family on SL2~:
/// `b1 xt + b2 t² + b3 xt² + b4 yt² + b5 t³ + b6 yt³`.
pub fn sl2_biharmonic6(b: &[C; 6]) -> Result<Expr> {
    require_nonzero(b, "b")?;
    from_term_table(b, &SL2_F2_TERMS)
}

/// `(f(z) + g(zb))·p(t)` on `surface × ℝ` with polynomial `f`, `g` and cubic
/// `p = b0 + b1 t + b2 t² + b3 t³`. Proper biharmonic when `(b2, b3) ≠ 0`,
/// harmonic otherwise.
pub fn conformal_separable(
    surface: Surface,
    convention: Convention,
    hol: &[C],
    antihol: &[C],
    p: &[C; 4],
) -> Result<Expr> {
    if all_zero(hol) && all_zero(antihol) {
        return Err(Error::Usage("holomorphic and antiholomorphic parts are both zero".into()));
    }
    require_nonzero(p, "cubic coefficients")?;
    let atoms = surface.times_line(convention).atoms();
    let mut f = Expr::zero(atoms);
    for (k, c) in hol.iter().enumerate() {
        f = f.add(&mono(atoms, c, &[(Var::Z, k as u32)], 0)?)?;
    }
    for (k, c) in antihol.iter().enumerate() {
        f = f.add(&mono(atoms, c, &[(Var::Zb, k as u32)], 0)?)?;
    }
    let mut cubic = Expr::zero(atoms);
    for (k, c) in p.iter().enumerate() {
        cubic = cubic.add(&mono(atoms, c, &[(Var::T, k as u32)], 0)?)?;
    }
    f.mul(&cubic)
}

/// `-log(1 - z zb)` on the disc or `log(1 + z zb)` on the punctured sphere,
/// optionally times `a0 + a1 t` on `surface × ℝ`.
pub fn log_biharmonic(
    surface: Surface,
    convention: Convention,
    linear: Option<&[C; 2]>,
) -> Result<(Geometry, Expr)> {
    let sign = match surface {
        Surface::HyperbolicDisc => -1,
        Surface::PuncturedSphere => 1,
    };
    match linear {
        None => {
            let g = surface.geometry(convention);
            let f = Expr::log(g.atoms())?.scale_int(sign);
            Ok((g, f))
        }
        Some(a) => {
            require_nonzero(a, "(a0, a1)")?;
            let g = surface.times_line(convention);
            let atoms = g.atoms();
            let p = Expr::constant(atoms, a[0].clone()).add(&Expr::var(atoms, Var::T)?.scale(&a[1]))?;
            let f = Expr::log(atoms)?.scale_int(sign).mul(&p)?;
            Ok((g, f))
        }
    }
}

/// `f1·f2` on `M1 × M2` for `f1` proper harmonic on `M1` and `f2` proper
/// `r`-harmonic on `M2`; the product is again proper `r`-harmonic.
pub fn product_r_harmonic(prod: &ProductGeometry, f1: &Expr, f2: &Expr) -> Result<Expr> {
    let o1 = prod.first.classify(f1, DEFAULT_R_MAX)?.order;
    if o1 != Order::Proper(1) {
        return Err(Error::Usage(format!("first factor must be proper harmonic, found order {o1}")));
    }
    let o2 = prod.second.classify(f2, DEFAULT_R_MAX)?.order;
    if o2.proper().is_none() {
        return Err(Error::Usage(format!("second factor has no finite order ({o2})")));
    }
    prod.separable(f1, f2)
}
