use super::{Block, Convention, Geometry};
use crate::error::{Error, Result};
use crate::expr::Var;
use crate::numeric::{GaussianRational, Rational};
use crate::Expr;

/// A Riemannian product `M1 × M2` together with its factors.
///
/// When both factors use `t`, the second factor's `t` is renamed to `s`.
#[derive(Debug, Clone)]
pub struct ProductGeometry {
    pub first: Geometry,
    pub second: Geometry,
    pub combined: Geometry,
    rename: Option<(Var, Var)>,
}

/// Builds `g1 × g2`. Factors with a conformal block must agree on the
/// operator convention, and after renaming the second factor's `t` the
/// variables must be disjoint.
pub fn product(g1: &Geometry, g2: &Geometry) -> Result<ProductGeometry> {
    let convention = match (g1.has_conformal_factor(), g2.has_conformal_factor()) {
        (true, true) if g1.convention() != g2.convention() => {
            return Err(Error::Usage("factors use different operator conventions".into()))
        }
        (false, true) => g2.convention(),
        _ => g1.convention(),
    };
    let (v1, v2) = (g1.atoms().vars, g2.atoms().vars);
    let rename = if v1.intersects(v2) {
        let shared: Vec<Var> = v1.iter().filter(|v| v2.contains(*v)).collect();
        if shared != [Var::T] || v1.contains(Var::S) || v2.contains(Var::S) {
            return Err(Error::Usage(format!(
                "factors {} and {} share variables that cannot be renamed",
                g1.id(),
                g2.id()
            )));
        }
        Some((Var::T, Var::S))
    } else {
        None
    };
    let mut blocks = g1.blocks().to_vec();
    for b in g2.blocks() {
        let r = match (b.rename, rename) {
            (None, r) => r,
            (Some(existing), None) => Some(existing),
            (Some(_), Some(_)) => {
                return Err(Error::Usage("cannot rename an already renamed factor".into()))
            }
        };
        blocks.push(Block { model: b.model, rename: r });
    }
    let id = format!("product:{}x{}", g1.id(), g2.id());
    let combined = Geometry::from_blocks(id, blocks, convention)?;
    Ok(ProductGeometry {
        first: g1.with_convention(convention),
        second: g2.with_convention(convention),
        combined,
        rename,
    })
}

impl ProductGeometry {
    /// Parses `<id>x<id>` (without the `product:` prefix), trying every split
    /// point at which both sides name a geometry.
    pub fn by_id(spec: &str, convention: Convention) -> Result<ProductGeometry> {
        for (i, _) in spec.match_indices('x') {
            let (a, b) = (&spec[..i], &spec[i + 1..]);
            if a.is_empty() || b.is_empty() || a.starts_with("product:") {
                continue;
            }
            if let (Ok(g1), Ok(g2)) =
                (Geometry::by_id(a, convention), Geometry::by_id(b, convention))
            {
                return product(&g1, &g2);
            }
        }
        Err(Error::Usage(format!("cannot read product geometry '{spec}'")))
    }

    pub fn embed_first(&self, f: &Expr) -> Result<Expr> {
        f.embed(self.combined.atoms())
    }

    pub fn embed_second(&self, f: &Expr) -> Result<Expr> {
        match self.rename {
            Some((from, to)) => f.rename(from, to, self.combined.atoms()),
            None => f.embed(self.combined.atoms()),
        }
    }

    /// `f1(p1)·f2(p2)` as a function on the product.
    pub fn separable(&self, f1: &Expr, f2: &Expr) -> Result<Expr> {
        self.embed_first(f1)?.mul(&self.embed_second(f2)?)
    }
}

pub fn binomial(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `Σ_k C(n,k) τ^{n-k}(f1)·τ^k(f2)`, each iterated tension taken on its own
/// factor and the products formed on the product chart.
pub fn product_tension_binomial(
    prod: &ProductGeometry,
    f1: &Expr,
    f2: &Expr,
    n: u32,
) -> Result<Expr> {
    let chain1 = prod.first.iterated_tension(f1, n)?;
    let chain2 = prod.second.iterated_tension(f2, n)?;
    let mut acc = Expr::zero(prod.combined.atoms());
    for k in 0..=n {
        let left = prod.embed_first(&chain1[(n - k) as usize])?;
        let right = prod.embed_second(&chain2[k as usize])?;
        let c = GaussianRational::real(Rational::integer(binomial(n, k)));
        acc = acc.add(&left.mul(&right)?.scale(&c))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_rows() {
        assert_eq!((0..=3).map(|k| binomial(3, k)).collect::<Vec<_>>(), vec![1, 3, 3, 1]);
        assert_eq!((0..=4).map(|k| binomial(4, k)).collect::<Vec<_>>(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn product_ids() {
        let p = ProductGeometry::by_id("s2pxline", Convention::Metric).unwrap();
        assert_eq!(p.combined.id(), "product:s2pxline");
        let p = ProductGeometry::by_id("linexline", Convention::Metric).unwrap();
        assert_eq!(p.combined.coordinate_names(), vec!["t", "s"]);
        assert!(ProductGeometry::by_id("h2xs2p", Convention::Metric).is_err());
        assert!(ProductGeometry::by_id("nilxsl2", Convention::Metric).is_err());
    }

    #[test]
    fn line_times_line_is_flat_plane() {
        let p = product(&Geometry::line(), &Geometry::line()).unwrap();
        let g = &p.combined;
        let f = g.parse("t^3*s^2 + s^4").unwrap();
        let expected = g.parse("6*t*s^2 + 2*t^3 + 12*s^2").unwrap();
        assert_eq!(g.tension(&f).unwrap(), expected);
    }
}
