use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::expr::Monomial;
use crate::geometry::Geometry;
use crate::numeric::{ExactMatrix, GaussianRational, Rational};
use crate::Expr;

/// A finite term basis together with the exact matrix of `τ^r` restricted to
/// its span.
///
/// Columns follow the basis, sorted ascending by leading monomial; rows
/// follow the monomials occurring in the images, ascending.
#[derive(Debug, Clone)]
pub struct AnsatzSystem {
    geometry: Geometry,
    basis: Vec<Expr>,
    image_basis: Vec<Monomial>,
    matrix: ExactMatrix,
    order: u32,
}

fn leading(e: &Expr) -> Monomial {
    e.terms().next_back().map(|(m, _)| *m).unwrap_or_default()
}

impl AnsatzSystem {
    pub fn new(geometry: &Geometry, basis: Vec<Expr>, order: u32) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::Usage("empty ansatz basis".into()));
        }
        if order == 0 {
            return Err(Error::Usage("ansatz order must be at least 1".into()));
        }
        let mut basis = basis;
        basis.sort_by_key(leading);
        check_independent(&basis)?;

        let images = basis
            .iter()
            .map(|b| {
                let chain = geometry.iterated_tension(b, order)?;
                Ok(chain.into_iter().last().expect("order >= 1"))
            })
            .collect::<Result<Vec<Expr>>>()?;
        let mut image_basis: Vec<Monomial> =
            images.iter().flat_map(|e| e.terms().map(|(m, _)| *m)).collect();
        image_basis.sort();
        image_basis.dedup();

        let mut matrix = ExactMatrix::zeros(image_basis.len(), basis.len());
        for (j, img) in images.iter().enumerate() {
            for (m, c) in img.terms() {
                let i = image_basis.binary_search(m).expect("collected above");
                matrix[(i, j)] = c.clone();
            }
        }
        Ok(AnsatzSystem { geometry: geometry.clone(), basis, image_basis, matrix, order })
    }

    /// Parses a comma-separated term list such as `x^2, x*E(-1), E(-2)`.
    pub fn from_text(geometry: &Geometry, terms: &str, order: u32) -> Result<Self> {
        let basis = terms
            .split(',')
            .map(|s| geometry.parse(s.trim()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(geometry, basis, order)
    }

    pub fn basis(&self) -> &[Expr] {
        &self.basis
    }

    pub fn image_basis(&self) -> &[Monomial] {
        &self.image_basis
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The system with each row rescaled to primitive integer form (when the
    /// row is real), which is how such systems are usually written down.
    pub fn primitive_rows(&self) -> ExactMatrix {
        ExactMatrix::from_rows(
            self.matrix
                .row_vecs()
                .into_iter()
                .map(|r| primitive_integer_form(&r).unwrap_or(r))
                .collect(),
        )
    }

    /// Exact basis of `{f ∈ span(B) : τ^r f = 0}`; every returned function is
    /// re-checked symbolically.
    pub fn generate_kernel(&self) -> Result<Vec<Expr>> {
        let atoms = self.geometry.atoms();
        let mut out = Vec::new();
        for v in self.matrix.nullspace() {
            let mut f = Expr::zero(atoms);
            for (c, b) in v.iter().zip(&self.basis) {
                f = f.add(&b.scale(c))?;
            }
            let chain = self.geometry.iterated_tension(&f, self.order)?;
            if f.is_zero() || !chain.last().expect("non-empty").is_zero() {
                return Err(Error::Consistency(format!("kernel element {f} fails re-verification")));
            }
            out.push(f);
        }
        Ok(out)
    }
}

fn check_independent(basis: &[Expr]) -> Result<()> {
    let mut monos: Vec<Monomial> = basis.iter().flat_map(|e| e.terms().map(|(m, _)| *m)).collect();
    monos.sort();
    monos.dedup();
    let mut m = ExactMatrix::zeros(monos.len(), basis.len());
    for (j, b) in basis.iter().enumerate() {
        if b.is_zero() {
            return Err(Error::Usage("ansatz basis contains zero".into()));
        }
        for (mono, c) in b.terms() {
            m[(monos.binary_search(mono).expect("collected"), j)] = c.clone();
        }
    }
    if m.rank() < basis.len() {
        return Err(Error::Usage("ansatz basis is linearly dependent".into()));
    }
    Ok(())
}

/// Rescales a real rational vector to coprime integers whose first nonzero
/// entry is positive. `None` if any entry is non-real or all are zero.
pub fn primitive_integer_form(v: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
    if v.iter().any(|e| !e.is_real()) || v.iter().all(GaussianRational::is_zero) {
        return None;
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.re.denom()));
    let ints: Vec<BigInt> = v.iter().map(|e| e.re.numer() * (&lcm / e.re.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
    let lead_negative = ints.iter().find(|n| !n.is_zero()).is_some_and(|n| n.is_negative());
    Some(
        ints.into_iter()
            .map(|n| {
                let q = n / &gcd;
                let q = if lead_negative { -q } else { q };
                GaussianRational::real(Rational::from(q))
            })
            .collect(),
    )
}

/// Scales an expression with real coefficients so the coefficients are
/// coprime integers and the leading (largest) term is positive.
pub fn primitive_expr(f: &Expr) -> Expr {
    let coeffs: Vec<GaussianRational> = f.terms().rev().map(|(_, c)| c.clone()).collect();
    match primitive_integer_form(&coeffs) {
        Some(p) => {
            let terms: Vec<_> = p.into_iter().zip(f.terms().rev().map(|(m, _)| *m)).collect();
            Expr::from_terms(f.atoms(), terms).expect("same monomials")
        }
        None => f.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_span_harmonic_kernel() {
        for id in ["sol", "nil", "sl2", "h2xr"] {
            let g = Geometry::by_id(id, Default::default()).unwrap();
            let sys = AnsatzSystem::from_text(&g, "1", 1).unwrap();
            let k = sys.generate_kernel().unwrap();
            assert_eq!(k, vec![g.parse("1").unwrap()], "{id}");
        }
    }

    #[test]
    fn dependent_basis_is_rejected() {
        let g = Geometry::sol();
        assert!(matches!(AnsatzSystem::from_text(&g, "x, 2*x", 1), Err(Error::Usage(_))));
    }

    #[test]
    fn primitive_form() {
        let v = [GaussianRational::ratio(-1, 2), GaussianRational::zero(), GaussianRational::ratio(3, 4)];
        let p = primitive_integer_form(&v).unwrap();
        assert_eq!(p, vec![GaussianRational::integer(2), GaussianRational::zero(), GaussianRational::integer(-3)]);
    }
}
