use std::fmt;

use crate::error::{Error, Result};

use super::GaussianRational;

/// Dense row-major matrix over the Gaussian rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        let n = rows.len();
        ExactMatrix { rows: n, cols, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| GaussianRational::integer(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[GaussianRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<GaussianRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        if v.len() != self.cols {
            return Err(Error::Usage(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(GaussianRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::Usage(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] = &out[(i, j)] + &prod;
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form and the ascending list of pivot columns.
    ///
    /// The pivot in each column is the first row (at or below the current
    /// pivot row) with a nonzero entry.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    let sub = &factor * &m[(r, j)];
                    m[(i, j)] = &m[(i, j)] - &sub;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the kernel, one vector per free column, each scaled so that
    /// its first nonzero entry is 1. Empty when the kernel is trivial.
    pub fn nullspace(&self) -> Vec<Vec<GaussianRational>> {
        let (r, pivots) = self.rref();
        let free = (0..self.cols).filter(|c| !pivots.contains(c));
        free.map(|fc| {
            let mut v = vec![GaussianRational::zero(); self.cols];
            v[fc] = GaussianRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&r[(row, fc)];
            }
            normalize_leading(&mut v);
            v
        })
        .collect()
    }

    /// One exact solution of `self · x = rhs`, or `None` when inconsistent.
    pub fn solve(&self, rhs: &[GaussianRational]) -> Result<Option<Vec<GaussianRational>>> {
        if rhs.len() != self.rows {
            return Err(Error::Usage(format!(
                "right-hand side of length {} against {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let mut aug = ExactMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = rhs[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![GaussianRational::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(row, self.cols)].clone();
        }
        Ok(Some(x))
    }
}

/// Divides `v` by its first nonzero entry.
pub fn normalize_leading(v: &mut [GaussianRational]) {
    if let Some(lead) = v.iter().find(|e| !e.is_zero()).cloned() {
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero");
            for e in v.iter_mut() {
                *e = &*e * &inv;
            }
        }
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Rational;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    #[test]
    fn rref_identity() {
        let (r, p) = ExactMatrix::identity(2).rref();
        assert_eq!(r, ExactMatrix::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_quadratic_ansatz_system() {
        let m = ExactMatrix::from_i64_rows(&[&[2, 0, 1], &[0, 1, 0]]);
        let (r, p) = m.rref();
        let expected =
            ExactMatrix::from_rows(vec![vec![q(1, 1), q(0, 1), q(1, 2)], vec![q(0, 1), q(1, 1), q(0, 1)]]);
        assert_eq!(r, expected);
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r.rref().0, r);
    }

    #[test]
    fn nullspace_of_quadratic_and_cubic_systems() {
        let m2 = ExactMatrix::from_i64_rows(&[&[2, 0, 1], &[0, 1, 0]]);
        assert_eq!(m2.nullspace(), vec![vec![q(1, 1), q(0, 1), q(-2, 1)]]);

        let m3 = ExactMatrix::from_i64_rows(&[&[9, 0, 2, 0], &[0, 2, 0, 3], &[0, 0, 1, 0]]);
        let k = m3.nullspace();
        assert_eq!(k.len(), 1);
        // proportional to (0, -3/2, 0, 1)
        let scale = &k[0][3];
        let expected = [q(0, 1), q(-3, 2), q(0, 1), q(1, 1)];
        for (a, b) in k[0].iter().zip(expected.iter()) {
            assert_eq!(a, &(b * scale));
        }
        assert!(ExactMatrix::identity(3).nullspace().is_empty());
    }

    #[test]
    fn solve_cases() {
        let v = vec![q(1, 2), GaussianRational::i(), q(-3, 1)];
        assert_eq!(ExactMatrix::identity(3).solve(&v).unwrap(), Some(v.clone()));
        let m = ExactMatrix::from_i64_rows(&[&[2, 0, 1], &[0, 1, 0]]);
        assert_eq!(m.solve(&[q(0, 1), q(0, 1)]).unwrap(), Some(vec![q(0, 1); 3]));
        let singular = ExactMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(singular.solve(&[q(1, 1), q(2, 1)]).unwrap(), None);
        assert!(matches!(m.solve(&[q(1, 1)]), Err(Error::Usage(_))));
    }

    fn small_gaussian() -> impl Strategy<Value = GaussianRational> {
        (-4i64..=4, 1i64..=3, -2i64..=2).prop_map(|(n, d, im)| {
            GaussianRational::new(Rational::new(n, d), Rational::integer(im))
        })
    }

    fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
        proptest::collection::vec(small_gaussian(), rows * cols).prop_map(move |e| {
            ExactMatrix::from_rows(e.chunks(cols).map(<[_]>::to_vec).collect())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn kernel_vectors_are_annihilated(m in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| matrix(r, c))) {
            let kernel = m.nullspace();
            prop_assert_eq!(m.rank() + kernel.len(), m.cols());
            for v in &kernel {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(GaussianRational::is_zero));
                let lead = v.iter().find(|e| !e.is_zero()).unwrap();
                prop_assert!(lead.is_one());
            }
        }

        #[test]
        fn rref_is_idempotent(m in matrix(3, 4)) {
            let (r, _) = m.rref();
            prop_assert_eq!(r.rref().0, r);
        }

        #[test]
        fn inverse_from_recorded_row_operations(m in matrix(4, 4)) {
            // Row-reduce [A | I]; when A is invertible the right block is the
            // accumulated row operations, i.e. A^-1, and multiplying back must
            // give the identity.
            prop_assume!(m.rank() == 4);
            let mut aug = ExactMatrix::zeros(4, 8);
            for i in 0..4 {
                for j in 0..4 {
                    aug[(i, j)] = m[(i, j)].clone();
                }
                aug[(i, 4 + i)] = GaussianRational::one();
            }
            let (r, _) = aug.rref();
            let mut left = ExactMatrix::zeros(4, 4);
            let mut ops = ExactMatrix::zeros(4, 4);
            for i in 0..4 {
                for j in 0..4 {
                    left[(i, j)] = r[(i, j)].clone();
                    ops[(i, j)] = r[(i, 4 + j)].clone();
                }
            }
            prop_assert_eq!(&left, &ExactMatrix::identity(4));
            prop_assert_eq!(ops.mul(&m).unwrap(), ExactMatrix::identity(4));
        }

        #[test]
        fn consistent_systems_have_zero_residual(m in matrix(3, 4), x in proptest::collection::vec(small_gaussian(), 4)) {
            let rhs = m.mul_vec(&x).unwrap();
            let sol = m.solve(&rhs).unwrap().expect("consistent by construction");
            let back = m.mul_vec(&sol).unwrap();
            prop_assert_eq!(back, rhs);
        }
    }
}
