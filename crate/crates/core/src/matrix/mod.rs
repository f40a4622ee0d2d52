//! Dense matrices over a field, Smith normal form of `xI - c` and the
//! elementary divisors it determines.

pub mod eldiv;
mod snf;

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

pub use eldiv::{elementary_divisors, DivisorGroup, ElementaryDivisorMultiset};
pub use snf::{
    characteristic_polynomial, minimal_polynomial, smith_invariant_factors, smith_normal_form,
    PolyMatrix,
};

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(field: F, rows: &[&[i64]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows)
    }

    pub fn random<R: Rng + ?Sized>(field: F, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| field.random_elem(rng)).collect();
        Matrix { field, rows, cols, data }
    }

    /// Random invertible matrix, by rejection.
    pub fn random_invertible<R: Rng + ?Sized>(field: F, n: usize, rng: &mut R) -> Self {
        loop {
            let m = Self::random(field.clone(), n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.name(),
                right: other.field.name(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = f.mul(a, other.get(k, j));
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &t);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch("addition of different shapes".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, c)).collect();
        Matrix { data, ..self.clone() }
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        let mut out = Self::zeros(self.field.clone(), r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Jordan block `J_n(a)`: `a` on the diagonal, ones on the superdiagonal.
    pub fn jordan_block(field: F, n: usize, a: &F::Elem) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = a.clone();
            if i + 1 < n {
                m.data[i * n + i + 1] = m.field.one();
            }
        }
        m
    }

    /// Companion matrix of a monic polynomial of positive degree.
    pub fn companion(f: &Poly<F>) -> Result<Self> {
        let field = f.field().clone();
        let n = match f.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        let f = f.monic();
        let mut m = Self::zeros(field, n, n);
        for i in 1..n {
            m.data[i * n + i - 1] = m.field.one();
        }
        for i in 0..n {
            m.data[i * n + n - 1] = m.field.neg(&f.coeff(i));
        }
        Ok(m)
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, col))) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = f.inv(self.get(r, col)).expect("pivot is nonzero");
            for j in col..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, col).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in col..self.cols {
                    let t = f.mul(&factor, self.get(r, j));
                    let v = f.sub(self.get(i, j), &t);
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            r += 1;
        }
        pivots
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(r.get(row, free));
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.field.clone(), n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let mut inv = Self::zeros(self.field.clone(), n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// `p(self)` by Horner's rule.
    pub fn eval_poly(&self, p: &Poly<F>) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut acc = Self::zeros(self.field.clone(), n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self)?;
            for i in 0..n {
                let v = self.field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| self.field.is_zero(a))
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix[{}] {}x{}", self.field.name(), self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|a| self.field.fmt_elem(a)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn kernel_examples() {
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(Matrix::zeros(f2, 2, 2).kernel_basis().len(), 2);
        assert!(Matrix::identity(Rationals, 3).kernel_basis().is_empty());
        // det [[1,2],[2,1]] = -3 vanishes mod 3
        let f3 = PrimeField::new(3).unwrap();
        let m = Matrix::from_i64_rows(f3, &[&[1, 2], &[2, 1]]).unwrap();
        assert_eq!(m.rank(), 1);
        let ker = m.kernel_basis();
        assert_eq!(ker, vec![vec![1, 1]]);
        assert!(m.apply(&ker[0]).iter().all(|x| *x == 0));
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = PrimeField::new(5).unwrap();
        for n in 1..6 {
            let g = Matrix::random_invertible(f, n, &mut rng);
            let gi = g.inverse().unwrap();
            assert_eq!(g.mul(&gi).unwrap(), Matrix::identity(f, n));
        }
        let s = Matrix::from_i64_rows(Rationals, &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(s.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn rank_nullity() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = PrimeField::new(2).unwrap();
        for _ in 0..50 {
            let m = Matrix::random(f, 4, 6, &mut rng);
            let ker = m.kernel_basis();
            assert_eq!(ker.len() + m.rank(), 6);
            for v in &ker {
                assert!(m.apply(v).iter().all(|x| *x == 0));
            }
        }
    }

    #[test]
    fn companion_and_eval() {
        let f2 = PrimeField::new(2).unwrap();
        let p = Poly::from_i64s(f2, &[1, 1, 1]);
        let c = Matrix::companion(&p).unwrap();
        assert!(c.eval_poly(&p).unwrap().is_zero());
    }
}
