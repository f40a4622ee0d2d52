use super::Matrix;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// Square matrix with polynomial entries.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<F: Field> {
    field: F,
    n: usize,
    entries: Vec<Vec<Poly<F>>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(field: F, entries: Vec<Vec<Poly<F>>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch("polynomial matrix must be square".into()));
        }
        if entries.iter().flatten().any(|p| *p.field() != field) {
            return Err(Error::FieldMismatch {
                left: field.name(),
                right: "entry field".into(),
            });
        }
        Ok(PolyMatrix { field, n, entries })
    }

    /// The characteristic matrix `xI - c`.
    pub fn characteristic(c: &Matrix<F>) -> Result<Self> {
        if !c.is_square() {
            return Err(Error::ShapeMismatch("characteristic matrix of a non-square matrix".into()));
        }
        let field = c.field().clone();
        let n = c.rows();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let a = field.neg(c.get(i, j));
                        let mut coeffs = vec![a];
                        if i == j {
                            coeffs.push(field.one());
                        }
                        Poly::new(field.clone(), coeffs)
                    })
                    .collect()
            })
            .collect();
        Ok(PolyMatrix { field, n, entries })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly<F> {
        &self.entries[i][j]
    }

    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in t..self.n {
            for j in t..self.n {
                if let Some(d) = self.entries[i][j].degree() {
                    if best.is_none_or(|(bd, _, _)| d < bd) {
                        best = Some((d, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in self.entries.iter_mut() {
            row.swap(a, b);
        }
    }

    /// `row_i -= q * row_t`.
    fn row_axpy(&mut self, i: usize, t: usize, q: &Poly<F>) {
        for j in 0..self.n {
            let d = q.mul(&self.entries[t][j]);
            self.entries[i][j] = self.entries[i][j].sub(&d);
        }
    }

    /// `col_j -= q * col_t`.
    fn col_axpy(&mut self, j: usize, t: usize, q: &Poly<F>) {
        for i in 0..self.n {
            let d = q.mul(&self.entries[i][t]);
            self.entries[i][j] = self.entries[i][j].sub(&d);
        }
    }
}

/// Diagonal of the Smith normal form: monic, each dividing the next, with
/// zero entries (singular input) at the end.
///
/// The pivot is a nonzero entry of least degree, ties broken by the lowest
/// (row, column); after clearing its row and column, a remaining entry the
/// pivot fails to divide is added into the pivot row and elimination repeats.
pub fn smith_normal_form<F: Field>(m: &PolyMatrix<F>) -> Vec<Poly<F>> {
    let mut a = m.clone();
    let n = a.n;
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            let Some((pi, pj)) = a.pivot(t) else {
                diag.extend((t..n).map(|_| Poly::zero(a.field.clone())));
                return diag;
            };
            a.entries.swap(t, pi);
            a.swap_cols(t, pj);
            let p = a.entries[t][t].clone();
            let mut clean = true;
            for i in t + 1..n {
                if a.entries[i][t].is_zero() {
                    continue;
                }
                let (q, r) = a.entries[i][t].divrem(&p).expect("pivot is nonzero");
                a.row_axpy(i, t, &q);
                clean &= r.is_zero();
            }
            for j in t + 1..n {
                if a.entries[t][j].is_zero() {
                    continue;
                }
                let (q, r) = a.entries[t][j].divrem(&p).expect("pivot is nonzero");
                a.col_axpy(j, t, &q);
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| !p.divides(&a.entries[i][j])));
            match bad {
                Some(i) => {
                    for j in t..n {
                        let v = a.entries[t][j].add(&a.entries[i][j]);
                        a.entries[t][j] = v;
                    }
                }
                None => break,
            }
        }
        diag.push(a.entries[t][t].monic());
    }
    diag
}

/// Nonconstant invariant factors `d_1 | ... | d_k` of `xI - c`.
pub fn smith_invariant_factors<F: Field>(c: &Matrix<F>) -> Result<Vec<Poly<F>>> {
    let m = PolyMatrix::characteristic(c)?;
    Ok(smith_normal_form(&m)
        .into_iter()
        .filter(|d| d.degree().unwrap_or(0) > 0)
        .collect())
}

/// Minimal polynomial from the first linear dependence among
/// `I, c, c^2, ...`.
pub fn minimal_polynomial<F: Field>(c: &Matrix<F>) -> Result<Poly<F>> {
    if !c.is_square() {
        return Err(Error::ShapeMismatch("minimal polynomial of a non-square matrix".into()));
    }
    let field = c.field().clone();
    let n = c.rows();
    let mut powers: Vec<Vec<F::Elem>> = vec![Matrix::identity(field.clone(), n).data().to_vec()];
    let mut current = Matrix::identity(field.clone(), n);
    loop {
        current = current.mul(c)?;
        powers.push(current.data().to_vec());
        let k = powers.len();
        let mut krylov = Matrix::zeros(field.clone(), n * n, k);
        for (j, col) in powers.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                krylov.set(i, j, v.clone());
            }
        }
        if let Some(v) = krylov.kernel_basis().into_iter().next() {
            return Ok(Poly::new(field, v).monic());
        }
    }
}

/// Characteristic polynomial through reduction to upper Hessenberg form.
///
/// Independent of the Smith form and of the Krylov space, so it serves as a
/// cross-check for both.
pub fn characteristic_polynomial<F: Field>(c: &Matrix<F>) -> Result<Poly<F>> {
    if !c.is_square() {
        return Err(Error::ShapeMismatch("characteristic polynomial of a non-square matrix".into()));
    }
    let f = c.field().clone();
    let n = c.rows();
    let mut h = c.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(p) = (j + 1..n).find(|&i| !f.is_zero(h.get(i, j))) else {
            continue;
        };
        if p != j + 1 {
            h.swap_rows(p, j + 1);
            for r in 0..n {
                let a = h.get(r, p).clone();
                let b = h.get(r, j + 1).clone();
                h.set(r, p, b);
                h.set(r, j + 1, a);
            }
        }
        let inv = f.inv(h.get(j + 1, j)).expect("pivot is nonzero");
        for i in j + 2..n {
            let u = f.mul(h.get(i, j), &inv);
            if f.is_zero(&u) {
                continue;
            }
            for k in 0..n {
                let v = f.sub(h.get(i, k), &f.mul(&u, h.get(j + 1, k)));
                h.set(i, k, v);
            }
            for r in 0..n {
                let v = f.add(h.get(r, j + 1), &f.mul(&u, h.get(r, i)));
                h.set(r, j + 1, v);
            }
        }
    }
    let mut ps = vec![Poly::one(f.clone())];
    for m in 1..=n {
        let lin = Poly::linear(f.clone(), h.get(m - 1, m - 1));
        let mut pm = lin.mul(&ps[m - 1]);
        let mut t = f.one();
        for i in 1..m {
            t = f.mul(&t, h.get(m - i, m - i - 1));
            let coef = f.mul(&t, h.get(m - i - 1, m - 1));
            pm = pm.sub(&ps[m - i - 1].scale(&coef));
        }
        ps.push(pm);
    }
    Ok(ps.pop().expect("nonempty"))
}
