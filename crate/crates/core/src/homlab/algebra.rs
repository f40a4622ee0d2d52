use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::sequiv::PowerIndexSet;

/// `h(a, b, t)`: the map `M(a) -> M(b)` sending `1` to `x^t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel {
    pub a: usize,
    pub b: usize,
    pub t: usize,
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h({},{},{})", self.a, self.b, self.t)
    }
}

/// Admissible `t` for `Hom(M(a), M(b))`.
pub fn hom_range(a: usize, b: usize) -> std::ops::Range<usize> {
    b.saturating_sub(a)..b
}

/// `End_U(⊕_{e ∈ E} M(e))` for `U = K[x]/(x^n)`, with basis `h(a, b, t)`.
///
/// Products compose left to right: `h(a,b,t) h(b,c,s) = h(a,c,t+s)` when
/// `t + s < c`, and every other product of basis elements is zero.
#[derive(Clone, Debug)]
pub struct StructureConstantAlgebra<K: Field> {
    field: K,
    n: usize,
    exps: Vec<usize>,
    basis: Vec<BasisLabel>,
    index: BTreeMap<BasisLabel, usize>,
    /// `table[i * dim + j]` is the basis index of `basis[i] basis[j]`.
    table: Vec<Option<usize>>,
}

fn vertex_of(exps: &[usize], e: usize) -> usize {
    exps.binary_search(&e).expect("exponent belongs to E")
}

/// Validates `(n, E)` for a generator: every exponent in `1..=n`, `n ∈ E`.
pub fn check_generator(n: usize, exps: &PowerIndexSet) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange("Loewy length must be positive".into()));
    }
    if let Some(bad) = exps.values().find(|&e| e == 0 || e > n) {
        return Err(Error::OutOfRange(format!("exponent {bad} outside 1..={n}")));
    }
    if !exps.contains(n) {
        return Err(Error::MissingTopExponent(n));
    }
    Ok(())
}

impl<K: Field> StructureConstantAlgebra<K> {
    pub fn new(field: K, n: usize, exps: &PowerIndexSet) -> Result<Self> {
        check_generator(n, exps)?;
        let exps = exps.to_vec();
        let mut basis = Vec::new();
        for &a in &exps {
            for &b in &exps {
                for t in hom_range(a, b) {
                    basis.push(BasisLabel { a, b, t });
                }
            }
        }
        let index: BTreeMap<BasisLabel, usize> = basis.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let d = basis.len();
        let mut table = vec![None; d * d];
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                if x.b == y.a && x.t + y.t < y.b {
                    table[i * d + j] = Some(index[&BasisLabel { a: x.a, b: y.b, t: x.t + y.t }]);
                }
            }
        }
        let alg = StructureConstantAlgebra {
            field,
            n,
            exps,
            basis,
            index,
            table,
        };
        alg.check_associativity()?;
        Ok(alg)
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn exps(&self) -> &[usize] {
        &self.exps
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.exps.len()
    }

    pub fn basis(&self) -> &[BasisLabel] {
        &self.basis
    }

    pub fn label(&self, i: usize) -> BasisLabel {
        self.basis[i]
    }

    pub fn index_of(&self, l: BasisLabel) -> Option<usize> {
        self.index.get(&l).copied()
    }

    /// Source and target vertex of a basis element.
    pub fn ends(&self, i: usize) -> (usize, usize) {
        let l = self.basis[i];
        (vertex_of(&self.exps, l.a), vertex_of(&self.exps, l.b))
    }

    pub fn product(&self, i: usize, j: usize) -> Option<usize> {
        self.table[i * self.dim() + j]
    }

    /// The coefficient of `basis[k]` in `basis[i] basis[j]`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> K::Elem {
        if self.product(i, j) == Some(k) {
            self.field.one()
        } else {
            self.field.zero()
        }
    }

    pub fn idempotent(&self, v: usize) -> usize {
        let a = self.exps[v];
        self.index[&BasisLabel { a, b: a, t: 0 }]
    }

    /// Basis indices of `Hom(M(e_v), M(e_w))`, ordered by `t`.
    pub fn hom_basis(&self, v: usize, w: usize) -> Vec<usize> {
        let (a, b) = (self.exps[v], self.exps[w]);
        hom_range(a, b).map(|t| self.index[&BasisLabel { a, b, t }]).collect()
    }

    /// `cartan[v][w] = dim e_v Λ e_w`.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        let k = self.vertex_count();
        let mut c = vec![vec![0; k]; k];
        for i in 0..self.dim() {
            let (v, w) = self.ends(i);
            c[v][w] += 1;
        }
        c
    }

    pub fn check_associativity(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = self.product(i, j);
                for k in 0..d {
                    let left = ij.and_then(|x| self.product(x, k));
                    let right = self.product(j, k).and_then(|y| self.product(i, y));
                    if left != right {
                        return Err(Error::NotAssociative(format!(
                            "({} {}) {} != {} ({} {})",
                            self.basis[i], self.basis[j], self.basis[k], self.basis[i], self.basis[j], self.basis[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Non-isomorphisms: everything except the idempotents `h(a, a, 0)`.
    pub fn radical_basis(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| {
                let l = self.basis[i];
                l.a != l.b || l.t > 0
            })
            .collect()
    }

    /// Basis of `rad^k` (which is spanned by basis elements).
    pub fn radical_power(&self, k: usize) -> Vec<usize> {
        if k == 0 {
            return (0..self.dim()).collect();
        }
        let rad = self.radical_basis();
        let mut cur: BTreeSet<usize> = rad.iter().copied().collect();
        for _ in 1..k {
            cur = cur
                .iter()
                .flat_map(|&x| rad.iter().filter_map(move |&r| self.product(x, r)))
                .collect();
        }
        cur.into_iter().collect()
    }

    /// Least `k` with `rad^k = 0`.
    pub fn loewy_length(&self) -> usize {
        (0..=self.dim()).find(|&k| self.radical_power(k).is_empty()).expect("radical is nilpotent")
    }

    /// Basis elements spanning `rad / rad^2`.
    pub fn arrows(&self) -> Vec<usize> {
        let sq: BTreeSet<usize> = self.radical_power(2).into_iter().collect();
        self.radical_basis().into_iter().filter(|i| !sq.contains(i)).collect()
    }

    /// `h(a, b, t) -> h(b, a, t + a - b)`.
    pub fn anti_automorphism(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|l| {
                self.index[&BasisLabel {
                    a: l.b,
                    b: l.a,
                    t: l.t + l.a - l.b,
                }]
            })
            .collect()
    }

    /// Checks that [`Self::anti_automorphism`] is a bijection fixing the
    /// idempotents with `σ(xy) = σ(y) σ(x)` on all basis pairs.
    pub fn check_anti_automorphism(&self) -> bool {
        let s = self.anti_automorphism();
        let distinct: BTreeSet<usize> = s.iter().copied().collect();
        if distinct.len() != self.dim() {
            return false;
        }
        if (0..self.vertex_count()).any(|v| s[self.idempotent(v)] != self.idempotent(v)) {
            return false;
        }
        (0..self.dim()).all(|i| {
            (0..self.dim()).all(|j| self.product(i, j).map(|k| s[k]) == self.product(s[j], s[i]))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn alg(n: usize, e: &[usize]) -> StructureConstantAlgebra<PrimeField> {
        let f = PrimeField::new(2).unwrap();
        StructureConstantAlgebra::new(f, n, &e.iter().copied().collect()).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(alg(2, &[1, 2]).dim(), 5);
        assert_eq!(alg(1, &[1]).dim(), 1);
        assert_eq!(alg(3, &[3]).dim(), 3);
        let a = alg(4, &[1, 3, 4]);
        assert_eq!(a.cartan(), vec![vec![1, 1, 1], vec![1, 3, 3], vec![1, 3, 4]]);
        let f = PrimeField::new(2).unwrap();
        let e: PowerIndexSet = [1, 2].into_iter().collect();
        assert_eq!(StructureConstantAlgebra::new(f, 3, &e).unwrap_err().kind(), "MissingTopExponent");
    }

    #[test]
    fn radical_examples() {
        assert!(alg(1, &[1]).radical_basis().is_empty());
        let a = alg(2, &[1, 2]);
        assert_eq!(a.radical_basis().len(), 3);
        assert_eq!(a.radical_power(2).len(), 1);
        assert_eq!(a.radical_power(3).len(), 0);
        assert_eq!(a.arrows().len(), 2);
        let u = alg(4, &[4]);
        assert_eq!(u.loewy_length(), 4);
        assert_eq!(u.arrows().len(), 1);
    }

    #[test]
    fn anti_automorphism_all_small() {
        for n in 1..=5usize {
            for mask in 0..(1u32 << (n - 1)) {
                let mut e: Vec<usize> = (1..n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                e.push(n);
                let a = alg(n, &e);
                assert!(a.check_anti_automorphism(), "n={n} E={e:?}");
            }
        }
    }
}
