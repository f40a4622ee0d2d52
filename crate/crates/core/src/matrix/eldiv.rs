use std::fmt;

use super::{smith_invariant_factors, Matrix};
use crate::error::Result;
use crate::field::{BaseField, Field};
use crate::poly::{self, Poly};

/// All elementary divisors `irr^e` sharing one irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorGroup<F: Field> {
    pub irr: Poly<F>,
    /// Exponents with multiplicity, largest first.
    pub exps: Vec<usize>,
}

impl<F: Field> DivisorGroup<F> {
    pub fn max_exp(&self) -> usize {
        self.exps[0]
    }

    /// Distinct exponents in increasing order.
    pub fn distinct_exps(&self) -> Vec<usize> {
        let mut v = self.exps.clone();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// The multiset of elementary divisors of `xI - c`, grouped by irreducible
/// and canonically ordered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryDivisorMultiset<F: Field> {
    field: F,
    groups: Vec<DivisorGroup<F>>,
}

impl<F: Field> ElementaryDivisorMultiset<F> {
    /// Builds the multiset from `(monic irreducible, exponent)` entries.
    pub fn from_pairs(field: F, pairs: impl IntoIterator<Item = (Poly<F>, usize)>) -> Self {
        let mut groups: Vec<DivisorGroup<F>> = Vec::new();
        for (irr, e) in pairs {
            if e == 0 {
                continue;
            }
            let irr = irr.monic();
            match groups.iter_mut().find(|g| g.irr == irr) {
                Some(g) => g.exps.push(e),
                None => groups.push(DivisorGroup { irr, exps: vec![e] }),
            }
        }
        for g in groups.iter_mut() {
            g.exps.sort_unstable_by(|a, b| b.cmp(a));
        }
        groups.sort_by(|a, b| a.irr.cmp(&b.irr));
        ElementaryDivisorMultiset { field, groups }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn groups(&self) -> &[DivisorGroup<F>] {
        &self.groups
    }

    pub fn group(&self, irr: &Poly<F>) -> Option<&DivisorGroup<F>> {
        self.groups.iter().find(|g| g.irr == *irr)
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// The matrix size `sum deg(irr) * e`.
    pub fn size(&self) -> usize {
        self.groups
            .iter()
            .map(|g| g.irr.degree().unwrap_or(0) * g.exps.iter().sum::<usize>())
            .sum()
    }

    /// Every divisor with multiplicity, as `(irr, exponent)`.
    pub fn pairs(&self) -> impl Iterator<Item = (&Poly<F>, usize)> {
        self.groups
            .iter()
            .flat_map(|g| g.exps.iter().map(move |&e| (&g.irr, e)))
    }

    /// Number of distinct divisors (the set `E_c`).
    pub fn distinct_count(&self) -> usize {
        self.groups.iter().map(|g| g.distinct_exps().len()).sum()
    }

    /// Product of all divisors, which is the characteristic polynomial.
    pub fn product(&self) -> Poly<F> {
        self.pairs()
            .fold(Poly::one(self.field.clone()), |acc, (irr, e)| acc.mul(&irr.pow(e)))
    }

    /// `lcm` of the divisors, which is the minimal polynomial.
    pub fn minimal_polynomial(&self) -> Poly<F> {
        self.groups
            .iter()
            .fold(Poly::one(self.field.clone()), |acc, g| acc.mul(&g.irr.pow(g.max_exp())))
    }

    /// Block diagonal matrix of companion matrices with these divisors.
    pub fn realize(&self) -> Result<Matrix<F>> {
        let mut m = Matrix::zeros(self.field.clone(), 0, 0);
        for (irr, e) in self.pairs() {
            m = m.direct_sum(&Matrix::companion(&irr.pow(e))?)?;
        }
        Ok(m)
    }

    /// Divisors as display strings such as `(x - 1)^3`, in canonical order.
    pub fn display_list(&self) -> Vec<String> {
        self.pairs().map(|(irr, e)| display_power(irr, e)).collect()
    }
}

/// `irr^e` written with parentheses when needed.
pub fn display_power<F: Field>(irr: &Poly<F>, e: usize) -> String {
    let base = irr.to_string();
    let simple = !base.contains(' ');
    match (e, simple) {
        (1, _) => base,
        (_, true) => format!("{base}^{e}"),
        (_, false) => format!("({base})^{e}"),
    }
}

impl<F: Field> fmt::Display for ElementaryDivisorMultiset<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.display_list().join(", "))
    }
}

/// Factors each invariant factor of `xI - c` and groups the prime powers.
pub fn elementary_divisors<F: BaseField>(c: &Matrix<F>) -> Result<ElementaryDivisorMultiset<F>> {
    let mut pairs = Vec::new();
    for d in smith_invariant_factors(c)? {
        for (irr, m) in poly::factor(&d)?.factors {
            pairs.push((irr, m));
        }
    }
    Ok(ElementaryDivisorMultiset::from_pairs(c.field().clone(), pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn jordan_sum<F: Field>(field: F, blocks: &[(usize, i64)]) -> Matrix<F> {
        let mut m = Matrix::zeros(field.clone(), 0, 0);
        for &(n, a) in blocks {
            let b = Matrix::jordan_block(field.clone(), n, &field.from_i64(a));
            m = m.direct_sum(&b).unwrap();
        }
        m
    }

    #[test]
    fn jordan_examples() {
        let c = jordan_sum(Rationals, &[(3, 0), (1, 0), (1, 1)]);
        let e = elementary_divisors(&c).unwrap();
        // canonical order puts x - 1 = [-1, 1] before x = [0, 1]
        assert_eq!(e.display_list(), vec!["x - 1", "x^3", "x"]);
        assert_eq!(e.groups()[1].exps, vec![3, 1]);
        assert_eq!(e.size(), 5);

        let d = jordan_sum(Rationals, &[(3, 1), (2, 1)]);
        let e = elementary_divisors(&d).unwrap();
        assert_eq!(e.display_list(), vec!["(x - 1)^3", "(x - 1)^2"]);

        let f5 = PrimeField::new(5).unwrap();
        let e = elementary_divisors(&Matrix::identity(f5, 3)).unwrap();
        assert_eq!(e.groups().len(), 1);
        assert_eq!(e.groups()[0].exps, vec![1, 1, 1]);
    }

    #[test]
    fn random_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for p in [2, 3, 5] {
            let f = PrimeField::new(p).unwrap();
            for n in 1..=7 {
                for _ in 0..4 {
                    let c = Matrix::random(f, n, n, &mut rng);
                    let e = elementary_divisors(&c).unwrap();
                    assert_eq!(e.size(), n);
                    assert_eq!(e.product(), super::super::characteristic_polynomial(&c).unwrap());
                    assert_eq!(e.minimal_polynomial(), super::super::minimal_polynomial(&c).unwrap());
                    let g = Matrix::random_invertible(f, n, &mut rng);
                    let conj = g.mul(&c).unwrap().mul(&g.inverse().unwrap()).unwrap();
                    assert_eq!(elementary_divisors(&conj).unwrap(), e);
                    assert_eq!(elementary_divisors(&e.realize().unwrap()).unwrap(), e);
                }
            }
        }
    }
}
