//! Block structure of the centralizer `S_n(c, R)`.
//!
//! Each irreducible `f` of the minimal polynomial contributes one block,
//! the endomorphism algebra of a generator over `R[x]/(f^n)`.

use crate::error::{Error, Result};
use crate::field::{BaseField, Field, FieldSpec};
use crate::matrix::{elementary_divisors, ElementaryDivisorMultiset, Matrix};
use crate::poly::Poly;
use crate::sequiv::PowerIndexSet;

/// Largest `n` accepted by [`brute_force_centralizer_dim`] by default.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockReport<F: Field> {
    pub irr: Poly<F>,
    /// Exponent of `irr` in the minimal polynomial.
    pub n: usize,
    /// Exponents of `irr` among the elementary divisors, largest first.
    pub exps: Vec<usize>,
    pub distinct_exps: PowerIndexSet,
    pub dim_block: usize,
    pub is_semisimple: bool,
    pub has_nodes: bool,
    /// Morita class of the Frobenius part, `R[x]/(irr^n)`.
    pub frobenius_class: (Poly<F>, usize),
}

impl<F: Field> BlockReport<F> {
    pub fn nonprojective_simples(&self) -> usize {
        if self.n >= 2 {
            self.distinct_exps.len()
        } else {
            0
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerReport<F: Field> {
    pub n: usize,
    pub field: FieldSpec,
    pub blocks: Vec<BlockReport<F>>,
    pub total_dim: usize,
    pub num_simples: usize,
    pub num_nonproj_simples: usize,
}

/// `deg(f) * sum_{a, b} min(a, b)` over the exponents with multiplicity.
pub fn block_dimension(degree: usize, exps: &[usize]) -> usize {
    let s: usize = exps
        .iter()
        .flat_map(|&a| exps.iter().map(move |&b| a.min(b)))
        .sum();
    degree * s
}

impl<F: BaseField> CentralizerReport<F> {
    pub fn from_divisors(e: &ElementaryDivisorMultiset<F>) -> Self {
        let blocks: Vec<BlockReport<F>> = e
            .groups()
            .iter()
            .map(|g| {
                let n = g.max_exp();
                BlockReport {
                    irr: g.irr.clone(),
                    n,
                    exps: g.exps.clone(),
                    distinct_exps: g.distinct_exps().into_iter().collect(),
                    dim_block: block_dimension(g.irr.degree().unwrap_or(0), &g.exps),
                    is_semisimple: n == 1,
                    has_nodes: n == 2,
                    frobenius_class: (g.irr.clone(), n),
                }
            })
            .collect();
        let mut r = CentralizerReport {
            n: e.size(),
            field: e.field().spec(),
            total_dim: blocks.iter().map(|b| b.dim_block).sum(),
            num_simples: e.distinct_count(),
            num_nonproj_simples: 0,
            blocks,
        };
        r.num_nonproj_simples = count_nonprojective_simples(&r);
        r
    }
}

pub fn decompose<F: BaseField>(c: &Matrix<F>) -> Result<CentralizerReport<F>> {
    Ok(CentralizerReport::from_divisors(&elementary_divisors(c)?))
}

pub fn count_nonprojective_simples<F: Field>(report: &CentralizerReport<F>) -> usize {
    report.blocks.iter().map(BlockReport::nonprojective_simples).sum()
}

/// Kernel dimension of `a -> ca - ac` on `M_n(R)`.
pub fn brute_force_centralizer_dim<F: Field>(c: &Matrix<F>) -> Result<usize> {
    brute_force_centralizer_dim_capped(c, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn brute_force_centralizer_dim_capped<F: Field>(c: &Matrix<F>, cap: usize) -> Result<usize> {
    if !c.is_square() {
        return Err(Error::ShapeMismatch(format!("{}x{} matrix is not square", c.rows(), c.cols())));
    }
    let n = c.rows();
    if n > cap {
        return Err(Error::SizeCapExceeded { n, cap });
    }
    let field = c.field().clone();
    let mut m = Matrix::zeros(field.clone(), n * n, n * n);
    // (ca - ac)_{ij} = sum_k c_ik a_kj - sum_l a_il c_lj
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for k in 0..n {
                let v = field.add(m.get(row, k * n + j), c.get(i, k));
                m.set(row, k * n + j, v);
            }
            for l in 0..n {
                let v = field.sub(m.get(row, i * n + l), c.get(l, j));
                m.set(row, i * n + l, v);
            }
        }
    }
    Ok(n * n - m.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::perm::{perm_elementary_divisors, CycleType};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn jordan_sum<F: Field>(field: F, blocks: &[(usize, i64)]) -> Matrix<F> {
        let mut m = Matrix::zeros(field.clone(), 0, 0);
        for &(n, a) in blocks {
            m = m.direct_sum(&Matrix::jordan_block(field.clone(), n, &field.from_i64(a))).unwrap();
        }
        m
    }

    #[test]
    fn jordan_examples() {
        let c = jordan_sum(Rationals, &[(3, 0), (1, 0), (1, 1)]);
        let r = decompose(&c).unwrap();
        assert_eq!(r.blocks.len(), 2);
        let x = &r.blocks[1];
        assert_eq!((x.n, x.exps.clone()), (3, vec![3, 1]));
        let xm1 = &r.blocks[0];
        assert_eq!((xm1.n, xm1.exps.clone(), xm1.is_semisimple), (1, vec![1], true));
        assert_eq!(r.num_nonproj_simples, 2);
        assert_eq!(r.total_dim, brute_force_centralizer_dim(&c).unwrap());

        let d = jordan_sum(Rationals, &[(3, 1), (2, 1)]);
        let r = decompose(&d).unwrap();
        assert_eq!(r.blocks.len(), 1);
        assert_eq!(r.blocks[0].exps, vec![3, 2]);
        assert_eq!(r.num_nonproj_simples, 2);

        let f5 = PrimeField::new(5).unwrap();
        let r = decompose(&Matrix::identity(f5, 4)).unwrap();
        assert_eq!((r.total_dim, r.num_simples, r.num_nonproj_simples), (16, 1, 0));
        assert!(r.blocks[0].is_semisimple);
    }

    #[test]
    fn brute_force_examples() {
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(brute_force_centralizer_dim(&jordan_sum(f2, &[(2, 0), (1, 0)])).unwrap(), 5);
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(brute_force_centralizer_dim(&Matrix::identity(f5, 3)).unwrap(), 9);
        assert_eq!(brute_force_centralizer_dim(&jordan_sum(Rationals, &[(3, 0)])).unwrap(), 3);
        let big = Matrix::identity(f5, 13);
        assert_eq!(brute_force_centralizer_dim(&big).unwrap_err().kind(), "SizeCapExceeded");
    }

    #[test]
    fn permutation_example() {
        let f3 = PrimeField::new(3).unwrap();
        let e = perm_elementary_divisors(&f3, &CycleType::new(vec![6, 1]).unwrap()).unwrap();
        let r = CentralizerReport::from_divisors(&e);
        assert_eq!(r.num_nonproj_simples, 3);
        assert!(r.blocks.iter().all(|b| b.n == 3 && !b.has_nodes));
    }

    #[test]
    fn formula_matches_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2, 3, 5] {
            let f = PrimeField::new(p).unwrap();
            for n in 1..=7 {
                for _ in 0..3 {
                    let c = Matrix::random(f, n, n, &mut rng);
                    let r = decompose(&c).unwrap();
                    let bf = brute_force_centralizer_dim(&c).unwrap();
                    assert_eq!(r.total_dim, bf);
                    assert_eq!(brute_force_centralizer_dim(&c.transpose()).unwrap(), bf);
                    let g = Matrix::random_invertible(f, n, &mut rng);
                    let conj = g.mul(&c).unwrap().mul(&g.inverse().unwrap()).unwrap();
                    assert_eq!(decompose(&conj).unwrap(), r);
                }
            }
        }
        // nilpotent rank-one and Jordan inputs
        let c = jordan_sum(Rationals, &[(2, 0), (2, 0), (1, 3), (1, 3)]);
        assert_eq!(decompose(&c).unwrap().total_dim, brute_force_centralizer_dim(&c).unwrap());
    }
}
