//! Benchmark fixtures.

use cma_core::field::{Field, PrimeField};
use cma_core::matrix::{ElementaryDivisorMultiset, Matrix};
use cma_core::perm::{perm_elementary_divisors, CycleType};
use cma_core::Poly;

/// Direct sum of companion matrices of `x^k` and `(x - 1)^k` blocks, conjugated
/// by a fixed unitriangular matrix so the input is dense.
pub fn dense_fixture(p: u64, n: usize) -> Matrix<PrimeField> {
    let f = PrimeField::new(p).unwrap();
    let mut m = Matrix::zeros(f, 0, 0);
    let mut left = n;
    let mut k = 1;
    while left > 0 {
        let size = k.min(left);
        let a = f.from_i64((k % 2) as i64);
        m = m.direct_sum(&Matrix::jordan_block(f, size, &a)).unwrap();
        left -= size;
        k += 1;
    }
    let mut t = Matrix::identity(f, n);
    for i in 0..n {
        for j in i + 1..n {
            t.set(i, j, f.from_i64((i * 7 + j * 3 + 1) as i64));
        }
    }
    t.mul(&m).unwrap().mul(&t.inverse().unwrap()).unwrap()
}

/// `x^(p^k) - x`, the product of all monic irreducibles of degree dividing k.
pub fn artin_schreier_like(p: u64, k: u32) -> Poly<PrimeField> {
    let f = PrimeField::new(p).unwrap();
    let q = p.pow(k) as usize;
    Poly::x(f).pow(q).sub(&Poly::x(f))
}

/// Divisors of the permutation class with the given cycle type.
pub fn perm_divisors(p: u64, parts: &[usize]) -> ElementaryDivisorMultiset<PrimeField> {
    let f = PrimeField::new(p).unwrap();
    perm_elementary_divisors(&f, &CycleType::new(parts.to_vec()).unwrap()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use cma_core::matrix::elementary_divisors;

    #[test]
    fn fixtures_are_well_formed() {
        let m = dense_fixture(5, 10);
        assert_eq!(elementary_divisors(&m).unwrap().size(), 10);
        assert_eq!(artin_schreier_like(3, 2).degree(), Some(9));
        assert_eq!(perm_divisors(3, &[6, 2]).size(), 8);
    }
}
