use proptest::prelude::*;

use cma_core::centralizer::{brute_force_centralizer_dim, decompose};
use cma_core::field::{Field, PrimeField, Rationals};
use cma_core::homlab::{ext_dim, omega_set, syzygy_exponent};
use cma_core::matrix::{characteristic_polynomial, elementary_divisors, smith_invariant_factors, Matrix};
use cma_core::perm::{cycle_type, perm_elementary_divisors, permutation_matrix, regular_singular_parts, Permutation};
use cma_core::poly::{self, Poly};
use cma_core::sequiv::{j_transform, s_equivalent, PowerIndexSet};

fn prime() -> impl Strategy<Value = PrimeField> {
    prop::sample::select(vec![2u64, 3, 5, 7, 101]).prop_map(|p| PrimeField::new(p).unwrap())
}

fn poly_over(f: PrimeField, max_deg: usize) -> impl Strategy<Value = Poly<PrimeField>> {
    prop::collection::vec(0..f.characteristic(), 1..=max_deg + 1).prop_map(move |c| Poly::new(f, c))
}

fn matrix_over(f: PrimeField, max_n: usize) -> impl Strategy<Value = Matrix<PrimeField>> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(0..f.characteristic(), n * n).prop_map(move |d| Matrix::new(f, n, n, d).unwrap())
    })
}

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(&v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prime_field_axioms(f in prime(), a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
        let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
        if !f.is_zero(&a) {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
    }

    #[test]
    fn rational_inverse(n in -1000i64..1000, d in 1i64..1000) {
        let q = Rationals;
        let a = q.div(&q.from_i64(n), &q.from_i64(d)).unwrap();
        if !q.is_zero(&a) {
            prop_assert_eq!(q.mul(&a, &q.inv(&a).unwrap()), q.one());
        }
    }

    #[test]
    fn division_identity((a, b) in prime().prop_flat_map(|f| (poly_over(f, 8), poly_over(f, 5)))) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn factorization_expands(a in prime().prop_flat_map(|f| poly_over(f, 10))) {
        prop_assume!(a.degree().unwrap_or(0) >= 1);
        let fac = poly::factor(&a).unwrap();
        prop_assert_eq!(fac.expand(a.field()), a.clone());
        for (g, _) in &fac.factors {
            prop_assert!(g.is_monic());
            prop_assert!(poly::is_irreducible_finite(g).unwrap());
        }
    }

    #[test]
    fn gcd_divides_both((a, b) in prime().prop_flat_map(|f| (poly_over(f, 6), poly_over(f, 6)))) {
        let g = a.gcd(&b);
        prop_assume!(!g.is_zero());
        prop_assert!(g.divides(&a) && g.divides(&b));
    }

    #[test]
    fn smith_chain(c in prime().prop_flat_map(|f| matrix_over(f, 6))) {
        let inv = smith_invariant_factors(&c).unwrap();
        for w in inv.windows(2) {
            prop_assert!(w[0].divides(&w[1]));
        }
        let prod = inv.iter().fold(Poly::one(*c.field()), |acc, d| acc.mul(d));
        prop_assert_eq!(prod, characteristic_polynomial(&c).unwrap());
    }

    #[test]
    fn divisors_realize(c in prime().prop_flat_map(|f| matrix_over(f, 6))) {
        let e = elementary_divisors(&c).unwrap();
        prop_assert_eq!(e.size(), c.rows());
        prop_assert_eq!(elementary_divisors(&e.realize().unwrap()).unwrap(), e);
    }

    #[test]
    fn centralizer_formula(c in prime().prop_flat_map(|f| matrix_over(f, 6))) {
        let r = decompose(&c).unwrap();
        prop_assert_eq!(r.total_dim, brute_force_centralizer_dim(&c).unwrap());
        prop_assert_eq!(r.total_dim, brute_force_centralizer_dim(&c.transpose()).unwrap());
        prop_assert_eq!(r.num_nonproj_simples, r.blocks.iter().filter(|b| b.n >= 2).map(|b| b.distinct_exps.len()).sum::<usize>());
        for b in &r.blocks {
            prop_assert_eq!(b.exps[0], b.n);
            prop_assert_eq!(b.is_semisimple, b.n == 1);
            prop_assert_eq!(b.has_nodes, b.n == 2);
        }
    }

    #[test]
    fn s_equivalence_symmetric(
        (c, d) in prime().prop_flat_map(|f| (matrix_over(f, 5), matrix_over(f, 5)))
    ) {
        let (ec, ed) = (elementary_divisors(&c).unwrap(), elementary_divisors(&d).unwrap());
        prop_assert!(s_equivalent(&ec, &ec).unwrap().is_equivalent());
        prop_assert_eq!(
            s_equivalent(&ec, &ed).unwrap().is_equivalent(),
            s_equivalent(&ed, &ec).unwrap().is_equivalent()
        );
    }

    #[test]
    fn perm_formula(s in permutation(8), f in prime()) {
        prop_assume!(f.characteristic() < 100);
        let e = perm_elementary_divisors(&f, &cycle_type(&s)).unwrap();
        prop_assert_eq!(e, elementary_divisors(&permutation_matrix(&s, &f)).unwrap());
    }

    #[test]
    fn regular_singular_commute(s in permutation(10), p in prop::sample::select(vec![2u64, 3, 5])) {
        let (r, sg) = regular_singular_parts(&s, p);
        prop_assert_eq!(r.then(&sg).unwrap(), s.clone());
        prop_assert_eq!(sg.then(&r).unwrap(), s);
    }

    #[test]
    fn omega_is_j(v in prop::collection::btree_set(1usize..12, 1..6)) {
        let e: PowerIndexSet = v.into_iter().collect();
        let n = PowerIndexSet::max(&e).unwrap();
        prop_assert_eq!(omega_set(n, &e).unwrap(), j_transform(&e).unwrap());
        for x in e.values().filter(|&x| x != n) {
            prop_assert_eq!(syzygy_exponent(x, n).unwrap(), n - x);
        }
    }

    #[test]
    fn ext_periodic(n in 1usize..9, a in 1usize..9, b in 1usize..9, i in 1usize..6) {
        prop_assume!(a <= n && b <= n);
        prop_assert_eq!(ext_dim(a, b, i, n).unwrap(), ext_dim(a, b, i + 2, n).unwrap());
    }
}
