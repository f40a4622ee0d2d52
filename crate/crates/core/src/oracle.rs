//! Random generators and the property suites behind `cma oracle` and the
//! acceptance tests. Every suite is deterministic in its seed.

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::centralizer::{brute_force_centralizer_dim, decompose, CentralizerReport};
use crate::error::Result;
use crate::field::{Field, PrimeField};
use crate::homlab::{
    dominant_dimension, dominant_dimension_by_coresolution, hom_dim_report, omega_set, realize_block,
    residue_field, GlDim, DEFAULT_RESOLUTION_CAP,
};
use crate::matrix::{elementary_divisors, ElementaryDivisorMultiset, Matrix};
use crate::perm::{
    cycle_type, normalize_certificate, p_power_j_constraint, perm_elementary_divisors, permutation_matrix,
    regular_singular_parts, CycleType, PPowerClass, Permutation,
};
use crate::poly::{is_irreducible_finite, Poly};
use crate::sequiv::{j_transform, s_equivalent, PowerIndexSet, SEquivOutcome};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
    /// Trials where an implication's premise held, for conditional suites.
    pub premises: Option<usize>,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult {
            name,
            trials: 0,
            failures: 0,
            premises: None,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    fn fail_err(&mut self, e: crate::Error) {
        self.check(false, || format!("error: {e}"));
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_prime<R: Rng + ?Sized>(rng: &mut R, primes: &[u64]) -> PrimeField {
    PrimeField::new(*primes.choose(rng).expect("nonempty")).expect("prime")
}

pub fn random_irreducible<R: Rng + ?Sized>(field: &PrimeField, degree: usize, rng: &mut R) -> Poly<PrimeField> {
    loop {
        let mut c: Vec<u64> = (0..degree).map(|_| field.random_elem(rng)).collect();
        c.push(1);
        let f = Poly::new(*field, c);
        if is_irreducible_finite(&f).expect("finite field") {
            return f;
        }
    }
}

/// Distinct irreducibles with a random exponent multiset each.
pub fn random_divisors<R: Rng + ?Sized>(
    field: &PrimeField,
    groups: usize,
    max_exp: usize,
    rng: &mut R,
) -> ElementaryDivisorMultiset<PrimeField> {
    let mut used = BTreeSet::new();
    let mut pairs = Vec::new();
    while used.len() < groups {
        let deg = rng.random_range(1..=3);
        let g = random_irreducible(field, deg, rng);
        if !used.insert(g.coeffs().to_vec()) {
            continue;
        }
        let exps = random_set(rng, max_exp);
        for e in exps.values() {
            for _ in 0..rng.random_range(1..=2) {
                pairs.push((g.clone(), e));
            }
        }
    }
    ElementaryDivisorMultiset::from_pairs(*field, pairs)
}

/// Nonempty subset of `1..=max`.
pub fn random_set<R: Rng + ?Sized>(rng: &mut R, max: usize) -> PowerIndexSet {
    loop {
        let s: PowerIndexSet = (1..=max).filter(|_| rng.random_bool(0.4)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}

/// An S-equivalent partner: every irreducible is renamed to a fresh one of
/// the same degree, and each reducible group's exponent set is replaced by
/// its J-transform with probability one half.
pub fn s_equivalent_partner<R: Rng + ?Sized>(
    e: &ElementaryDivisorMultiset<PrimeField>,
    rng: &mut R,
) -> ElementaryDivisorMultiset<PrimeField> {
    let field = *e.field();
    let mut used: BTreeSet<Vec<u64>> = e.groups().iter().map(|g| g.irr.coeffs().to_vec()).collect();
    let mut pairs = Vec::new();
    for g in e.groups() {
        let deg = g.irr.degree().expect("nonconstant");
        let irr = if rng.random_bool(0.7) {
            // the number of monic irreducibles of degree 1 over F_2 is small
            let mut tries = 0;
            loop {
                let h = random_irreducible(&field, deg, rng);
                tries += 1;
                if used.insert(h.coeffs().to_vec()) {
                    break h;
                }
                if tries > 50 {
                    break g.irr.clone();
                }
            }
        } else {
            g.irr.clone()
        };
        let set: PowerIndexSet = g.distinct_exps().into_iter().collect();
        let set = if g.max_exp() >= 2 && rng.random_bool(0.5) {
            j_transform(&set).expect("nonempty")
        } else {
            set
        };
        for v in set.values() {
            for _ in 0..rng.random_range(1..=2) {
                pairs.push((irr.clone(), v));
            }
        }
    }
    ElementaryDivisorMultiset::from_pairs(field, pairs)
}

/// Random matrix with prescribed structure: realized divisors conjugated by
/// a random invertible matrix.
pub fn random_structured_matrix<R: Rng + ?Sized>(field: &PrimeField, max_n: usize, rng: &mut R) -> Matrix<PrimeField> {
    loop {
        let groups = rng.random_range(1..=2);
        let e = random_divisors(field, groups, 3, rng);
        if e.size() > max_n {
            continue;
        }
        let c = e.realize().expect("monic");
        let g = Matrix::random_invertible(*field, c.rows(), rng);
        return g.mul(&c).unwrap().mul(&g.inverse().unwrap()).unwrap();
    }
}

pub fn random_matrix<R: Rng + ?Sized>(field: &PrimeField, max_n: usize, rng: &mut R) -> Matrix<PrimeField> {
    if rng.random_bool(0.5) {
        let n = rng.random_range(1..=max_n);
        Matrix::random(*field, n, n, rng)
    } else {
        random_structured_matrix(field, max_n, rng)
    }
}

/// Perm formula against SNF for every cycle type of size `<= max_n`.
pub fn suite_formula_vs_snf(primes: &[u64], max_n: usize) -> SuiteResult {
    let mut r = SuiteResult::new("formula-vs-snf");
    for &p in primes {
        let f = PrimeField::new(p).expect("prime");
        for n in 1..=max_n {
            for t in CycleType::all(n) {
                let c = permutation_matrix(&Permutation::from_cycle_type(&t), &f);
                match (perm_elementary_divisors(&f, &t), elementary_divisors(&c)) {
                    (Ok(a), Ok(b)) => r.check(a == b, || format!("p={p} type {t}: {a} vs {b}")),
                    (Err(e), _) | (_, Err(e)) => r.fail_err(e),
                }
            }
        }
    }
    r
}

pub fn suite_commutant_dimension(seed: u64, trials: usize) -> SuiteResult {
    let mut r = SuiteResult::new("commutant-dimension");
    let mut rng = rng(seed);
    for _ in 0..trials {
        let f = random_prime(&mut rng, &[2, 3, 5]);
        let c = random_matrix(&f, 7, &mut rng);
        match (decompose(&c), brute_force_centralizer_dim(&c)) {
            (Ok(rep), Ok(bf)) => r.check(rep.total_dim == bf, || format!("{c:?}: formula {} vs kernel {bf}", rep.total_dim)),
            (Err(e), _) | (_, Err(e)) => r.fail_err(e),
        }
    }
    r
}

pub fn suite_arc_invariant(seed: u64, trials: usize) -> SuiteResult {
    let mut r = SuiteResult::new("arc-invariant");
    let mut rng = rng(seed);
    for _ in 0..trials {
        let f = random_prime(&mut rng, &[2, 3, 5]);
        let groups = rng.random_range(1..=4);
        let e = random_divisors(&f, groups, 6, &mut rng);
        let d = s_equivalent_partner(&e, &mut rng);
        match s_equivalent(&e, &d) {
            Ok(v) => {
                let (a, b) = (
                    CentralizerReport::from_divisors(&e).num_nonproj_simples,
                    CentralizerReport::from_divisors(&d).num_nonproj_simples,
                );
                r.check(v.is_equivalent() && a == b, || format!("{e} vs {d}: equivalent={} counts {a}/{b}", v.is_equivalent()));
            }
            Err(err) => r.fail_err(err),
        }
    }
    r
}

pub fn suite_equivalence_relation(seed: u64, trials: usize) -> SuiteResult {
    let mut r = SuiteResult::new("equivalence-relation");
    let mut rng = rng(seed);
    for _ in 0..trials {
        let f = random_prime(&mut rng, &[2, 3, 5]);
        let groups = rng.random_range(1..=3);
        let a = random_divisors(&f, groups, 5, &mut rng);
        let b = if rng.random_bool(0.7) {
            s_equivalent_partner(&a, &mut rng)
        } else {
            random_divisors(&f, groups, 5, &mut rng)
        };
        let c = if rng.random_bool(0.7) {
            s_equivalent_partner(&b, &mut rng)
        } else {
            random_divisors(&f, groups, 5, &mut rng)
        };
        let eq = |x: &ElementaryDivisorMultiset<PrimeField>, y: &ElementaryDivisorMultiset<PrimeField>| {
            s_equivalent(x, y).map(|v| v.is_equivalent())
        };
        let res = (|| -> Result<bool> {
            let refl = eq(&a, &a)?;
            let sym = eq(&a, &b)? == eq(&b, &a)?;
            let trans = !(eq(&a, &b)? && eq(&b, &c)?) || eq(&a, &c)?;
            Ok(refl && sym && trans)
        })();
        match res {
            Ok(ok) => r.check(ok, || format!("{a} / {b} / {c}")),
            Err(e) => r.fail_err(e),
        }
    }
    r
}

pub fn suite_similarity(seed: u64, trials: usize) -> SuiteResult {
    let mut r = SuiteResult::new("similarity");
    let mut rng = rng(seed);
    for _ in 0..trials {
        let f = random_prime(&mut rng, &[2, 3, 5]);
        let c = random_matrix(&f, 7, &mut rng);
        let g = Matrix::random_invertible(f, c.rows(), &mut rng);
        let d = g.mul(&c).unwrap().mul(&g.inverse().unwrap()).unwrap();
        let res = (|| -> Result<bool> {
            Ok(s_equivalent(&elementary_divisors(&c)?, &elementary_divisors(&d)?)?.is_equivalent())
        })();
        match res {
            Ok(ok) => r.check(ok, || format!("{c:?} conjugated by {g:?}")),
            Err(e) => r.fail_err(e),
        }
    }
    r
}

pub fn suite_j_involution(seed: u64, trials: usize) -> SuiteResult {
    let mut r = SuiteResult::new("j-involution");
    let mut rng = rng(seed);
    for _ in 0..trials {
        let max = rng.random_range(1..=40);
        let t = random_set(&mut rng, max);
        match j_transform(&t).and_then(|j| j_transform(&j)) {
            Ok(jj) => r.check(jj == t, || format!("J(J({t})) = {jj}")),
            Err(e) => r.fail_err(e),
        }
    }
    r
}

/// Every pair of p-power sets of size `<= 4` with maximum `<= p^4` and
/// `S = J(T)` is classified.
pub fn suite_p_power_classification(primes: &[u64]) -> SuiteResult {
    let mut r = SuiteResult::new("p-power-classification");
    for &p in primes {
        let powers: Vec<usize> = (0..=4).map(|k| (p as usize).pow(k)).collect();
        let sets: Vec<PowerIndexSet> = (1u32..1 << powers.len())
            .filter(|m| m.count_ones() <= 4)
            .map(|m| (0..powers.len()).filter(|i| m & (1 << i) != 0).map(|i| powers[i]).collect())
            .collect();
        for s in &sets {
            for t in &sets {
                if *s != j_transform(t).expect("nonempty") {
                    continue;
                }
                match p_power_j_constraint(s, t, p) {
                    Ok(PPowerClass::Equal) => r.check(s.len() == 1 && s == t, || format!("{s} {t}")),
                    Ok(PPowerClass::TwoPowerLadder) => r.check(p == 2, || format!("{s} {t}")),
                    Ok(PPowerClass::Violation) => r.check(false, || format!("{s} = J({t}) flagged as violation")),
                    Err(e) => r.fail_err(e),
                }
            }
        }
    }
    r
}

/// `c_σ ~ c_τ` implies `c_{s(σ)} ~ c_{s(τ)}`. Half of the pairs share the
/// singular cycles of `σ` so that the premise is often true; equivalent
/// pairs also have their certificate normalized at the exceptional divisor.
pub fn suite_singular_parts(seed: u64, trials: usize) -> SuiteResult {
    let mut r = SuiteResult::new("singular-parts");
    let mut premises = 0;
    let mut rng = rng(seed);
    for _ in 0..trials {
        let p = *[2u64, 3].choose(&mut rng).expect("nonempty");
        let f = PrimeField::new(p).expect("prime");
        let n = rng.random_range(1..=10);
        let sigma = Permutation::random(n, &mut rng);
        let tau = if rng.random_bool(0.5) {
            let m = rng.random_range(1..=10);
            Permutation::random(m, &mut rng)
        } else {
            related_permutation(&sigma, p, &mut rng)
        };
        let res = (|| -> Result<Option<bool>> {
            let (ts, tt) = (cycle_type(&sigma), cycle_type(&tau));
            let ea = perm_elementary_divisors(&f, &ts)?;
            let eb = perm_elementary_divisors(&f, &tt)?;
            let v = s_equivalent(&ea, &eb)?;
            let SEquivOutcome::Equivalent(cert) = &v.outcome else {
                return Ok(None);
            };
            normalize_certificate(cert, &ea, &eb, p)?;
            let sa = perm_elementary_divisors(&f, &cycle_type(&regular_singular_parts(&sigma, p).1))?;
            let sb = perm_elementary_divisors(&f, &cycle_type(&regular_singular_parts(&tau, p).1))?;
            Ok(Some(s_equivalent(&sa, &sb)?.is_equivalent()))
        })();
        match res {
            Ok(None) => r.check(true, String::new),
            Ok(Some(ok)) => {
                premises += 1;
                r.check(ok, || format!("p={p}: {sigma} vs {tau}"));
            }
            Err(e) => r.fail_err(e),
        }
    }
    r.premises = Some(premises);
    r
}

/// Keeps the `p`-singular cycle lengths of `σ` and redraws the rest.
fn related_permutation<R: Rng + ?Sized>(sigma: &Permutation, p: u64, rng: &mut R) -> Permutation {
    let mut parts: Vec<usize> = cycle_type(sigma)
        .parts()
        .iter()
        .copied()
        .filter(|&l| (l as u64).is_multiple_of(p))
        .collect();
    let extra = rng.random_range(0..=10 - parts.iter().sum::<usize>().min(10));
    let mut left = extra;
    while left > 0 {
        let l = rng.random_range(1..=left);
        if !(l as u64).is_multiple_of(p) {
            parts.push(l);
            left -= l;
        }
        if left == 1 {
            parts.push(1);
            left = 0;
        }
    }
    if parts.is_empty() {
        parts.push(1);
    }
    let t = CycleType::new(parts).expect("positive");
    Permutation::from_cycle_type(&t)
}

/// `(n, E)` and `(n, ΩE)` have the same global and dominant dimension.
pub fn suite_omega_pairs(seed: u64, trials: usize, max_n: usize) -> SuiteResult {
    let mut r = SuiteResult::new("omega-pairs");
    let mut rng = rng(seed);
    for i in 0..trials {
        let n = rng.random_range(1..=max_n);
        let mut e = random_set(&mut rng, n).to_vec();
        if !e.contains(&n) {
            e.push(n);
        }
        let e: PowerIndexSet = e.into_iter().collect();
        let p = *[2u64, 3].choose(&mut rng).expect("nonempty");
        let u = rng.random_range(1..=2);
        let res = (|| -> Result<bool> {
            let k = residue_field(p, u)?;
            let oe = omega_set(n, &e)?;
            let a = hom_dim_report(k.clone(), u, n, &e, DEFAULT_RESOLUTION_CAP, seed ^ i as u64)?;
            let b = hom_dim_report(k, u, n, &oe, DEFAULT_RESOLUTION_CAP, seed ^ i as u64)?;
            let resolved = !matches!(a.gl_dim, GlDim::ExceededCap(_));
            Ok(resolved && a.gl_dim == b.gl_dim && a.dom_dim == b.dom_dim && oe == j_transform(&e)?)
        })();
        match res {
            Ok(ok) => r.check(ok, || format!("n={n} E={e} over F_{p}^{u}")),
            Err(err) => r.fail_err(err),
        }
    }
    r
}

/// Every generator with `n <= max_n`: associativity (checked when built),
/// dimension, Cartan matrix, anti-automorphism, and the two dominant
/// dimension methods.
pub fn suite_realization(max_n: usize) -> SuiteResult {
    let mut r = SuiteResult::new("realization");
    let f = PrimeField::new(2).expect("prime");
    for n in 1..=max_n {
        for mask in 0..(1u32 << (n - 1)) {
            let mut e: Vec<usize> = (1..n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            e.push(n);
            let set: PowerIndexSet = e.iter().copied().collect();
            let res = (|| -> Result<bool> {
                let a = realize_block(f, n, &set)?;
                let expected: usize = e.iter().flat_map(|&x| e.iter().map(move |&y| x.min(y))).sum();
                let cartan_ok = a
                    .cartan()
                    .iter()
                    .enumerate()
                    .all(|(i, row)| row.iter().enumerate().all(|(j, &c)| c == e[i].min(e[j])));
                let dom = dominant_dimension(n, &set)? == dominant_dimension_by_coresolution(&a, 16, 0);
                Ok(a.dim() == expected && cartan_ok && a.check_anti_automorphism() && dom)
            })();
            match res {
                Ok(ok) => r.check(ok, || format!("n={n} E={set}")),
                Err(err) => r.fail_err(err),
            }
        }
    }
    r
}

/// The randomized suites at `trials` each (deterministic ones ignore it).
pub fn run_all(seed: u64, trials: usize) -> Vec<SuiteResult> {
    vec![
        suite_formula_vs_snf(&[2, 3, 5], 7),
        suite_commutant_dimension(seed, trials),
        suite_arc_invariant(seed.wrapping_add(1), trials),
        suite_equivalence_relation(seed.wrapping_add(2), trials),
        suite_similarity(seed.wrapping_add(3), trials),
        suite_j_involution(seed.wrapping_add(4), trials),
        suite_p_power_classification(&[2, 3, 5]),
        suite_singular_parts(seed.wrapping_add(5), trials),
        suite_omega_pairs(seed.wrapping_add(6), trials.min(50), 6),
        suite_realization(5),
    ]
}
