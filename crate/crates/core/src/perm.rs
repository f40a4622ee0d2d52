//! Permutation matrices: cycle types, p-regular and p-singular parts, the
//! closed form for their elementary divisors and the exceptional divisor
//! `(x - 1)^{p^a}`.
//!
//! Permutations are stored 0-based; every constructor and accessor that
//! talks to users is 1-based.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{BaseField, Field};
use crate::matrix::{ElementaryDivisorMultiset, Matrix};
use crate::poly::{self, Poly};
use crate::sequiv::{
    j_transform, maximal_reducible, power_index_set, s_equivalent, strict_s_equivalent,
    CertificatePair, PairMode, PowerIndexSet, ReducibleDivisor, SEquivCertificate, SEquivVerdict,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// From one-line notation on `1..=n`.
    pub fn new(one_line: &[usize]) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n];
        let mut images = Vec::with_capacity(n);
        for &v in one_line {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(format!("{one_line:?} is not a bijection of 1..{n}")));
            }
            seen[v - 1] = true;
            images.push(v - 1);
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// From disjoint cycles on `1..=n`; unlisted points are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for (k, &v) in cycle.iter().enumerate() {
                if v == 0 || v > n || seen[v - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycles {cycles:?} are not disjoint cycles on 1..{n}"
                    )));
                }
                seen[v - 1] = true;
                images[v - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// The standard representative `(1..λ_1)(λ_1+1..)...` of a cycle type.
    pub fn from_cycle_type(t: &CycleType) -> Self {
        let mut images = Vec::with_capacity(t.n());
        let mut start = 0;
        for &l in t.parts() {
            for k in 0..l {
                images.push(start + (k + 1) % l);
            }
            start += l;
        }
        Permutation { images }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(rng);
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    /// Cycles including fixed points, 0-based, each starting at its least
    /// point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut cycle = vec![s];
            seen[s] = true;
            let mut i = self.images[s];
            while i != s {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    /// `i -> other(self(i))`.
    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::InvalidPermutation("composing permutations of different degree".into()));
        }
        Ok(Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        })
    }

    fn keep_cycles(&self, keep: impl Fn(usize) -> bool) -> Self {
        let mut images: Vec<usize> = (0..self.n()).collect();
        for cycle in self.cycles() {
            if keep(cycle.len()) {
                for &i in &cycle {
                    images[i] = self.images[i];
                }
            }
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let moved: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
                format!("({})", pts.join(" "))
            })
            .collect();
        if moved.is_empty() {
            f.write_str("id")
        } else {
            f.write_str(&moved.concat())
        }
    }
}

/// A partition, parts sorted in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPermutation("cycle lengths must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType(parts))
    }

    /// Pads with 1-cycles up to `n` points.
    pub fn padded(parts: Vec<usize>, n: usize) -> Result<Self> {
        let total: usize = parts.iter().sum();
        if total > n {
            return Err(Error::InvalidPermutation(format!("cycle type of {total} points exceeds n = {n}")));
        }
        let mut parts = parts;
        parts.extend(std::iter::repeat_n(1, n - total));
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<CycleType> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<CycleType>) {
            if rest == 0 {
                out.push(CycleType(cur.clone()));
                return;
            }
            for part in (1..=rest.min(max)).rev() {
                cur.push(part);
                rec(rest - part, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for CycleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad cycle type {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        CycleType::new(parts)
    }
}

pub fn cycle_type(sigma: &Permutation) -> CycleType {
    CycleType::new(sigma.cycles().iter().map(Vec::len).collect()).expect("cycles are nonempty")
}

/// The matrix with a 1 in position `(i, σ(i))`.
pub fn permutation_matrix<F: Field>(sigma: &Permutation, field: &F) -> Matrix<F> {
    let n = sigma.n();
    let mut m = Matrix::zeros(field.clone(), n, n);
    for i in 0..n {
        m.set(i, sigma.image(i), field.one());
    }
    m
}

fn singular(len: usize, p: u64) -> bool {
    p != 0 && (len as u64).is_multiple_of(p)
}

/// `(r(σ), s(σ))`: products of the cycles of length prime to `p` and of the
/// cycles of length divisible by `p`. For `p = 0` this is `(σ, id)`.
pub fn regular_singular_parts(sigma: &Permutation, p: u64) -> (Permutation, Permutation) {
    let r = sigma.keep_cycles(|l| !singular(l, p));
    let s = sigma.keep_cycles(|l| singular(l, p));
    (r, s)
}

/// Cycle types of `r(σ)` and `s(σ)` on the same `n` points.
pub fn regular_singular_types(t: &CycleType, p: u64) -> (CycleType, CycleType) {
    let n = t.n();
    let (sing, reg): (Vec<usize>, Vec<usize>) = t.parts().iter().partition(|&&l| singular(l, p));
    (
        CycleType::padded(reg, n).expect("fits"),
        CycleType::padded(sing, n).expect("fits"),
    )
}

/// `ν_p(m)`, the exponent of `p` in `m`; zero when `p = 0`.
pub fn nu_p(mut m: usize, p: u64) -> u32 {
    if p == 0 {
        return 0;
    }
    let p = p as usize;
    let mut v = 0;
    while m.is_multiple_of(p) {
        m /= p;
        v += 1;
    }
    v
}

/// Summary of a conjugacy class of permutations in characteristic `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermClassData {
    pub p: u64,
    pub cycle_type: CycleType,
    pub regular_part_type: CycleType,
    pub singular_part_type: CycleType,
    /// `a` with `(x - 1)^{p^a}` exceptional; `None` in characteristic 0.
    pub exceptional: Option<u32>,
}

pub fn class_data(t: &CycleType, p: u64) -> PermClassData {
    let (regular_part_type, singular_part_type) = regular_singular_types(t, p);
    let exceptional = (p != 0).then(|| t.parts().iter().map(|&l| nu_p(l, p)).max().unwrap_or(0));
    PermClassData {
        p,
        cycle_type: t.clone(),
        regular_part_type,
        singular_part_type,
        exceptional,
    }
}

/// `x^m - 1`.
pub fn x_pow_minus_one<F: Field>(field: &F, m: usize) -> Poly<F> {
    Poly::monomial(field.clone(), field.one(), m).sub(&Poly::one(field.clone()))
}

/// Cyclotomic polynomials `Φ_d` for all `d | m`, keyed by `d`, over a field
/// of characteristic 0.
fn cyclotomic_table<F: Field>(field: &F, m: usize) -> BTreeMap<usize, Poly<F>> {
    let mut table: BTreeMap<usize, Poly<F>> = BTreeMap::new();
    for d in (1..=m).filter(|d| m.is_multiple_of(*d)) {
        let mut phi = x_pow_minus_one(field, d);
        for (e, q) in table.iter() {
            if d % e == 0 {
                phi = phi.div_exact(q);
            }
        }
        table.insert(d, phi);
    }
    table
}

/// Monic irreducible factors of `x^m - 1` for `m` prime to the
/// characteristic (so the polynomial is squarefree).
fn irreducible_factors_of_x_m_minus_1<F: BaseField>(field: &F, m: usize) -> Result<Vec<Poly<F>>> {
    if field.characteristic() == 0 {
        // the cyclotomic polynomials are irreducible over Q
        return Ok(cyclotomic_table(field, m).into_values().collect());
    }
    Ok(poly::factor(&x_pow_minus_one(field, m))?
        .factors
        .into_iter()
        .map(|(g, _)| g)
        .collect())
}

/// Elementary divisors of any permutation matrix of cycle type `t`: for each
/// part `λ = λ' p^ν` with `p ∤ λ'`, every irreducible `g | x^{λ'} - 1` gives
/// the divisor `g^{p^ν}`.
pub fn perm_elementary_divisors<F: BaseField>(
    field: &F,
    t: &CycleType,
) -> Result<ElementaryDivisorMultiset<F>> {
    let p = field.characteristic();
    let mut cache: BTreeMap<usize, Vec<Poly<F>>> = BTreeMap::new();
    let mut pairs = Vec::new();
    for &l in t.parts() {
        let nu = nu_p(l, p);
        let pp = (p as usize).pow(nu).max(1);
        let reg = l / pp;
        if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(reg) {
            e.insert(irreducible_factors_of_x_m_minus_1(field, reg)?);
        }
        for g in &cache[&reg] {
            pairs.push((g.clone(), pp));
        }
    }
    Ok(ElementaryDivisorMultiset::from_pairs(field.clone(), pairs))
}

fn x_minus_one<F: Field>(field: &F) -> Poly<F> {
    Poly::linear(field.clone(), &field.one())
}

/// `a` such that `(x - 1)^{p^a}` is the largest `(x - 1)`-power divisor.
pub fn exceptional_divisor<F: Field>(e: &ElementaryDivisorMultiset<F>, p: u64) -> Result<u32> {
    let field = e.field();
    let g = e
        .group(&x_minus_one(field))
        .ok_or_else(|| Error::NotPermutationSpectrum(format!("no power of x - 1 in {e}")))?;
    let m = g.max_exp();
    let a = nu_p(m, p);
    let pa = if p == 0 { 1 } else { (p as usize).pow(a) };
    if pa != m {
        return Err(Error::NotPermutationSpectrum(format!(
            "largest power of x - 1 is {m}, not a power of {p}"
        )));
    }
    Ok(a)
}

/// `max ν_p(λ_j)` over the parts with `g | x^{λ_j} - 1`.
pub fn q_value<F: Field>(g: &Poly<F>, t: &CycleType, p: u64) -> Result<u32> {
    let field = g.field();
    let mut best = None;
    for &l in t.parts() {
        if g.divides(&x_pow_minus_one(field, l)) {
            let v = nu_p(l, p);
            best = Some(best.map_or(v, |b: u32| b.max(v)));
        }
    }
    best.ok_or_else(|| Error::NoDividedCycle(format!("{g} for cycle type {t}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PPowerClass {
    /// `S = T` is a singleton.
    Equal,
    /// `p = 2` and `S = T = {2^u, 2^{u+1}}`.
    TwoPowerLadder,
    /// `S` is not the J-transform of `T`.
    Violation,
}

fn is_p_power(v: usize, p: u64) -> bool {
    let p = p as usize;
    let mut v = v;
    while v > 1 && v.is_multiple_of(p) {
        v /= p;
    }
    v == 1
}

/// Classifies `S = J(T)` for sets of p-powers.
pub fn p_power_j_constraint(s: &PowerIndexSet, t: &PowerIndexSet, p: u64) -> Result<PPowerClass> {
    for set in [s, t] {
        if set.is_empty() || set.values().any(|v| !is_p_power(v, p)) {
            return Err(Error::NotPPowers { p, set: set.to_vec() });
        }
    }
    if *s != j_transform(t)? {
        return Ok(PPowerClass::Violation);
    }
    if s == t && s.len() == 1 {
        return Ok(PPowerClass::Equal);
    }
    if p == 2 && s == t {
        if let [lo, hi] = s.to_vec()[..] {
            if hi == 2 * lo {
                return Ok(PPowerClass::TwoPowerLadder);
            }
        }
    }
    Err(Error::Unclassified {
        s: s.to_vec(),
        t: t.to_vec(),
    })
}

/// Rebuilds a certificate between two permutation-matrix divisor sets so
/// that the exceptional divisors correspond, by exchanging two images.
///
/// With `j = π(exc_c) != exc_d` and `k = π^{-1}(exc_d)`, the new map sends
/// `exc_c -> exc_d` and `k -> j` and agrees with `π` elsewhere. Modes are
/// recomputed and the result is re-validated.
pub fn normalize_certificate<F: BaseField>(
    cert: &SEquivCertificate<F>,
    ec: &ElementaryDivisorMultiset<F>,
    ed: &ElementaryDivisorMultiset<F>,
    p: u64,
) -> Result<SEquivCertificate<F>> {
    cert.validate(ec, ed, false)?;
    if cert.pairs.is_empty() {
        return Ok(cert.clone());
    }
    let field = ec.field();
    let exc = |e: &ElementaryDivisorMultiset<F>| -> Result<ReducibleDivisor<F>> {
        let a = exceptional_divisor(e, p)?;
        Ok(ReducibleDivisor {
            irr: x_minus_one(field),
            exp: (p as usize).pow(a),
        })
    };
    let (xc, xd) = (exc(ec)?, exc(ed)?);
    let rc = maximal_reducible(ec);
    let rd = maximal_reducible(ed);
    if !rc.contains(&xc) || !rd.contains(&xd) {
        return Err(Error::InvalidCertificate(
            "exceptional divisors must be reducible on both sides".into(),
        ));
    }
    let mut map: Vec<(ReducibleDivisor<F>, ReducibleDivisor<F>)> =
        cert.pairs.iter().map(|pr| (pr.src.clone(), pr.dst.clone())).collect();
    let ic = map.iter().position(|(s, _)| *s == xc).expect("bijection covers R_c");
    if map[ic].1 != xd {
        let ik = map.iter().position(|(_, d)| *d == xd).expect("bijection covers R_d");
        let j = map[ic].1.clone();
        map[ic].1 = xd;
        map[ik].1 = j;
    }
    let mut pairs = Vec::with_capacity(map.len());
    for (src, dst) in map {
        let s = power_index_set(ec, &src)?;
        let t = power_index_set(ed, &dst)?;
        let mode = if s == t {
            PairMode::EqualSets
        } else if s == j_transform(&t)? {
            PairMode::JTransform
        } else {
            return Err(Error::InvalidCertificate(format!(
                "swapped pair {src} -> {dst} matches neither {s} = {t} nor its J-transform"
            )));
        };
        pairs.push(CertificatePair { src, dst, mode });
    }
    let out = SEquivCertificate { pairs };
    out.validate(ec, ed, false)?;
    Ok(out)
}

/// End-to-end comparison of two permutation classes.
#[derive(Clone, Debug)]
pub struct PermPairReport<F: Field> {
    pub left: PermClassData,
    pub right: PermClassData,
    pub left_divisors: ElementaryDivisorMultiset<F>,
    pub right_divisors: ElementaryDivisorMultiset<F>,
    pub verdict: SEquivVerdict<F>,
    pub strict_verdict: SEquivVerdict<F>,
    pub singular_divisors: (ElementaryDivisorMultiset<F>, ElementaryDivisorMultiset<F>),
    pub singular_verdict: SEquivVerdict<F>,
    pub singular_strict_verdict: SEquivVerdict<F>,
}

pub fn compare_cycle_types<F: BaseField>(
    field: &F,
    a: &CycleType,
    b: &CycleType,
) -> Result<PermPairReport<F>> {
    let p = field.characteristic();
    let ea = perm_elementary_divisors(field, a)?;
    let eb = perm_elementary_divisors(field, b)?;
    let (left, right) = (class_data(a, p), class_data(b, p));
    let sa = perm_elementary_divisors(field, &left.singular_part_type)?;
    let sb = perm_elementary_divisors(field, &right.singular_part_type)?;
    Ok(PermPairReport {
        verdict: s_equivalent(&ea, &eb)?,
        strict_verdict: strict_s_equivalent(&ea, &eb)?,
        singular_verdict: s_equivalent(&sa, &sb)?,
        singular_strict_verdict: strict_s_equivalent(&sa, &sb)?,
        singular_divisors: (sa, sb),
        left,
        right,
        left_divisors: ea,
        right_divisors: eb,
    })
}
