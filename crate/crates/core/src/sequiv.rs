//! S-equivalence of matrices, decided from their elementary divisors.
//!
//! For each irreducible `p` whose largest exponent `m` is at least two, the
//! divisor `p^m` is a maximal reducible divisor and carries the set of all
//! exponents of `p`. Two matrices are S-equivalent when there is a bijection
//! between their maximal reducible divisors that preserves the residue
//! algebra `R[x]/(p^m)` and matches the exponent sets either directly or
//! through the J-transform.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{BaseField, Field};
use crate::matrix::{eldiv::display_power, ElementaryDivisorMultiset};
use crate::poly::{irreducible_is_separable, Poly};

/// A finite set of positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PowerIndexSet(BTreeSet<usize>);

impl PowerIndexSet {
    pub fn new(values: impl IntoIterator<Item = usize>) -> Self {
        PowerIndexSet(values.into_iter().collect())
    }

    pub fn values(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.values().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }
}

impl FromIterator<usize> for PowerIndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        PowerIndexSet::new(iter)
    }
}

impl fmt::Display for PowerIndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `{m_1} ∪ {m_1 - m_i}` for `T = {m_1 > m_2 > ... > m_s}`.
pub fn j_transform(t: &PowerIndexSet) -> Result<PowerIndexSet> {
    let m1 = t.max().ok_or(Error::EmptySet)?;
    Ok(t.values()
        .map(|m| if m == m1 { m1 } else { m1 - m })
        .collect())
}

/// A maximal reducible elementary divisor `irr^exp`, `exp >= 2`.
#[derive(Clone, Debug)]
pub struct ReducibleDivisor<F: Field> {
    pub irr: Poly<F>,
    pub exp: usize,
}

impl<F: Field> PartialEq for ReducibleDivisor<F> {
    fn eq(&self, other: &Self) -> bool {
        self.irr == other.irr && self.exp == other.exp
    }
}

impl<F: Field> Eq for ReducibleDivisor<F> {}

impl<F: Field> Ord for ReducibleDivisor<F> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.irr.cmp(&other.irr).then(self.exp.cmp(&other.exp))
    }
}

impl<F: Field> PartialOrd for ReducibleDivisor<F> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Field> fmt::Display for ReducibleDivisor<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&display_power(&self.irr, self.exp))
    }
}

/// The set `R_c`, in the canonical order of the irreducibles.
pub fn maximal_reducible<F: Field>(e: &ElementaryDivisorMultiset<F>) -> Vec<ReducibleDivisor<F>> {
    e.groups()
        .iter()
        .filter(|g| g.max_exp() >= 2)
        .map(|g| ReducibleDivisor {
            irr: g.irr.clone(),
            exp: g.max_exp(),
        })
        .collect()
}

/// `P_c(f)`: the distinct exponents of `f`'s irreducible.
pub fn power_index_set<F: Field>(
    e: &ElementaryDivisorMultiset<F>,
    f: &ReducibleDivisor<F>,
) -> Result<PowerIndexSet> {
    match e.group(&f.irr) {
        Some(g) if g.max_exp() == f.exp && f.exp >= 2 => Ok(g.distinct_exps().into_iter().collect()),
        _ => Err(Error::NotMaximalReducible(f.to_string())),
    }
}

/// Decides `R[x]/(p^k) = R[x]/(q^l)` as R-algebras.
pub fn residue_iso<F: BaseField>(f: &ReducibleDivisor<F>, g: &ReducibleDivisor<F>) -> Result<bool> {
    if f.exp != g.exp {
        return Ok(false);
    }
    f.irr.field().residue_fields_isomorphic(&f.irr, &g.irr)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairMode {
    EqualSets,
    JTransform,
}

impl PairMode {
    pub fn name(self) -> &'static str {
        match self {
            PairMode::EqualSets => "EqualSets",
            PairMode::JTransform => "JTransform",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificatePair<F: Field> {
    pub src: ReducibleDivisor<F>,
    pub dst: ReducibleDivisor<F>,
    pub mode: PairMode,
}

/// An explicit bijection `R_c -> R_d` with the set equation used per pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SEquivCertificate<F: Field> {
    pub pairs: Vec<CertificatePair<F>>,
}

impl<F: BaseField> SEquivCertificate<F> {
    /// Re-checks bijectivity, residue algebras and every claimed set
    /// equation against the two divisor multisets.
    pub fn validate(
        &self,
        ec: &ElementaryDivisorMultiset<F>,
        ed: &ElementaryDivisorMultiset<F>,
        strict: bool,
    ) -> Result<()> {
        let rc = maximal_reducible(ec);
        let rd = maximal_reducible(ed);
        let bad = |msg: String| Err(Error::InvalidCertificate(msg));
        if self.pairs.len() != rc.len() || rc.len() != rd.len() {
            return bad(format!(
                "{} pairs for |R_c| = {}, |R_d| = {}",
                self.pairs.len(),
                rc.len(),
                rd.len()
            ));
        }
        let srcs: BTreeSet<_> = self.pairs.iter().map(|p| &p.src).collect();
        let dsts: BTreeSet<_> = self.pairs.iter().map(|p| &p.dst).collect();
        if srcs != rc.iter().collect() || dsts != rd.iter().collect() {
            return bad("pairs do not form a bijection R_c -> R_d".into());
        }
        for pair in &self.pairs {
            if !residue_iso(&pair.src, &pair.dst)? {
                return bad(format!("residue algebras of {} and {} differ", pair.src, pair.dst));
            }
            let s = power_index_set(ec, &pair.src)?;
            let t = power_index_set(ed, &pair.dst)?;
            let holds = match pair.mode {
                PairMode::EqualSets => s == t,
                PairMode::JTransform => !strict && s == j_transform(&t)?,
            };
            if !holds {
                return bad(format!(
                    "{} fails for {} -> {}: {} vs {}",
                    pair.mode.name(),
                    pair.src,
                    pair.dst,
                    s,
                    t
                ));
            }
        }
        Ok(())
    }
}

/// One target considered for a source divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateCheck<F: Field> {
    pub dst: ReducibleDivisor<F>,
    pub dst_set: PowerIndexSet,
    pub dst_j: PowerIndexSet,
    pub residue_iso: bool,
}

/// Why a source divisor has too few partners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceDiagnostic<F: Field> {
    pub src: ReducibleDivisor<F>,
    pub src_set: PowerIndexSet,
    pub candidates: Vec<CandidateCheck<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction<F: Field> {
    SizeMismatch {
        left: usize,
        right: usize,
    },
    /// A smallest subset of `R_c` whose compatible targets are fewer than its
    /// own size.
    HallViolation {
        subset: Vec<SourceDiagnostic<F>>,
        neighbours: Vec<ReducibleDivisor<F>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SEquivOutcome<F: Field> {
    Equivalent(SEquivCertificate<F>),
    NotEquivalent(Obstruction<F>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SEquivVerdict<F: Field> {
    pub outcome: SEquivOutcome<F>,
    /// Whether at least one of the two minimal polynomials is separable.
    pub theorem_applicable: bool,
}

impl<F: Field> SEquivVerdict<F> {
    pub fn is_equivalent(&self) -> bool {
        matches!(self.outcome, SEquivOutcome::Equivalent(_))
    }

    pub fn certificate(&self) -> Option<&SEquivCertificate<F>> {
        match &self.outcome {
            SEquivOutcome::Equivalent(c) => Some(c),
            SEquivOutcome::NotEquivalent(_) => None,
        }
    }
}

/// S-equivalence allowing both set equations per pair.
pub fn s_equivalent<F: BaseField>(
    ec: &ElementaryDivisorMultiset<F>,
    ed: &ElementaryDivisorMultiset<F>,
) -> Result<SEquivVerdict<F>> {
    decide(ec, ed, false)
}

/// S-equivalence admitting only equal exponent sets.
pub fn strict_s_equivalent<F: BaseField>(
    ec: &ElementaryDivisorMultiset<F>,
    ed: &ElementaryDivisorMultiset<F>,
) -> Result<SEquivVerdict<F>> {
    decide(ec, ed, true)
}

fn separable_min_poly<F: Field>(e: &ElementaryDivisorMultiset<F>) -> bool {
    e.groups().iter().all(|g| irreducible_is_separable(&g.irr))
}

/// Pair mode admitted between two divisors, preferring equal sets.
fn edge_mode(s: &PowerIndexSet, t: &PowerIndexSet, iso: bool, strict: bool) -> Result<Option<PairMode>> {
    if !iso {
        return Ok(None);
    }
    if s == t {
        return Ok(Some(PairMode::EqualSets));
    }
    if !strict && *s == j_transform(t)? {
        return Ok(Some(PairMode::JTransform));
    }
    Ok(None)
}

fn decide<F: BaseField>(
    ec: &ElementaryDivisorMultiset<F>,
    ed: &ElementaryDivisorMultiset<F>,
    strict: bool,
) -> Result<SEquivVerdict<F>> {
    if ec.field() != ed.field() {
        return Err(Error::FieldMismatch {
            left: ec.field().name(),
            right: ed.field().name(),
        });
    }
    let theorem_applicable = separable_min_poly(ec) || separable_min_poly(ed);
    let rc = maximal_reducible(ec);
    let rd = maximal_reducible(ed);
    let verdict = |outcome| SEquivVerdict {
        outcome,
        theorem_applicable,
    };
    if rc.len() != rd.len() {
        return Ok(verdict(SEquivOutcome::NotEquivalent(Obstruction::SizeMismatch {
            left: rc.len(),
            right: rd.len(),
        })));
    }
    let pc: Vec<PowerIndexSet> = rc.iter().map(|f| power_index_set(ec, f)).collect::<Result<_>>()?;
    let pd: Vec<PowerIndexSet> = rd.iter().map(|g| power_index_set(ed, g)).collect::<Result<_>>()?;
    let mut iso = vec![vec![false; rd.len()]; rc.len()];
    let mut modes = vec![vec![None; rd.len()]; rc.len()];
    for (i, f) in rc.iter().enumerate() {
        for (j, g) in rd.iter().enumerate() {
            iso[i][j] = residue_iso(f, g)?;
            modes[i][j] = edge_mode(&pc[i], &pd[j], iso[i][j], strict)?;
        }
    }
    let adj: Vec<Vec<usize>> = modes
        .iter()
        .map(|row| (0..row.len()).filter(|&j| row[j].is_some()).collect())
        .collect();
    match first_perfect_matching(&adj, rd.len()) {
        Some(m) => {
            let pairs = m
                .iter()
                .enumerate()
                .map(|(i, &j)| CertificatePair {
                    src: rc[i].clone(),
                    dst: rd[j].clone(),
                    mode: modes[i][j].expect("matched along an edge"),
                })
                .collect();
            Ok(verdict(SEquivOutcome::Equivalent(SEquivCertificate { pairs })))
        }
        None => {
            let (subset, nbrs) = hall_violator(&adj, rd.len());
            let mut diags = Vec::new();
            for &i in &subset {
                let candidates = rd
                    .iter()
                    .enumerate()
                    .map(|(j, g)| {
                        Ok(CandidateCheck {
                            dst: g.clone(),
                            dst_set: pd[j].clone(),
                            dst_j: j_transform(&pd[j])?,
                            residue_iso: iso[i][j],
                        })
                    })
                    .collect::<Result<_>>()?;
                diags.push(SourceDiagnostic {
                    src: rc[i].clone(),
                    src_set: pc[i].clone(),
                    candidates,
                });
            }
            Ok(verdict(SEquivOutcome::NotEquivalent(Obstruction::HallViolation {
                subset: diags,
                neighbours: nbrs.into_iter().map(|j| rd[j].clone()).collect(),
            })))
        }
    }
}

/// Maximum matching size by Hopcroft–Karp; returns the left-to-right match.
pub(crate) fn hopcroft_karp(adj: &[Vec<usize>], right: usize) -> (usize, Vec<Option<usize>>) {
    const INF: usize = usize::MAX;
    let left = adj.len();
    let mut ml: Vec<Option<usize>> = vec![None; left];
    let mut mr: Vec<Option<usize>> = vec![None; right];
    let mut dist = vec![INF; left];
    let mut size = 0;

    fn dfs(
        u: usize,
        adj: &[Vec<usize>],
        ml: &mut [Option<usize>],
        mr: &mut [Option<usize>],
        dist: &mut [usize],
    ) -> bool {
        for &v in &adj[u] {
            let ok = match mr[v] {
                None => true,
                Some(w) => dist[w] == dist[u] + 1 && dfs(w, adj, ml, mr, dist),
            };
            if ok {
                ml[u] = Some(v);
                mr[v] = Some(u);
                return true;
            }
        }
        dist[u] = usize::MAX;
        false
    }

    loop {
        let mut queue = std::collections::VecDeque::new();
        for u in 0..left {
            if ml[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match mr[v] {
                    None => found = true,
                    Some(w) if dist[w] == INF => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }
        for u in 0..left {
            if ml[u].is_none() && dfs(u, adj, &mut ml, &mut mr, &mut dist) {
                size += 1;
            }
        }
    }
    (size, ml)
}

/// Lexicographically first perfect matching (sources in order, each taking
/// the earliest target that still leaves a perfect matching for the rest).
fn first_perfect_matching(adj: &[Vec<usize>], right: usize) -> Option<Vec<usize>> {
    let k = adj.len();
    if hopcroft_karp(adj, right).0 < k {
        return None;
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    let mut used = vec![false; right];
    for i in 0..k {
        let pick = adj[i].iter().copied().find(|&j| {
            if used[j] {
                return false;
            }
            used[j] = true;
            let rest: Vec<Vec<usize>> = adj[i + 1..]
                .iter()
                .map(|row| row.iter().copied().filter(|&v| !used[v]).collect())
                .collect();
            let ok = hopcroft_karp(&rest, right).0 == rest.len();
            used[j] = false;
            ok
        })?;
        used[pick] = true;
        chosen.push(pick);
    }
    Some(chosen)
}

/// A subset of sources with fewer neighbours than members: the smallest one
/// by exhaustive search for small inputs, else the alternating-path set from
/// a maximum matching.
fn hall_violator(adj: &[Vec<usize>], right: usize) -> (Vec<usize>, Vec<usize>) {
    let k = adj.len();
    let neighbours = |s: &[usize]| -> Vec<usize> {
        let set: BTreeSet<usize> = s.iter().flat_map(|&i| adj[i].iter().copied()).collect();
        set.into_iter().collect()
    };
    if k <= 16 {
        for size in 1..=k {
            for mask in 0u32..(1 << k) {
                if mask.count_ones() as usize != size {
                    continue;
                }
                let s: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
                let n = neighbours(&s);
                if n.len() < s.len() {
                    return (s, n);
                }
            }
        }
    }
    let (_, ml) = hopcroft_karp(adj, right);
    let mut mr = vec![None; right];
    for (u, v) in ml.iter().enumerate() {
        if let Some(v) = v {
            mr[*v] = Some(u);
        }
    }
    let mut seen = vec![false; k];
    let mut stack: Vec<usize> = (0..k).filter(|&u| ml[u].is_none()).collect();
    for &u in &stack {
        seen[u] = true;
    }
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if let Some(w) = mr[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let s: Vec<usize> = (0..k).filter(|&u| seen[u]).collect();
    let n = neighbours(&s);
    (s, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::matrix::{elementary_divisors, Matrix};
    use proptest::prelude::*;

    fn jordan<F: BaseField>(field: F, blocks: &[(usize, i64)]) -> ElementaryDivisorMultiset<F> {
        let mut m = Matrix::zeros(field.clone(), 0, 0);
        for &(n, a) in blocks {
            m = m.direct_sum(&Matrix::jordan_block(field.clone(), n, &field.from_i64(a))).unwrap();
        }
        elementary_divisors(&m).unwrap()
    }

    fn set(v: &[usize]) -> PowerIndexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn j_transform_examples() {
        assert_eq!(j_transform(&set(&[2, 3])).unwrap(), set(&[1, 3]));
        assert_eq!(j_transform(&set(&[4])).unwrap(), set(&[4]));
        assert_eq!(j_transform(&set(&[1, 2, 5])).unwrap(), set(&[3, 4, 5]));
        assert_eq!(j_transform(&set(&[])), Err(Error::EmptySet));
    }

    #[test]
    fn power_index_examples() {
        let ec = jordan(Rationals, &[(3, 0), (1, 0), (1, 1)]);
        let rc = maximal_reducible(&ec);
        assert_eq!(rc.len(), 1);
        assert_eq!(rc[0].to_string(), "x^3");
        assert_eq!(power_index_set(&ec, &rc[0]).unwrap(), set(&[1, 3]));
        let ed = jordan(Rationals, &[(3, 1), (2, 1)]);
        let rd = maximal_reducible(&ed);
        assert_eq!(rd[0].to_string(), "(x - 1)^3");
        assert_eq!(power_index_set(&ed, &rd[0]).unwrap(), set(&[2, 3]));
        let e2 = jordan(Rationals, &[(5, 0), (4, 0), (1, 0)]);
        assert_eq!(power_index_set(&e2, &maximal_reducible(&e2)[0]).unwrap(), set(&[1, 4, 5]));
        assert!(maximal_reducible(&jordan(Rationals, &[(1, 2), (1, 2)])).is_empty());
        let wrong = ReducibleDivisor { irr: rc[0].irr.clone(), exp: 2 };
        assert_eq!(power_index_set(&ec, &wrong).unwrap_err().kind(), "NotMaximalReducible");
    }

    #[test]
    fn residue_iso_examples() {
        let f3 = PrimeField::new(3).unwrap();
        let rd = |c: &[i64], e| ReducibleDivisor { irr: Poly::from_i64s(f3, c), exp: e };
        assert!(residue_iso(&rd(&[-1, 1], 3), &rd(&[1, 1], 3)).unwrap());
        assert!(!residue_iso(&rd(&[0, 1], 3), &rd(&[0, 1], 2)).unwrap());
        assert!(!residue_iso(&rd(&[0, 1], 2), &rd(&[1, 0, 1], 2)).unwrap());
        let rq = |c: &[i64], e| ReducibleDivisor { irr: Poly::from_i64s(Rationals, c), exp: e };
        assert!(residue_iso(&rq(&[0, 1], 3), &rq(&[-1, 1], 3)).unwrap());
    }

    #[test]
    fn decision_examples() {
        let ec = jordan(Rationals, &[(3, 0), (1, 0), (1, 1)]);
        let ed = jordan(Rationals, &[(3, 1), (2, 1)]);
        let v = s_equivalent(&ec, &ed).unwrap();
        let cert = v.certificate().expect("equivalent");
        assert_eq!(cert.pairs.len(), 1);
        assert_eq!(cert.pairs[0].mode, PairMode::JTransform);
        cert.validate(&ec, &ed, false).unwrap();
        assert!(v.theorem_applicable);
        assert!(!strict_s_equivalent(&ec, &ed).unwrap().is_equivalent());

        let a = jordan(Rationals, &[(5, 0), (4, 0), (1, 0)]);
        let b = jordan(Rationals, &[(5, 0), (2, 0), (1, 0)]);
        let v = s_equivalent(&a, &b).unwrap();
        let SEquivOutcome::NotEquivalent(Obstruction::HallViolation { subset, neighbours }) = v.outcome else {
            panic!("expected a Hall violation");
        };
        assert!(neighbours.is_empty());
        assert_eq!(subset[0].src_set, set(&[1, 4, 5]));
        assert_eq!(subset[0].candidates[0].dst_set, set(&[1, 2, 5]));
        assert_eq!(subset[0].candidates[0].dst_j, set(&[3, 4, 5]));

        let i2 = jordan(Rationals, &[(1, 1), (1, 1)]);
        let i5 = jordan(Rationals, &[(1, 1); 5]);
        let v = s_equivalent(&i2, &i5).unwrap();
        assert_eq!(v.certificate().unwrap().pairs.len(), 0);
        assert!(strict_s_equivalent(&ec, &ec).unwrap().is_equivalent());
    }

    #[test]
    fn size_mismatch_and_field_mismatch() {
        let f5 = PrimeField::new(5).unwrap();
        let a = jordan(f5, &[(2, 0), (2, 1)]);
        let b = jordan(f5, &[(2, 0)]);
        let v = s_equivalent(&a, &b).unwrap();
        assert_eq!(
            v.outcome,
            SEquivOutcome::NotEquivalent(Obstruction::SizeMismatch { left: 2, right: 1 })
        );
        let f3 = PrimeField::new(3).unwrap();
        let c = jordan(f3, &[(2, 0)]);
        let d = ElementaryDivisorMultiset::from_pairs(
            f5,
            c.pairs().map(|(g, e)| (Poly::new(f5, g.coeffs().to_vec()), e)),
        );
        assert_eq!(s_equivalent(&c, &d).unwrap_err().kind(), "FieldMismatch");
    }

    #[test]
    fn certificate_prefers_equal_sets_and_lex_order() {
        // two x-powers and (x-1)-powers with fixed sets {2,4}; all four edges exist
        let f5 = PrimeField::new(5).unwrap();
        let a = jordan(f5, &[(4, 0), (2, 0), (4, 1), (2, 1)]);
        let v = s_equivalent(&a, &a).unwrap();
        let cert = v.certificate().unwrap();
        assert!(cert.pairs.iter().all(|p| p.mode == PairMode::EqualSets && p.src == p.dst));
    }

    #[test]
    fn hall_violator_is_smallest() {
        // sources 0 and 1 both only reach target 0; source 2 reaches everything
        let adj = vec![vec![0], vec![0], vec![0, 1, 2]];
        let (s, n) = hall_violator(&adj, 3);
        assert_eq!((s, n), (vec![0, 1], vec![0]));
        assert_eq!(first_perfect_matching(&adj, 3), None);
        let adj = vec![vec![1, 2], vec![0, 1], vec![1]];
        assert_eq!(first_perfect_matching(&adj, 3), Some(vec![2, 0, 1]));
    }

    proptest! {
        #[test]
        fn j_is_involution(v in proptest::collection::btree_set(1usize..40, 1..8)) {
            let t = PowerIndexSet(v);
            let j = j_transform(&t).unwrap();
            prop_assert_eq!(j.len(), t.len());
            prop_assert_eq!(j_transform(&j).unwrap(), t);
        }
    }
}
