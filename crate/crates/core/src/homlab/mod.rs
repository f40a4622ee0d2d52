//! Homological invariants of the blocks `End_U(M)` with `U = K[x]/(x^n)`
//! and `M = ⊕_{e ∈ E} M(e)`, `M(e) = U/(x^e)`.

mod algebra;
mod module;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use algebra::{check_generator, hom_range, BasisLabel, StructureConstantAlgebra};
pub use module::{hom_space, isomorphic, HomMap, IsoVerdict, LambdaModule, ISO_DRAWS};

use crate::error::{Error, Result};
use crate::field::{ExtensionField, Field, PrimeField, Rationals};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::sequiv::PowerIndexSet;

/// Default number of syzygy steps before giving up.
pub const DEFAULT_RESOLUTION_CAP: usize = 64;

/// `U = K[x]/(x^n)` with `[K : F_p] = u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NakayamaData {
    pub u: usize,
    pub n: usize,
}

/// The residue field `F_{p^u}`, or `Q[y]/(y^u - 2)` when `p = 0`.
pub fn residue_field(p: u64, u: usize) -> Result<ExtensionField<PrimeField>> {
    ExtensionField::galois(p, u)
}

pub fn rational_residue_field(u: usize) -> Result<ExtensionField<Rationals>> {
    let mut c = vec![0i64; u + 1];
    c[0] = -2;
    c[u] = 1;
    ExtensionField::new(Rationals, &Poly::from_i64s(Rationals, &c))
}

pub fn realize_block<K: Field>(field: K, n: usize, exps: &PowerIndexSet) -> Result<StructureConstantAlgebra<K>> {
    StructureConstantAlgebra::new(field, n, exps)
}

/// `Ω M(e) = M(n - e)` for a non-projective `M(e)`.
pub fn syzygy_exponent(e: usize, n: usize) -> Result<usize> {
    if e == 0 || e > n {
        return Err(Error::OutOfRange(format!("exponent {e} outside 1..={n}")));
    }
    if e == n {
        return Err(Error::ProjectiveInput(e));
    }
    Ok(n - e)
}

/// `ΩE = {n} ∪ {n - e : e ∈ E, e != n}`.
pub fn omega_set(n: usize, exps: &PowerIndexSet) -> Result<PowerIndexSet> {
    check_generator(n, exps)?;
    let mut out: Vec<usize> = exps.values().filter(|&e| e != n).map(|e| n - e).collect();
    out.push(n);
    Ok(out.into_iter().collect())
}

fn nilpotent_power(n: usize, k: usize) -> Matrix<Rationals> {
    let mut m = Matrix::zeros(Rationals, n, n);
    for i in 0..n.saturating_sub(k) {
        m.set(i, i + k, Rationals.one());
    }
    m
}

/// `dim_K Ext^i_U(M(a), M(b))`, from `Hom(-, M(b))` applied to the
/// 2-periodic resolution `... -> U -x^{n-a}-> U -x^a-> U -> M(a)`.
pub fn ext_dim(a: usize, b: usize, i: usize, n: usize) -> Result<usize> {
    if a == 0 || b == 0 || a > n || b > n || i == 0 {
        return Err(Error::OutOfRange(format!("ext_dim({a}, {b}, {i}, {n})")));
    }
    // Hom(U, M(b)) = M(b); the induced maps are multiplication by x^k
    let (incoming, outgoing) = if i % 2 == 1 { (a, n - a) } else { (n - a, a) };
    let ker = b - nilpotent_power(b, outgoing).rank();
    let im = nilpotent_power(b, incoming).rank();
    Ok(ker - im)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GlDim {
    Finite(usize),
    DetectedInfinite,
    ExceededCap(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DomDim {
    Finite(usize),
    Infinite,
}

impl fmt::Display for GlDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlDim::Finite(d) => write!(f, "{d}"),
            GlDim::DetectedInfinite => f.write_str("infinite"),
            GlDim::ExceededCap(c) => write!(f, "> {c} (cap)"),
        }
    }
}

impl fmt::Display for DomDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomDim::Finite(d) => write!(f, "{d}"),
            DomDim::Infinite => f.write_str("infinite"),
        }
    }
}

/// Ext-vanishing criterion: one more than the least `i` with
/// `Ext^i_U(M, M) != 0`, or infinite when `M` is projective.
pub fn dominant_dimension(n: usize, exps: &PowerIndexSet) -> Result<DomDim> {
    check_generator(n, exps)?;
    // period two, so i = 1, 2 decide
    for i in 1..=2 {
        let mut total = 0;
        for a in exps.values() {
            for b in exps.values() {
                total += ext_dim(a, b, i, n)?;
            }
        }
        if total > 0 {
            return Ok(DomDim::Finite(i + 1));
        }
    }
    Ok(DomDim::Infinite)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResolutionEnd {
    ProjectiveDimension(usize),
    /// `Ω^to X ≅ Ω^from X` with both nonzero.
    DetectedInfinite { from: usize, to: usize },
    ExceededCap(usize),
}

#[derive(Clone, Debug)]
pub struct ResolutionTrace {
    /// Multiplicities of `P(v)` in each projective term.
    pub terms: Vec<Vec<usize>>,
    /// Dimension vectors of `X, ΩX, Ω²X, ...`.
    pub syzygy_dims: Vec<Vec<usize>>,
    pub end: ResolutionEnd,
}

pub fn min_projective_resolution<K: Field>(
    alg: &StructureConstantAlgebra<K>,
    x: &LambdaModule<K>,
    cap: usize,
    seed: u64,
) -> ResolutionTrace {
    let mut seen = vec![x.clone()];
    let mut terms = Vec::new();
    let mut syzygy_dims = vec![x.dims.clone()];
    if x.is_zero() {
        return ResolutionTrace {
            terms,
            syzygy_dims,
            end: ResolutionEnd::ProjectiveDimension(0),
        };
    }
    for step in 1..=cap {
        let (top, omega) = seen.last().expect("nonempty").projective_cover(alg);
        terms.push(top);
        syzygy_dims.push(omega.dims.clone());
        if omega.is_zero() {
            return ResolutionTrace {
                terms,
                syzygy_dims,
                end: ResolutionEnd::ProjectiveDimension(step - 1),
            };
        }
        for (j, earlier) in seen.iter().enumerate() {
            if isomorphic(alg, earlier, &omega, seed ^ (step as u64) << 8 ^ j as u64) == IsoVerdict::Isomorphic {
                return ResolutionTrace {
                    terms,
                    syzygy_dims,
                    end: ResolutionEnd::DetectedInfinite { from: j, to: step },
                };
            }
        }
        seen.push(omega);
    }
    ResolutionTrace {
        terms,
        syzygy_dims,
        end: ResolutionEnd::ExceededCap(cap),
    }
}

/// Maximum projective dimension of the simple modules.
pub fn global_dimension<K: Field>(alg: &StructureConstantAlgebra<K>, cap: usize, seed: u64) -> GlDim {
    let mut best = 0;
    let mut capped = None;
    for v in 0..alg.vertex_count() {
        let s = LambdaModule::simple(alg, v);
        match min_projective_resolution(alg, &s, cap, seed.wrapping_add(v as u64)).end {
            ResolutionEnd::ProjectiveDimension(d) => best = best.max(d),
            ResolutionEnd::DetectedInfinite { .. } => return GlDim::DetectedInfinite,
            ResolutionEnd::ExceededCap(c) => capped = Some(c),
        }
    }
    match capped {
        Some(c) => GlDim::ExceededCap(c),
        None => GlDim::Finite(best),
    }
}

/// Dominant dimension from the minimal injective coresolution of `Λ_Λ`:
/// the number of leading projective terms. Independent of the Ext
/// criterion in [`dominant_dimension`].
pub fn dominant_dimension_by_coresolution<K: Field>(
    alg: &StructureConstantAlgebra<K>,
    cap: usize,
    seed: u64,
) -> DomDim {
    let k = alg.vertex_count();
    let proj_inj: Vec<bool> = (0..k)
        .map(|v| {
            let i = LambdaModule::injective(alg, v);
            (0..k).any(|w| {
                isomorphic(alg, &i, &LambdaModule::projective(alg, w), seed ^ ((v * k + w) as u64)) == IsoVerdict::Isomorphic
            })
        })
        .collect();
    let mut cur = LambdaModule::regular(alg);
    for t in 0..cap {
        if cur.is_zero() {
            return DomDim::Infinite;
        }
        let (mult, next) = cur.injective_envelope(alg);
        if mult.iter().zip(&proj_inj).any(|(&m, &pi)| m > 0 && !pi) {
            return DomDim::Finite(t);
        }
        cur = next;
    }
    DomDim::Infinite
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomDimReport {
    pub n: usize,
    pub u: usize,
    pub exps: Vec<usize>,
    pub dim: usize,
    pub gl_dim: GlDim,
    pub dom_dim: DomDim,
    pub cartan: Vec<Vec<usize>>,
}

pub fn hom_dim_report<K: Field>(field: K, u: usize, n: usize, exps: &PowerIndexSet, cap: usize, seed: u64) -> Result<HomDimReport> {
    let alg = realize_block(field, n, exps)?;
    Ok(HomDimReport {
        n,
        u,
        exps: exps.to_vec(),
        dim: alg.dim(),
        gl_dim: global_dimension(&alg, cap, seed),
        dom_dim: dominant_dimension(n, exps)?,
        cartan: alg.cartan(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequiv::j_transform;

    fn set(v: &[usize]) -> PowerIndexSet {
        v.iter().copied().collect()
    }

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn closed_form(a: usize, b: usize, i: usize, n: usize) -> usize {
        if i % 2 == 1 {
            b.min(n - a) - b.saturating_sub(a)
        } else {
            a.min(b) - b.saturating_sub(n - a)
        }
    }

    #[test]
    fn ext_examples() {
        assert_eq!(ext_dim(1, 1, 1, 2).unwrap(), 1);
        assert_eq!(ext_dim(2, 2, 1, 4).unwrap(), 2);
        for n in 1..=6 {
            for a in 1..=n {
                for b in 1..=n {
                    for i in 1..=4 {
                        let e = ext_dim(a, b, i, n).unwrap();
                        assert_eq!(e, closed_form(a, b, i, n));
                        assert_eq!(e, ext_dim(a, b, i + 2, n).unwrap());
                        if a == n {
                            assert_eq!(e, 0);
                        }
                    }
                }
            }
        }
        assert_eq!(ext_dim(0, 1, 1, 2).unwrap_err().kind(), "OutOfRange");
        assert_eq!(ext_dim(1, 1, 0, 2).unwrap_err().kind(), "OutOfRange");
    }

    #[test]
    fn syzygy_examples() {
        assert_eq!(syzygy_exponent(1, 3).unwrap(), 2);
        assert_eq!(syzygy_exponent(2, 4).unwrap(), 2);
        assert_eq!(syzygy_exponent(3, 3).unwrap_err().kind(), "ProjectiveInput");
        for e in [set(&[1, 2, 5]), set(&[5]), set(&[3, 4, 5])] {
            assert_eq!(omega_set(5, &e).unwrap(), j_transform(&e).unwrap());
        }
    }

    #[test]
    fn dominant_examples() {
        assert_eq!(dominant_dimension(2, &set(&[1, 2])).unwrap(), DomDim::Finite(2));
        assert_eq!(dominant_dimension(4, &set(&[4])).unwrap(), DomDim::Infinite);
        assert_eq!(dominant_dimension(4, &set(&[2, 4])).unwrap(), DomDim::Finite(2));
        let a = realize_block(f2(), 2, &set(&[1, 2])).unwrap();
        assert_eq!(dominant_dimension_by_coresolution(&a, 16, 0), DomDim::Finite(2));
        let u = realize_block(f2(), 3, &set(&[3])).unwrap();
        assert_eq!(dominant_dimension_by_coresolution(&u, 16, 0), DomDim::Infinite);
    }

    #[test]
    fn dominant_methods_agree() {
        for n in 1..=4usize {
            for mask in 0..(1u32 << (n - 1)) {
                let mut e: Vec<usize> = (1..n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                e.push(n);
                let e = set(&e);
                let a = realize_block(f2(), n, &e).unwrap();
                assert_eq!(dominant_dimension_by_coresolution(&a, 16, 1), dominant_dimension(n, &e).unwrap(), "{e}");
            }
        }
    }

    #[test]
    fn modules_satisfy_table() {
        let a = realize_block(f2(), 3, &set(&[1, 2, 3])).unwrap();
        for v in 0..3 {
            for m in [
                LambdaModule::projective(&a, v),
                LambdaModule::injective(&a, v),
                LambdaModule::simple(&a, v),
            ] {
                assert!(m.satisfies_table(&a));
            }
            let (_, omega) = LambdaModule::simple(&a, v).projective_cover(&a);
            assert!(omega.satisfies_table(&a));
            let (_, co) = LambdaModule::simple(&a, v).injective_envelope(&a);
            assert!(co.satisfies_table(&a));
        }
        assert_eq!(LambdaModule::regular(&a).total_dim(), a.dim());
    }

    #[test]
    fn hom_dims_match_cartan() {
        let a = realize_block(f2(), 4, &set(&[1, 3, 4])).unwrap();
        let c = a.cartan();
        for v in 0..3 {
            for w in 0..3 {
                let h = hom_space(&a, &LambdaModule::projective(&a, v), &LambdaModule::projective(&a, w));
                // Hom(e_v Λ, e_w Λ) = e_w Λ e_v
                assert_eq!(h.len(), c[w][v]);
                assert_eq!(c[v][w], a.exps()[v].min(a.exps()[w]));
            }
        }
    }

    #[test]
    fn resolution_examples() {
        let a = realize_block(f2(), 2, &set(&[1, 2])).unwrap();
        for v in 0..2 {
            let p = LambdaModule::projective(&a, v);
            assert_eq!(min_projective_resolution(&a, &p, 8, 0).end, ResolutionEnd::ProjectiveDimension(0));
        }
        let s = LambdaModule::simple(&a, 0);
        assert_eq!(min_projective_resolution(&a, &s, 8, 0).end, ResolutionEnd::ProjectiveDimension(2));
        assert_eq!(global_dimension(&a, 8, 0), GlDim::Finite(2));

        let u = realize_block(f2(), 3, &set(&[3])).unwrap();
        let s = LambdaModule::simple(&u, 0);
        assert!(matches!(min_projective_resolution(&u, &s, 8, 0).end, ResolutionEnd::DetectedInfinite { .. }));
        assert_eq!(global_dimension(&u, 8, 0), GlDim::DetectedInfinite);

        let k = realize_block(f2(), 1, &set(&[1])).unwrap();
        assert_eq!(global_dimension(&k, 8, 0), GlDim::Finite(0));
    }

    #[test]
    fn iso_test_over_extension() {
        let k = residue_field(2, 2).unwrap();
        let a = realize_block(k.clone(), 2, &set(&[1, 2])).unwrap();
        let s0 = LambdaModule::simple(&a, 0);
        let s1 = LambdaModule::simple(&a, 1);
        let ss = s0.direct_sum(&s0);
        assert_eq!(isomorphic(&a, &ss, &ss, 0), IsoVerdict::Isomorphic);
        assert_eq!(isomorphic(&a, &s0, &s1, 0), IsoVerdict::NotIsomorphic);
        let p1 = LambdaModule::projective(&a, 1);
        assert_eq!(isomorphic(&a, &p1, &LambdaModule::injective(&a, 1), 0), IsoVerdict::Isomorphic);
        assert_eq!(isomorphic(&a, &p1, &LambdaModule::injective(&a, 0), 0), IsoVerdict::NotIsomorphic);
        assert_eq!(global_dimension(&a, 8, 0), GlDim::Finite(2));
    }

    #[test]
    fn omega_pairs_share_dimensions() {
        for n in 1..=5usize {
            for mask in 0..(1u32 << (n - 1)) {
                let mut e: Vec<usize> = (1..n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                e.push(n);
                let e = set(&e);
                let oe = omega_set(n, &e).unwrap();
                let r1 = hom_dim_report(f2(), 1, n, &e, 32, 0).unwrap();
                let r2 = hom_dim_report(f2(), 1, n, &oe, 32, 0).unwrap();
                assert_eq!((r1.gl_dim, r1.dom_dim), (r2.gl_dim, r2.dom_dim), "E={e} ΩE={oe}");
                assert!(!matches!(r1.gl_dim, GlDim::ExceededCap(_)));
            }
        }
    }
}
