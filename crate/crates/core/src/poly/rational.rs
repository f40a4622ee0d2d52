//! Polynomial gcd and limited factorization over Q.
//!
//! Factorization succeeds when every squarefree part, after removing its
//! rational roots, has degree at most four: quadratics and cubics without a
//! rational root are irreducible, and quartics are split (or certified
//! irreducible) through the resolvent cubic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Factorization, Poly};
use crate::error::{Error, Result};
use crate::field::Rationals;

type QPoly = Poly<Rationals>;

/// Largest coefficient magnitude searched for rational roots.
const ROOT_SEARCH_LIMIT: u64 = 1_000_000_000_000;

fn primitive_integer(p: &QPoly) -> Vec<BigInt> {
    let den = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() {
        for c in ints.iter_mut() {
            *c /= &content;
        }
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    ints
}

fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !content.is_zero() && !content.is_one() {
        for c in v.iter_mut() {
            *c /= &content;
        }
    }
    v
}

/// Pseudo-remainder of `a` by `b` over Z.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let lr = r.last().expect("nonempty").clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &lr * bj;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Monic gcd over Q through primitive pseudo-remainder sequences, which keeps
/// intermediate coefficients integral and small.
pub fn rational_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (mut r0, mut r1) = (primitive_integer(a), primitive_integer(b));
    if r0.len() < r1.len() {
        std::mem::swap(&mut r0, &mut r1);
    }
    while !r1.is_empty() {
        let r = make_primitive(pseudo_rem(&r0, &r1));
        r0 = r1;
        r1 = r;
    }
    let coeffs = r0.into_iter().map(BigRational::from_integer).collect();
    Poly::new(Rationals, coeffs).monic()
}

fn small_divisors(n: &BigInt, poly: &QPoly) -> Result<Vec<u64>> {
    let n = n.abs();
    let Some(v) = n.to_u64().filter(|v| *v <= ROOT_SEARCH_LIMIT) else {
        return Err(Error::UnsupportedRationalFactorization {
            poly: poly.to_string(),
            reason: "coefficients too large for the rational-root search".into(),
        });
    };
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(d);
            if d != v / d {
                out.push(v / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    Ok(out)
}

/// Rational roots of a nonzero polynomial (without multiplicity).
pub(crate) fn rational_roots(p: &QPoly) -> Result<Vec<BigRational>> {
    let mut roots = Vec::new();
    let mut ints = primitive_integer(p);
    if ints.is_empty() {
        return Ok(roots);
    }
    if ints[0].is_zero() {
        roots.push(BigRational::zero());
        let first = ints.iter().position(|c| !c.is_zero()).expect("nonzero poly");
        ints.drain(..first);
    }
    if ints.len() == 1 {
        return Ok(roots);
    }
    let reduced = Poly::new(
        Rationals,
        ints.iter().cloned().map(BigRational::from_integer).collect(),
    );
    let nums = small_divisors(&ints[0], p)?;
    let dens = small_divisors(ints.last().expect("nonempty"), p)?;
    let mut seen = std::collections::BTreeSet::new();
    for &d in &dens {
        for &n in &nums {
            for sign in [1i64, -1] {
                let r = BigRational::new(BigInt::from(n) * sign, BigInt::from(d));
                if seen.insert(r.clone()) && reduced.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

fn quad(p: &BigRational, c: &BigRational) -> QPoly {
    Poly::new(Rationals, vec![c.clone(), p.clone(), BigRational::one()])
}

/// Splits a monic quartic with no rational roots into two monic quadratics
/// when possible.
fn split_quartic(h: &QPoly) -> Result<Option<(QPoly, QPoly)>> {
    let [d, c, b, a, _] = h.coeffs() else {
        unreachable!("quartic expected")
    };
    let two = BigRational::from_integer(2.into());
    let four = BigRational::from_integer(4.into());
    // x^4 + a x^3 + b x^2 + c x + d = (x^2 + p x + q)(x^2 + r x + s) forces
    // y = q + s to be a root of this cubic
    let resolvent = Poly::new(
        Rationals,
        vec![
            -(a * a * d - &four * b * d + c * c),
            a * c - &four * d,
            -b.clone(),
            BigRational::one(),
        ],
    );
    for y in rational_roots(&resolvent)? {
        let Some(disc) = rational_sqrt(&(&y * &y - &four * d)) else {
            continue;
        };
        let qq = (&y + &disc) / &two;
        let ss = (&y - &disc) / &two;
        let mut candidates = Vec::new();
        if qq != ss {
            let p = (c - a * &qq) / (&ss - &qq);
            let r = a - &p;
            candidates.push((p, r));
        } else if let Some(root) = rational_sqrt(&(a * a - &four * (b - &y))) {
            let p = (a + &root) / &two;
            let r = (a - &root) / &two;
            candidates.push((p, r));
        }
        for (p, r) in candidates {
            let f1 = quad(&p, &qq);
            let f2 = quad(&r, &ss);
            if f1.mul(&f2) == *h {
                return Ok(Some((f1, f2)));
            }
        }
    }
    Ok(None)
}

fn split_squarefree(h: &QPoly, original: &QPoly) -> Result<Vec<QPoly>> {
    let mut out = Vec::new();
    let mut rest = h.monic();
    for r in rational_roots(&rest)? {
        let lin = Poly::linear(Rationals, &r);
        rest = rest.div_exact(&lin);
        out.push(lin);
    }
    match rest.degree().unwrap_or(0) {
        0 => {}
        2 | 3 => out.push(rest),
        4 => match split_quartic(&rest)? {
            Some((a, b)) => {
                out.push(a);
                out.push(b);
            }
            None => out.push(rest),
        },
        deg => {
            return Err(Error::UnsupportedRationalFactorization {
                poly: original.to_string(),
                reason: format!("irreducible part of degree {deg} left after removing linear factors"),
            })
        }
    }
    Ok(out)
}

/// Factorization over Q within the supported class.
pub fn factor_rational(f: &QPoly) -> Result<Factorization<Rationals>> {
    let Some(lc) = f.lc().cloned() else {
        return Err(Error::ConstantPolynomial);
    };
    if f.degree() == Some(0) {
        return Err(Error::ConstantPolynomial);
    }
    let mut parts = Vec::new();
    for (g, m) in f.monic().squarefree_decomposition() {
        for irr in split_squarefree(&g, f)? {
            parts.push((irr, m));
        }
    }
    Ok(Factorization::from_parts(lc, parts))
}

fn discriminant_quadratic(p: &QPoly) -> BigRational {
    let c = p.coeffs();
    &c[1] * &c[1] - BigRational::from_integer(4.into()) * &c[0] * &c[2]
}

/// Decides `Q[x]/(p) = Q[x]/(q)` for monic irreducible p, q when they are
/// equal or of degree at most two.
pub fn rational_residue_iso(p: &QPoly, q: &QPoly) -> Result<bool> {
    if p.degree() != q.degree() {
        return Ok(false);
    }
    if p.monic() == q.monic() {
        return Ok(true);
    }
    match p.degree() {
        Some(1) => Ok(true),
        Some(2) => {
            // Q(sqrt D1) = Q(sqrt D2) iff D1 D2 is a square
            let prod = discriminant_quadratic(p) * discriminant_quadratic(q);
            Ok(rational_sqrt(&prod).is_some())
        }
        _ => Err(Error::UnsupportedRationalIsoTest {
            left: p.to_string(),
            right: q.to_string(),
            reason: "number-field isomorphism is only decided up to degree 2".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> QPoly {
        Poly::from_i64s(Rationals, c)
    }

    #[test]
    fn gcd_matches_euclid() {
        let a = qp(&[-1, 0, 1]).mul(&qp(&[3, 2])).mul(&qp(&[1, 0, 5]));
        let b = qp(&[-1, 0, 1]).mul(&qp(&[7, 0, 0, 1]));
        assert_eq!(rational_gcd(&a, &b), qp(&[-1, 0, 1]));
        assert_eq!(rational_gcd(&a, &b), crate::poly::euclid_gcd(&a, &b));
        assert_eq!(rational_gcd(&qp(&[]), &qp(&[2, 4])), qp(&[1, 2]).monic());
    }

    #[test]
    fn jordan_type_factorization() {
        // x^3 (x - 1)
        let f = qp(&[0, 0, 0, -1, 1]);
        let fac = factor_rational(&f).unwrap();
        assert_eq!(fac.factors, vec![(qp(&[-1, 1]), 1), (qp(&[0, 1]), 3)]);
    }

    #[test]
    fn cyclotomic_quartics() {
        // x^6 - 1 = (x - 1)(x + 1)(x^2 + x + 1)(x^2 - x + 1): quartic splits
        let f = qp(&[-1, 0, 0, 0, 0, 0, 1]);
        let fac = factor_rational(&f).unwrap();
        assert_eq!(fac.factors.len(), 4);
        assert_eq!(fac.expand(&Rationals), f);
        // x^4 + 1 is irreducible over Q (its resolvent has roots but no split)
        let g = qp(&[1, 0, 0, 0, 1]);
        assert_eq!(factor_rational(&g).unwrap().factors, vec![(g.clone(), 1)]);
        // x^4 + 2x^2 + 9 = (x^2 - 2x + 3)(x^2 + 2x + 3)
        let h = qp(&[9, 0, 2, 0, 1]);
        let fac = factor_rational(&h).unwrap();
        assert_eq!(fac.factors, vec![(qp(&[3, -2, 1]), 1), (qp(&[3, 2, 1]), 1)]);
        // (x^2 + 1)^2 (x^2 + 2)
        let k = qp(&[1, 0, 1]).pow(2).mul(&qp(&[2, 0, 1]));
        let fac = factor_rational(&k).unwrap();
        assert_eq!(fac.factors, vec![(qp(&[1, 0, 1]), 2), (qp(&[2, 0, 1]), 1)]);
    }

    #[test]
    fn unsupported_degree() {
        // x^5 - x - 1 is irreducible of degree 5
        let err = factor_rational(&qp(&[-1, -1, 0, 0, 0, 1])).unwrap_err();
        assert_eq!(err.kind(), "UnsupportedRationalFactorization");
    }

    #[test]
    fn rational_coefficients() {
        // (x - 1/2)(x + 2/3)
        let a = Poly::linear(Rationals, &BigRational::new(1.into(), 2.into()));
        let b = Poly::linear(Rationals, &BigRational::new((-2).into(), 3.into()));
        let f = a.mul(&b).scale(&BigRational::from_integer(6.into()));
        let fac = factor_rational(&f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(&Rationals), f);
    }

    #[test]
    fn residue_iso() {
        assert!(rational_residue_iso(&qp(&[0, 1]), &qp(&[-1, 1])).unwrap());
        // Q(i) vs Q(sqrt -4) equal, Q(i) vs Q(sqrt 2) differ
        assert!(rational_residue_iso(&qp(&[1, 0, 1]), &qp(&[4, 0, 1])).unwrap());
        assert!(!rational_residue_iso(&qp(&[1, 0, 1]), &qp(&[-2, 0, 1])).unwrap());
        // x^2 + x + 1 has discriminant -3, x^2 + 3 has -12
        assert!(rational_residue_iso(&qp(&[1, 1, 1]), &qp(&[3, 0, 1])).unwrap());
        assert!(!rational_residue_iso(&qp(&[0, 1]), &qp(&[1, 0, 1])).unwrap());
        let err = rational_residue_iso(&qp(&[2, 0, 0, 1]), &qp(&[3, 0, 0, 1])).unwrap_err();
        assert_eq!(err.kind(), "UnsupportedRationalIsoTest");
        assert!(rational_residue_iso(&qp(&[2, 0, 0, 1]), &qp(&[2, 0, 0, 1])).unwrap());
    }
}
