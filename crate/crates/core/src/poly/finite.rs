//! Factorization over finite fields: squarefree decomposition, distinct-degree
//! splitting, then Cantor–Zassenhaus equal-degree splitting.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Factorization, Poly};
use crate::error::{Error, Result};
use crate::field::Field;

const SPLIT_SEED: u64 = 0x5eed_cafe;

fn order_of<F: Field>(field: &F) -> Result<(u64, u32, u128)> {
    let (p, k) = field.finite_order().ok_or(Error::NotFiniteField)?;
    let q = field.order().ok_or_else(|| Error::OutOfRange("field order overflows u128".into()))?;
    Ok((p, k, q))
}

/// Complete factorization over a finite field.
///
/// The equal-degree step is randomized with a fixed-seed generator and the
/// factor list is canonically sorted, so output is reproducible.
pub fn factor_finite<F: Field>(f: &Poly<F>) -> Result<Factorization<F>> {
    let field = f.field().clone();
    order_of(&field)?;
    let Some(lc) = f.lc().cloned() else {
        return Err(Error::ConstantPolynomial);
    };
    if f.degree() == Some(0) {
        return Err(Error::ConstantPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED ^ f.degree().unwrap_or(0) as u64);
    let mut parts = Vec::new();
    for (g, m) in f.monic().squarefree_decomposition() {
        for (d, block) in distinct_degree_split(&g)? {
            for irr in equal_degree_split(&block, d, &mut rng)? {
                parts.push((irr, m));
            }
        }
    }
    Ok(Factorization::from_parts(lc, parts))
}

/// Splits a monic squarefree polynomial into `(d, product of all irreducible
/// factors of degree d)` pieces.
pub fn distinct_degree_split<F: Field>(f: &Poly<F>) -> Result<Vec<(usize, Poly<F>)>> {
    let field = f.field().clone();
    let (_, _, q) = order_of(&field)?;
    let x = Poly::x(field.clone());
    let mut out = Vec::new();
    let mut rest = f.monic();
    let mut h = x.rem(&rest)?;
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.powmod(q, &rest)?;
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest)?;
            out.push((d, g));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree() {
        if deg > 0 {
            out.push((deg, rest));
        }
    }
    Ok(out)
}

/// `h^{(q^d - 1)/2} - 1` for odd q, or the absolute trace
/// `h + h^2 + ... + h^{2^{kd-1}}` in characteristic 2, both modulo `f`.
fn splitting_element<F: Field>(h: &Poly<F>, f: &Poly<F>, d: usize) -> Result<Poly<F>> {
    let field = f.field().clone();
    let (p, k, q) = order_of(&field)?;
    if p == 2 {
        let mut acc = h.rem(f)?;
        let mut term = acc.clone();
        for _ in 1..(k as usize * d) {
            term = term.mul(&term).rem(f)?;
            acc = acc.add(&term);
        }
        Ok(acc)
    } else {
        // (q^d - 1)/2 = (1 + q + ... + q^{d-1}) (q - 1)/2
        let mut norm = h.rem(f)?;
        let mut conj = norm.clone();
        for _ in 1..d {
            conj = conj.powmod(q, f)?;
            norm = norm.mul(&conj).rem(f)?;
        }
        let t = norm.powmod((q - 1) / 2, f)?;
        Ok(t.sub(&Poly::one(field)))
    }
}

fn equal_degree_split<F: Field>(
    f: &Poly<F>,
    d: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Poly<F>>> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return Ok(vec![f.monic()]);
    }
    let field = f.field().clone();
    loop {
        let coeffs = (0..n).map(|_| field.random_elem(rng)).collect();
        let h = Poly::new(field.clone(), coeffs);
        if h.is_constant() {
            continue;
        }
        let mut g = f.gcd(&h);
        if g.is_one() {
            g = f.gcd(&splitting_element(&h, f, d)?);
        }
        if !g.is_one() && g.degree() != f.degree() {
            let mut out = equal_degree_split(&g, d, rng)?;
            out.extend(equal_degree_split(&f.div_exact(&g), d, rng)?);
            return Ok(out);
        }
    }
}

/// Rabin-style irreducibility test over a finite field: `x^{q^n} = x mod f`
/// and `gcd(x^{q^j} - x, f) = 1` for every `0 < j < n`.
pub fn is_irreducible_finite<F: Field>(f: &Poly<F>) -> Result<bool> {
    let field = f.field().clone();
    let (_, _, q) = order_of(&field)?;
    let n = match f.degree() {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    let f = f.monic();
    let x = Poly::x(field);
    let mut h = x.clone();
    for _ in 1..n {
        h = h.powmod(q, &f)?;
        if !f.gcd(&h.sub(&x)).is_one() {
            return Ok(false);
        }
    }
    h = h.powmod(q, &f)?;
    Ok(h == x.rem(&f)?)
}
