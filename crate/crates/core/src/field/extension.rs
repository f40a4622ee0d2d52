use std::sync::Arc;

use rand::Rng;

use super::{Field, PrimeField};
use crate::error::{Error, Result};
use crate::poly::{self, Poly};

/// A simple extension `F[v]/(m(v))` of a field `F` by a monic irreducible
/// polynomial `m`.
///
/// Elements are coefficient vectors of fixed length `deg m`, low to high.
/// Irreducibility of the modulus is the caller's responsibility for
/// [`ExtensionField::new`]; the finite-field constructors check it.
#[derive(Clone, Debug)]
pub struct ExtensionField<F: Field> {
    inner: Arc<Inner<F>>,
}

#[derive(Debug, PartialEq)]
struct Inner<F: Field> {
    base: F,
    modulus: Poly<F>,
    var: char,
}

impl<F: Field> PartialEq for ExtensionField<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}

impl<F: Field> ExtensionField<F> {
    pub fn new(base: F, modulus: &Poly<F>) -> Result<Self> {
        Self::with_variable(base, modulus, 'y')
    }

    pub fn with_variable(base: F, modulus: &Poly<F>, var: char) -> Result<Self> {
        match modulus.degree() {
            None | Some(0) => Err(Error::ConstantPolynomial),
            Some(_) => Ok(ExtensionField {
                inner: Arc::new(Inner {
                    base,
                    modulus: modulus.monic(),
                    var,
                }),
            }),
        }
    }

    /// Degree-`m` extension of a finite field, with the modulus drawn at
    /// random until it passes the irreducibility test.
    pub fn random_extension<R: Rng + ?Sized>(base: F, m: usize, var: char, rng: &mut R) -> Result<Self> {
        if base.finite_order().is_none() {
            return Err(Error::NotFiniteField);
        }
        if m == 0 {
            return Err(Error::ConstantPolynomial);
        }
        loop {
            let mut coeffs: Vec<F::Elem> = (0..m).map(|_| base.random_elem(rng)).collect();
            coeffs.push(base.one());
            let candidate = Poly::new(base.clone(), coeffs);
            if poly::is_irreducible_finite(&candidate)? {
                return Self::with_variable(base, &candidate, var);
            }
        }
    }

    pub fn base(&self) -> &F {
        &self.inner.base
    }

    pub fn modulus(&self) -> &Poly<F> {
        &self.inner.modulus
    }

    pub fn degree(&self) -> usize {
        self.inner.modulus.degree().unwrap_or(0)
    }

    pub fn embed(&self, a: &F::Elem) -> Vec<F::Elem> {
        let mut v = vec![self.inner.base.zero(); self.degree()];
        v[0] = a.clone();
        v
    }

    /// The class of the adjoined variable.
    pub fn generator(&self) -> Vec<F::Elem> {
        let p = Poly::x(self.inner.base.clone());
        self.reduce(p.coeffs().to_vec())
    }

    fn reduce(&self, mut c: Vec<F::Elem>) -> Vec<F::Elem> {
        let base = &self.inner.base;
        let m = self.inner.modulus.coeffs();
        let d = self.degree();
        while c.len() > d {
            let top = c.pop().expect("nonempty");
            if base.is_zero(&top) {
                continue;
            }
            let shift = c.len() - d;
            for (i, mi) in m[..d].iter().enumerate() {
                let t = base.mul(&top, mi);
                c[shift + i] = base.sub(&c[shift + i], &t);
            }
        }
        c.resize(d, base.zero());
        c
    }

    fn as_poly(&self, a: &[F::Elem]) -> Poly<F> {
        Poly::new(self.inner.base.clone(), a.to_vec())
    }
}

impl ExtensionField<PrimeField> {
    /// F_{p^u} presented by the lexicographically first monic irreducible of
    /// degree `u` over F_p.
    pub fn galois(p: u64, u: usize) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if u == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let mut digits = vec![0u64; u];
        loop {
            let mut coeffs = digits.clone();
            coeffs.push(1);
            let candidate = Poly::new(base, coeffs);
            if poly::is_irreducible_finite(&candidate)? {
                return Self::new(base, &candidate);
            }
            // odometer over the low coefficients
            let mut i = 0;
            loop {
                if i == u {
                    return Err(Error::OutOfRange(format!("no irreducible of degree {u} over F_{p}")));
                }
                digits[i] += 1;
                if digits[i] == p {
                    digits[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }
}

impl<F: Field> Field for ExtensionField<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.inner.base.zero(); self.degree()]
    }

    fn one(&self) -> Self::Elem {
        self.embed(&self.inner.base.one())
    }

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.embed(&self.inner.base.from_i64(v))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.inner.base.is_zero(c))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.inner.base.add(x, y)).collect()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.inner.base.sub(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.inner.base.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let base = &self.inner.base;
        let d = self.degree();
        if d == 1 {
            return vec![base.mul(&a[0], &b[0])];
        }
        let mut c = vec![base.zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = base.mul(x, y);
                c[i + j] = base.add(&c[i + j], &t);
            }
        }
        self.reduce(c)
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = poly::ext_gcd(&self.as_poly(a), &self.inner.modulus);
        if g.degree() != Some(0) {
            // only reachable with a reducible modulus
            return Err(Error::DivisionByZero);
        }
        Ok(self.reduce(s.coeffs().to_vec()))
    }

    fn characteristic(&self) -> u64 {
        self.inner.base.characteristic()
    }

    fn finite_order(&self) -> Option<(u64, u32)> {
        let (p, k) = self.inner.base.finite_order()?;
        Some((p, k * self.degree() as u32))
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        (0..self.degree()).map(|_| self.inner.base.random_elem(rng)).collect()
    }

    fn name(&self) -> String {
        format!(
            "{}[{v}]/({})",
            self.inner.base.name(),
            poly::format_coeffs(&self.inner.base, self.inner.modulus.coeffs(), self.inner.var),
            v = self.inner.var
        )
    }

    fn fmt_elem(&self, a: &Self::Elem) -> String {
        let trimmed = self.as_poly(a);
        poly::format_coeffs(&self.inner.base, trimmed.coeffs(), self.inner.var)
    }

    fn elem_is_compound(&self, a: &Self::Elem) -> bool {
        a.iter().filter(|c| !self.inner.base.is_zero(c)).count() > 1
            || a.iter().skip(1).any(|c| !self.inner.base.is_zero(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn f9_arithmetic() {
        let k = ExtensionField::galois(3, 2).unwrap();
        // first monic irreducible quadratic over F_3 in odometer order is y^2 + 1
        assert_eq!(k.modulus().coeffs(), &[1, 0, 1]);
        let y = k.generator();
        assert_eq!(k.mul(&y, &y), k.from_i64(-1));
        let mut count = 0;
        for a in 0..3 {
            for b in 0..3 {
                let e = vec![a, b];
                if k.is_zero(&e) {
                    continue;
                }
                let i = k.inv(&e).unwrap();
                assert_eq!(k.mul(&e, &i), k.one());
                assert_eq!(k.pow(&e, 8), k.one());
                count += 1;
            }
        }
        assert_eq!(count, 8);
        assert_eq!(k.finite_order(), Some((3, 2)));
    }

    #[test]
    fn towers() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let k = ExtensionField::galois(2, 2).unwrap();
        let l = ExtensionField::random_extension(k.clone(), 3, 'z', &mut rng).unwrap();
        assert_eq!(l.order(), Some(64));
        for _ in 0..50 {
            let a = l.random_elem(&mut rng);
            if l.is_zero(&a) {
                continue;
            }
            assert_eq!(l.mul(&a, &l.inv(&a).unwrap()), l.one());
            assert_eq!(l.pow(&a, 63), l.one());
        }
    }
}
