use rand::Rng;

use super::{BaseField, Field, FieldSpec};
use crate::error::{Error, Result};
use crate::poly::{self, Factorization, Poly};

/// The prime field F_p with `p < 2^31`.
///
/// Residues are kept in `[0, p)` as `u64`; products stay below `2^62` and are
/// reduced with a precomputed Barrett constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
    barrett: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField {
            p,
            barrett: u64::MAX / p,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    /// Inverse by Fermat's little theorem; slower twin of [`Field::inv`].
    pub fn inv_fermat(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(&a, (self.p - 2) as u128))
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(a * b)
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(self.from_i64(t0))
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn finite_order(&self) -> Option<(u64, u32)> {
        Some((self.p, 1))
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(0..self.p)
    }

    fn name(&self) -> String {
        format!("F_{}", self.p)
    }

    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl BaseField for PrimeField {
    fn spec(&self) -> FieldSpec {
        FieldSpec::Fp { p: self.p }
    }

    fn factor(&self, f: &Poly<Self>) -> Result<Factorization<Self>> {
        poly::factor_finite(f)
    }

    fn residue_fields_isomorphic(&self, p: &Poly<Self>, q: &Poly<Self>) -> Result<bool> {
        // finite fields of equal order are isomorphic
        Ok(p.degree() == q.degree())
    }

    fn elem_to_json(&self, a: &u64) -> serde_json::Value {
        serde_json::Value::from(*a)
    }

    fn elem_from_json(&self, v: &serde_json::Value) -> Result<u64> {
        if let Some(i) = v.as_i64() {
            return Ok(self.from_i64(i));
        }
        if let Some(u) = v.as_u64() {
            return Ok(u % self.p);
        }
        if let Some(s) = v.as_str() {
            let i: i64 = s
                .trim()
                .parse()
                .map_err(|_| Error::InvalidScalar(format!("{s:?} is not an integer")))?;
            return Ok(self.from_i64(i));
        }
        Err(Error::InvalidScalar(format!("{v} is not an F_{} scalar", self.p)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
        assert_eq!(PrimeField::new(1 << 31), Err(Error::ModulusTooLarge(1 << 31)));
        assert!(PrimeField::new(2_147_483_647).is_ok());
    }

    #[test]
    fn barrett_matches_remainder() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [2u64, 3, 5, 65_537, 2_147_483_647, 1_000_000_007] {
            let Ok(f) = PrimeField::new(p) else { continue };
            for _ in 0..2000 {
                let a = rng.random_range(0..p);
                let b = rng.random_range(0..p);
                assert_eq!(f.mul(&a, &b), (a * b) % p);
            }
            assert_eq!(f.mul(&(p - 1), &(p - 1)), ((p - 1) * (p - 1)) % p);
        }
    }

    #[test]
    fn euclid_and_fermat_inverses_agree() {
        for p in [2u64, 3, 5, 7, 101, 7919] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p.min(500) {
                let i = f.inv(&a).unwrap();
                assert_eq!(f.mul(&a, &i), 1);
                assert_eq!(i, f.inv_fermat(a).unwrap());
            }
        }
    }
}
