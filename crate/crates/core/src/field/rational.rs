use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{BaseField, Field, FieldSpec};
use crate::error::{Error, Result};
use crate::poly::{self, Factorization, Poly};

/// The rational numbers with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn finite_order(&self) -> Option<(u64, u32)> {
        None
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let num: i64 = rng.random_range(-9..=9);
        let den: i64 = rng.random_range(1..=4);
        BigRational::new(num.into(), den.into())
    }

    fn name(&self) -> String {
        "Q".into()
    }

    fn fmt_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn fmt_signed(&self, a: &BigRational) -> (bool, String) {
        (a.is_negative(), self.fmt_elem(&a.abs()))
    }

    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        poly::rational_gcd(a, b)
    }
}

/// Parses `"a"`, `"-a/b"` or a JSON integer.
pub(crate) fn parse_rational(v: &serde_json::Value) -> Result<BigRational> {
    if let Some(i) = v.as_i64() {
        return Ok(BigRational::from_integer(i.into()));
    }
    let Some(s) = v.as_str() else {
        return Err(Error::InvalidScalar(format!("{v} is not a rational scalar")));
    };
    let bad = || Error::InvalidScalar(format!("{s:?} is not of the form num/den"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

impl BaseField for Rationals {
    fn spec(&self) -> FieldSpec {
        FieldSpec::Q
    }

    fn factor(&self, f: &Poly<Self>) -> Result<Factorization<Self>> {
        poly::factor_rational(f)
    }

    fn residue_fields_isomorphic(&self, p: &Poly<Self>, q: &Poly<Self>) -> Result<bool> {
        poly::rational_residue_iso(p, q)
    }

    fn elem_to_json(&self, a: &BigRational) -> serde_json::Value {
        serde_json::Value::from(self.fmt_elem(a))
    }

    fn elem_from_json(&self, v: &serde_json::Value) -> Result<BigRational> {
        parse_rational(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn parse_forms() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(parse_rational(&json!("2/4")).unwrap(), half);
        assert_eq!(parse_rational(&json!(" -1 / -2 ")).unwrap(), half);
        assert_eq!(parse_rational(&json!(7)).unwrap(), Rationals.from_i64(7));
        assert_eq!(parse_rational(&json!("1/0")), Err(Error::DivisionByZero));
        assert!(parse_rational(&json!("x")).is_err());
    }

    #[test]
    fn canonical_denominator_is_positive() {
        let a = parse_rational(&json!("3/-6")).unwrap();
        assert_eq!(Rationals.fmt_elem(&a), "-1/2");
        assert_eq!(Rationals.fmt_signed(&a), (true, "1/2".to_string()));
    }
}
