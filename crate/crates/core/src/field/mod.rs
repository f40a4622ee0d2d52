//! Exact scalar arithmetic.
//!
//! Every algorithm in the crate is generic over [`Field`]. The two base
//! fields accepted from users, F_p and Q, additionally implement
//! [`BaseField`], which adds factorization, residue-field comparison and
//! JSON scalar encoding. [`ExtensionField`] builds simple extensions
//! `F[y]/(m(y))` on top of any field and is used for residue fields of
//! irreducible polynomials.

mod extension;
mod prime;
mod rational;

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Factorization, Poly};

pub use extension::ExtensionField;
pub use prime::PrimeField;
pub use rational::Rationals;

/// A field with canonical element representatives.
///
/// Elements are plain values; all arithmetic goes through the field object so
/// runtime parameters (the prime, an extension modulus) live in one place.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Ord + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// Characteristic, 0 for Q and its extensions.
    fn characteristic(&self) -> u64;

    /// `(p, k)` with field order `p^k`, or `None` for infinite fields.
    fn finite_order(&self) -> Option<(u64, u32)>;

    /// A pseudo-random element; infinite fields draw from a small box.
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Human-readable description, e.g. `F_3` or `Q`.
    fn name(&self) -> String;

    fn fmt_elem(&self, a: &Self::Elem) -> String;

    /// Sign and magnitude for polynomial printing. Only ordered fields report
    /// negative values.
    fn fmt_signed(&self, a: &Self::Elem) -> (bool, String) {
        (false, self.fmt_elem(a))
    }

    /// Whether `fmt_elem` may print a compound expression that needs
    /// parentheses when used as a coefficient.
    fn elem_is_compound(&self, _a: &Self::Elem) -> bool {
        false
    }

    /// Monic gcd of two polynomials. Fields with coefficient growth
    /// override this with a fraction-free variant.
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        crate::poly::euclid_gcd(a, b)
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Field order as an integer, when it fits.
    fn order(&self) -> Option<u128> {
        let (p, k) = self.finite_order()?;
        (p as u128).checked_pow(k)
    }
}

/// The fields a user may pick as the base field R.
pub trait BaseField: Field {
    fn spec(&self) -> FieldSpec;

    /// Complete factorization into monic irreducibles.
    fn factor(&self, f: &Poly<Self>) -> Result<Factorization<Self>>;

    /// Decides `R[x]/(p) = R[x]/(q)` as R-algebras for monic irreducible p, q.
    fn residue_fields_isomorphic(&self, p: &Poly<Self>, q: &Poly<Self>) -> Result<bool>;

    fn elem_to_json(&self, a: &Self::Elem) -> serde_json::Value;
    fn elem_from_json(&self, v: &serde_json::Value) -> Result<Self::Elem>;
}

/// Serializable description of a base field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", try_from = "RawFieldSpec")]
pub enum FieldSpec {
    #[serde(rename = "Fp")]
    Fp { p: u64 },
    #[serde(rename = "Q")]
    Q,
}

#[derive(Deserialize)]
#[serde(tag = "type")]
enum RawFieldSpec {
    #[serde(rename = "Fp")]
    Fp { p: u64 },
    #[serde(rename = "Q")]
    Q,
}

impl TryFrom<RawFieldSpec> for FieldSpec {
    type Error = Error;

    fn try_from(raw: RawFieldSpec) -> Result<Self> {
        match raw {
            RawFieldSpec::Fp { p } => FieldSpec::prime(p),
            RawFieldSpec::Q => Ok(FieldSpec::Q),
        }
    }
}

impl FieldSpec {
    /// Validated prime-field spec.
    pub fn prime(p: u64) -> Result<Self> {
        PrimeField::new(p)?;
        Ok(FieldSpec::Fp { p })
    }

    /// `F_p` for a prime, `Q` for characteristic 0.
    pub fn from_characteristic(p: u64) -> Result<Self> {
        if p == 0 {
            Ok(FieldSpec::Q)
        } else {
            FieldSpec::prime(p)
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Fp { p } => *p,
            FieldSpec::Q => 0,
        }
    }

    pub fn name(&self) -> String {
        match self {
            FieldSpec::Fp { p } => format!("F_{p}"),
            FieldSpec::Q => "Q".into(),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Runs `$body` with `$f` bound to the concrete field named by a
/// [`FieldSpec`]. The enclosing function must return `Result<_, Error>`.
#[macro_export]
macro_rules! with_base_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            $crate::field::FieldSpec::Fp { p } => {
                let $f = $crate::field::PrimeField::new(p)?;
                $body
            }
            $crate::field::FieldSpec::Q => {
                let $f = $crate::field::Rationals;
                $body
            }
        }
    };
}

/// Value of a dynamically typed scalar.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ScalarValue {
    Fp(u64),
    Q(BigRational),
}

/// A field element tagged with its field, for callers that pick the field at
/// runtime. Equality is equality of canonical forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: FieldSpec,
    value: ScalarValue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

impl Scalar {
    pub fn fp(p: u64, v: i64) -> Result<Self> {
        let f = PrimeField::new(p)?;
        Ok(Scalar {
            field: FieldSpec::Fp { p },
            value: ScalarValue::Fp(f.from_i64(v)),
        })
    }

    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar {
            field: FieldSpec::Q,
            value: ScalarValue::Q(BigRational::new(BigInt::from(num), BigInt::from(den))),
        })
    }

    pub fn from_json(field: FieldSpec, v: &serde_json::Value) -> Result<Self> {
        let value = match field {
            FieldSpec::Fp { p } => ScalarValue::Fp(PrimeField::new(p)?.elem_from_json(v)?),
            FieldSpec::Q => ScalarValue::Q(Rationals.elem_from_json(v)?),
        };
        Ok(Scalar { field, value })
    }

    pub fn to_json(&self) -> serde_json::Value {
        match &self.value {
            ScalarValue::Fp(v) => serde_json::Value::from(*v),
            ScalarValue::Q(q) => Rationals.elem_to_json(q),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn value(&self) -> &ScalarValue {
        &self.value
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            ScalarValue::Fp(v) => write!(f, "{v}"),
            ScalarValue::Q(q) => f.write_str(&Rationals.fmt_elem(q)),
        }
    }
}

fn binary<F: Field>(
    f: &F,
    op: FieldOp,
    a: &F::Elem,
    b: Option<&F::Elem>,
) -> Result<F::Elem> {
    let need = || b.ok_or_else(|| Error::OutOfRange(format!("{op:?} needs two operands")));
    Ok(match op {
        FieldOp::Add => f.add(a, need()?),
        FieldOp::Sub => f.sub(a, need()?),
        FieldOp::Mul => f.mul(a, need()?),
        FieldOp::Div => f.div(a, need()?)?,
        FieldOp::Neg => f.neg(a),
        FieldOp::Inv => f.inv(a)?,
    })
}

/// Checked arithmetic on runtime-typed scalars.
pub fn field_arith(op: FieldOp, a: &Scalar, b: Option<&Scalar>) -> Result<Scalar> {
    if let Some(b) = b {
        if b.field != a.field {
            return Err(Error::FieldMismatch {
                left: a.field.name(),
                right: b.field.name(),
            });
        }
    }
    let value = match (&a.value, b.map(|s| &s.value)) {
        (ScalarValue::Fp(x), None) => {
            let f = PrimeField::new(a.field.characteristic())?;
            ScalarValue::Fp(binary(&f, op, x, None)?)
        }
        (ScalarValue::Fp(x), Some(ScalarValue::Fp(y))) => {
            let f = PrimeField::new(a.field.characteristic())?;
            ScalarValue::Fp(binary(&f, op, x, Some(y))?)
        }
        (ScalarValue::Q(x), None) => ScalarValue::Q(binary(&Rationals, op, x, None)?),
        (ScalarValue::Q(x), Some(ScalarValue::Q(y))) => {
            ScalarValue::Q(binary(&Rationals, op, x, Some(y))?)
        }
        _ => {
            return Err(Error::FieldMismatch {
                left: a.field.name(),
                right: b.map(|s| s.field.name()).unwrap_or_default(),
            })
        }
    };
    Ok(Scalar {
        field: a.field,
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let two = Scalar::fp(5, 2).unwrap();
        assert_eq!(field_arith(FieldOp::Inv, &two, None).unwrap(), Scalar::fp(5, 3).unwrap());

        let a = Scalar::fp(3, 2).unwrap();
        assert_eq!(
            field_arith(FieldOp::Add, &a, Some(&a)).unwrap(),
            Scalar::fp(3, 1).unwrap()
        );

        let half = Scalar::rational(1, 2).unwrap();
        let three_quarters = Scalar::rational(3, 4).unwrap();
        assert_eq!(
            field_arith(FieldOp::Div, &half, Some(&three_quarters)).unwrap(),
            Scalar::rational(2, 3).unwrap()
        );
    }

    #[test]
    fn errors() {
        let zero = Scalar::fp(7, 0).unwrap();
        assert_eq!(field_arith(FieldOp::Inv, &zero, None), Err(Error::DivisionByZero));
        let a = Scalar::fp(3, 1).unwrap();
        let b = Scalar::fp(5, 1).unwrap();
        assert!(matches!(
            field_arith(FieldOp::Mul, &a, Some(&b)),
            Err(Error::FieldMismatch { .. })
        ));
        let q = Scalar::rational(1, 1).unwrap();
        assert!(matches!(
            field_arith(FieldOp::Add, &a, Some(&q)),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn spec_json() {
        let s: FieldSpec = serde_json::from_str(r#"{"type":"Fp","p":3}"#).unwrap();
        assert_eq!(s, FieldSpec::Fp { p: 3 });
        let q: FieldSpec = serde_json::from_str(r#"{"type":"Q"}"#).unwrap();
        assert_eq!(q, FieldSpec::Q);
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"type":"Fp","p":3}"#);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"type":"Fp","p":4}"#).is_err());

        let x = Scalar::from_json(FieldSpec::Q, &serde_json::json!("-3/6")).unwrap();
        assert_eq!(x.to_json(), serde_json::json!("-1/2"));
        let y = Scalar::from_json(FieldSpec::Fp { p: 5 }, &serde_json::json!(-1)).unwrap();
        assert_eq!(y.to_json(), serde_json::json!(4));
    }
}
