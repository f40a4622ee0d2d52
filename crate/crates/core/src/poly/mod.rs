//! Dense univariate polynomials over a [`Field`], with factorization over
//! F_p (complete) and Q (linear factors plus residual degree at most four).

mod finite;
mod rational;

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{BaseField, Field};

pub use finite::{distinct_degree_split, factor_finite, is_irreducible_finite};
pub use rational::{factor_rational, rational_gcd, rational_residue_iso};

/// A polynomial stored low-to-high with no trailing zeros.
#[derive(Clone)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> std::hash::Hash for Poly<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

/// Canonical order: by degree, then coefficients from the constant term up.
impl<F: Field> Ord for Poly<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl<F: Field> PartialOrd for Poly<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn trim<F: Field>(field: &F, c: &mut Vec<F::Elem>) {
    while c.last().is_some_and(|x| field.is_zero(x)) {
        c.pop();
    }
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        trim(&field, &mut coeffs);
        Poly { field, coeffs }
    }

    pub fn from_i64s(field: F, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&v| field.from_i64(v)).collect();
        Poly::new(field, c)
    }

    pub fn zero(field: F) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Poly {
            field,
            coeffs: vec![one],
        }
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Poly::new(field, vec![c])
    }

    pub fn x(field: F) -> Self {
        let c = vec![field.zero(), field.one()];
        Poly { field, coeffs: c }
    }

    /// `c * x^deg`.
    pub fn monomial(field: F, c: F::Elem, deg: usize) -> Self {
        let mut v = vec![field.zero(); deg + 1];
        v[deg] = c;
        Poly::new(field, v)
    }

    /// `x - a`.
    pub fn linear(field: F, a: &F::Elem) -> Self {
        let c = vec![field.neg(a), field.one()];
        Poly { field, coeffs: c }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| self.field.is_one(c))
    }

    /// Scaled to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Poly::zero(self.field.clone());
        }
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(self.field == other.field);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = f.zero();
        let c = (0..n)
            .map(|i| {
                f.add(
                    self.coeffs.get(i).unwrap_or(&zero),
                    other.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        Poly::new(f.clone(), c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert!(self.field == other.field);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = f.zero();
        let c = (0..n)
            .map(|i| {
                f.sub(
                    self.coeffs.get(i).unwrap_or(&zero),
                    other.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        Poly::new(f.clone(), c)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.neg(a)).collect();
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert!(self.field == other.field);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut c = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = f.mul(a, b);
                c[i + j] = f.add(&c[i + j], &t);
            }
        }
        Poly::new(f.clone(), c)
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.field.zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Poly {
            field: self.field.clone(),
            coeffs: c,
        }
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Quotient and remainder with `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        debug_assert!(self.field == d.field);
        let f = &self.field;
        let Some(dd) = d.degree() else {
            return Err(Error::DivisionByZero);
        };
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f.clone()), self.clone()));
        }
        let inv_lc = f.inv(d.lc().expect("nonzero"))?;
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if f.is_zero(&r[i]) {
                continue;
            }
            let c = f.mul(&r[i], &inv_lc);
            for (j, dj) in d.coeffs.iter().enumerate() {
                let t = f.mul(&c, dj);
                r[i - dd + j] = f.sub(&r[i - dd + j], &t);
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(f.clone(), q), Poly::new(f.clone(), r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    /// Quotient when `d` is known to divide `self`.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        match other.rem(self) {
            Ok(r) => r.is_zero(),
            Err(_) => other.is_zero(),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        F::poly_gcd(self, other)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field.clone());
        }
        self.mul(other).div_exact(&self.gcd(other)).monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| f.mul(a, &f.from_i64(i as i64)))
            .collect();
        Poly::new(f.clone(), c)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u128, m: &Self) -> Result<Self> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(self.field.clone()).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// `self(g)`.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs.iter().rev().fold(Poly::zero(self.field.clone()), |acc, c| {
            acc.mul(g).add(&Poly::constant(self.field.clone(), c.clone()))
        })
    }

    /// Squarefree decomposition of a monic polynomial: pairwise coprime
    /// squarefree `g_i` with `f = prod g_i^{m_i}`. Finite characteristic is
    /// handled by extracting p-th roots, which requires a perfect field.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        if fp.is_zero() {
            let root = pth_root(&f);
            let p = self.field.characteristic() as usize;
            for (g, m) in root.squarefree_decomposition() {
                out.push((g, m * p));
            }
            return out;
        }
        let mut c = f.gcd(&fp);
        let mut w = f.div_exact(&c);
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.div_exact(&y);
            if !fac.is_one() {
                out.push((fac.monic(), i));
            }
            w = y;
            c = c.div_exact(&w);
            i += 1;
        }
        if !c.is_one() {
            // in characteristic p what is left is a p-th power
            let root = pth_root(&c);
            let p = self.field.characteristic() as usize;
            for (g, m) in root.squarefree_decomposition() {
                out.push((g, m * p));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// The radical: product of the distinct monic squarefree parts.
    pub fn squarefree_part(&self) -> Self {
        self.squarefree_decomposition()
            .into_iter()
            .fold(Poly::one(self.field.clone()), |acc, (g, _)| acc.mul(&g))
    }
}

/// Inverse Frobenius on a polynomial whose exponents are all multiples of p.
fn pth_root<F: Field>(f: &Poly<F>) -> Poly<F> {
    let field = f.field();
    let p = field.characteristic() as usize;
    let (_, k) = field.finite_order().expect("p-th roots need a finite field");
    // a -> a^{p^{k-1}} inverts a -> a^p on F_{p^k}
    let e = (p as u128).pow(k - 1);
    let c = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|a| field.pow(a, e))
        .collect();
    Poly::new(field.clone(), c)
}

/// Plain Euclidean algorithm, normalizing each remainder to be monic.
pub fn euclid_gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let mut r0 = a.monic();
    let mut r1 = b.monic();
    while !r1.is_zero() {
        let r = r0.rem(&r1).expect("nonzero").monic();
        r0 = r1;
        r1 = r;
    }
    r0
}

/// Extended gcd: `(g, s, t)` with `g = s a + t b` and `g` monic.
pub fn ext_gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> (Poly<F>, Poly<F>, Poly<F>) {
    let field = a.field().clone();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(field.clone()), Poly::zero(field.clone()));
    let (mut t0, mut t1) = (Poly::zero(field.clone()), Poly::one(field.clone()));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1).expect("nonzero");
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    match r0.lc() {
        None => (r0, s0, t0),
        Some(lc) => {
            let inv = field.inv(lc).expect("nonzero");
            (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
        }
    }
}

/// Renders coefficients as `x^3 + 2x + 1` in the given variable.
pub fn format_coeffs<F: Field>(field: &F, coeffs: &[F::Elem], var: char) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if field.is_zero(c) {
            continue;
        }
        let (neg, mag) = field.fmt_signed(c);
        let compound = field.elem_is_compound(c);
        let is_one = !compound && mag == "1";
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coeff = if compound { format!("({mag})") } else { mag };
        match i {
            0 => out.push_str(&coeff),
            1 if is_one => out.push(var),
            1 => out.push_str(&format!("{coeff}{var}")),
            _ if is_one => out.push_str(&format!("{var}^{i}")),
            _ => out.push_str(&format!("{coeff}{var}^{i}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_coeffs(&self.field, &self.coeffs, 'x'))
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field.name(), self)
    }
}

/// `unit * prod irr^mult` with monic irreducible factors in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<F: Field> {
    pub unit: F::Elem,
    pub factors: Vec<(Poly<F>, usize)>,
}

impl<F: Field> Factorization<F> {
    /// Builds a factorization, merging repeated irreducibles and sorting.
    pub fn from_parts(unit: F::Elem, parts: impl IntoIterator<Item = (Poly<F>, usize)>) -> Self {
        let mut factors: Vec<(Poly<F>, usize)> = Vec::new();
        for (g, m) in parts {
            match factors.iter_mut().find(|(h, _)| *h == g) {
                Some(entry) => entry.1 += m,
                None => factors.push((g, m)),
            }
        }
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        Factorization { unit, factors }
    }

    /// Multiplies the factorization back out.
    pub fn expand(&self, field: &F) -> Poly<F> {
        self.factors
            .iter()
            .fold(Poly::constant(field.clone(), self.unit.clone()), |acc, (g, m)| {
                acc.mul(&g.pow(*m))
            })
    }
}

/// Factorization over a user-facing base field.
pub fn factor<F: BaseField>(f: &Poly<F>) -> Result<Factorization<F>> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    f.field().factor(f)
}

/// Whether every irreducible factor of `f` has only simple roots.
pub fn is_separable<F: BaseField>(f: &Poly<F>) -> Result<bool> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if f.field().characteristic() == 0 {
        return Ok(true);
    }
    let fac = factor(f)?;
    Ok(fac.factors.iter().all(|(q, _)| q.gcd(&q.derivative()).is_one()))
}

/// Irreducible polynomials all have simple roots exactly when `q' != 0`.
pub fn irreducible_is_separable<F: Field>(q: &Poly<F>) -> bool {
    q.gcd(&q.derivative()).is_one()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    DivRem,
    Gcd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyArith<F: Field> {
    Single(Poly<F>),
    Pair(Poly<F>, Poly<F>),
}

/// Field-checked polynomial arithmetic.
pub fn poly_arith<F: Field>(op: PolyOp, a: &Poly<F>, b: &Poly<F>) -> Result<PolyArith<F>> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch {
            left: a.field().name(),
            right: b.field().name(),
        });
    }
    Ok(match op {
        PolyOp::Add => PolyArith::Single(a.add(b)),
        PolyOp::Mul => PolyArith::Single(a.mul(b)),
        PolyOp::DivRem => {
            let (q, r) = a.divrem(b)?;
            PolyArith::Pair(q, r)
        }
        PolyOp::Gcd => PolyArith::Single(a.gcd(b)),
    })
}
