//! Exact linear algebra for centralizer matrix algebras.
//!
//! Given a square matrix `c` over a prime field or Q, the centralizer
//! `S_n(c, F) = { a : ac = ca }` is determined up to Morita and stable
//! equivalence by the elementary divisors of `c`. This crate computes those
//! divisors, decides the S-equivalence relation between two divisor
//! multisets, and verifies the block invariants (dimensions, simple counts,
//! global and dominant dimensions) of the basic algebras involved.

pub mod centralizer;
pub mod error;
pub mod field;
pub mod homlab;
pub mod json;
pub mod matrix;
pub mod oracle;
pub mod perm;
pub mod poly;
pub mod sequiv;

pub use error::{Error, Result};
pub use field::{BaseField, ExtensionField, Field, FieldSpec, PrimeField, Rationals, Scalar};
pub use poly::{Factorization, Poly};
