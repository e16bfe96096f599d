//! Finite fields GF(q), q = p^m <= 256, and extensions GF(q^N) in polynomial basis.
//!
//! Everything above this module is written against the [`Field`] trait so the
//! canonical code runs unchanged over the base field (plain layered codes) and
//! over an extension field (the linearized-polynomial outer code).

mod base;
mod ext;
mod linearized;
pub mod poly;

use std::fmt::Debug;
use std::hash::Hash;

use rand::Rng;
use thiserror::Error;

pub use base::BaseField;
pub use ext::{ExtElem, ExtField};
pub use linearized::{gfq_rank, moore_solve, LinearizedPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero: zero has no inverse")]
    ZeroInverse,
    #[error("operand is not an element of {field}")]
    Mismatch { field: String },
    #[error("q = {0} is not a prime power")]
    NotPrimePower(usize),
    #[error("q = {0} is unsupported (fields must have q <= 256)")]
    TooLarge(usize),
    #[error("modulus {0:?} is reducible")]
    Reducible(Vec<u8>),
    #[error("malformed modulus: {0}")]
    BadModulus(String),
    #[error("Moore system is singular: point {index} is GF(q)-linearly dependent on points 0..{index}")]
    DependentPoints { index: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    Length { expected: usize, got: usize },
    #[error("cannot decode symbol bytes: {0}")]
    Decode(String),
}

/// A finite field with an explicit element type.
///
/// Implementations are immutable after construction and cheap to clone
/// (tables live behind an `Arc`).
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// The subfield GF(q) over which coordinates are taken.
    fn base(&self) -> &BaseField;

    /// Dimension over [`Field::base`]; 1 for the base field itself.
    fn degree(&self) -> usize;

    /// Embeds a GF(q) element.
    fn from_base(&self, c: u8) -> Self::Elem;

    /// Coordinates over GF(q), low degree first, length [`Field::degree`].
    fn coordinates(&self, a: &Self::Elem) -> Vec<u8>;

    fn from_coordinates(&self, coords: &[u8]) -> Result<Self::Elem, FieldError>;

    fn contains(&self, a: &Self::Elem) -> bool;

    fn describe(&self) -> String;

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        let q = self.base().order();
        let coords: Vec<u8> = (0..self.degree())
            .map(|_| rng.random_range(0..q) as u8)
            .collect();
        self.from_coordinates(&coords).expect("random coordinates are in range")
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut sq = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            sq = self.mul(&sq, &sq);
            e >>= 1;
        }
        acc
    }

    /// Bytes per serialized element: one byte per GF(q) coordinate.
    fn symbol_bytes(&self) -> usize {
        self.degree()
    }

    fn write_elem(&self, a: &Self::Elem, out: &mut Vec<u8>) {
        out.extend(self.coordinates(a));
    }

    fn read_elem(&self, bytes: &[u8]) -> Result<Self::Elem, FieldError> {
        if bytes.len() != self.degree() {
            return Err(FieldError::Decode(format!(
                "expected {} bytes, got {}",
                self.degree(),
                bytes.len()
            )));
        }
        self.from_coordinates(bytes)
            .map_err(|_| FieldError::Decode(format!("digit out of range for {}", self.describe())))
    }

    /// Membership-checked binary operation, for inputs of unknown provenance.
    fn checked<T>(
        &self,
        a: &Self::Elem,
        b: &Self::Elem,
        op: impl FnOnce(&Self, &Self::Elem, &Self::Elem) -> T,
    ) -> Result<T, FieldError> {
        for x in [a, b] {
            if !self.contains(x) {
                return Err(FieldError::Mismatch {
                    field: self.describe(),
                });
            }
        }
        Ok(op(self, a, b))
    }
}

/// Splits `q` into `(p, m)` with `q = p^m`, `p` prime.
pub fn prime_power(q: usize) -> Option<(usize, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Smallest supported field order strictly greater than `bound`.
pub fn min_field_order_above(bound: usize) -> Option<usize> {
    (bound + 1..=256).find(|&q| prime_power(q).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(25), Some((5, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(min_field_order_above(3), Some(4));
        assert_eq!(min_field_order_above(5), Some(7));
        assert_eq!(min_field_order_above(9), Some(11));
        assert_eq!(min_field_order_above(256), None);
    }
}
