use std::fmt;
use std::sync::Arc;

use super::{poly, BaseField, Field, FieldError};

/// Element of GF(q^N): N coordinates over GF(q), low degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtElem(Vec<u8>);

impl ExtElem {
    pub fn coeffs(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// GF(q^N) as GF(q)[x] / (modulus), modulus monic irreducible of degree N.
#[derive(Clone)]
pub struct ExtField(Arc<Inner>);

struct Inner {
    base: BaseField,
    degree: usize,
    modulus: Vec<u8>,
    // row j: coordinates of (x^j)^q
    frobenius: Vec<Vec<u8>>,
}

impl ExtField {
    /// Extension of degree `n` using the lowest monic irreducible over GF(q).
    pub fn new(base: BaseField, n: usize) -> Result<Self, FieldError> {
        if n == 0 {
            return Err(FieldError::BadModulus("extension degree must be >= 1".into()));
        }
        let elems: Vec<u8> = base.elements().collect();
        let modulus = poly::first_irreducible(&base, n, &elems);
        Ok(Self::build(base, modulus))
    }

    pub fn with_modulus(base: BaseField, modulus: &[u8]) -> Result<Self, FieldError> {
        let n = modulus.len().saturating_sub(1);
        if n == 0 {
            return Err(FieldError::BadModulus("modulus must have degree >= 1".into()));
        }
        if modulus.last() != Some(&1) {
            return Err(FieldError::BadModulus("modulus must be monic".into()));
        }
        if modulus.iter().any(|c| !base.contains(c)) {
            return Err(FieldError::BadModulus(format!(
                "coefficient out of range for {}",
                base.describe()
            )));
        }
        if !poly::is_irreducible(&base, modulus) {
            return Err(FieldError::Reducible(modulus.to_vec()));
        }
        Ok(Self::build(base, modulus.to_vec()))
    }

    fn build(base: BaseField, modulus: Vec<u8>) -> Self {
        let degree = modulus.len() - 1;
        let q = base.order() as u64;
        let xq = poly::powmod(&base, &[0, 1], q, &modulus);
        let mut frobenius = Vec::with_capacity(degree);
        let mut acc = vec![1u8];
        for _ in 0..degree {
            let mut row = acc.clone();
            row.resize(degree, 0);
            frobenius.push(row);
            acc = poly::mulmod(&base, &acc, &xq, &modulus);
        }
        Self(Arc::new(Inner {
            base,
            degree,
            modulus,
            frobenius,
        }))
    }

    pub fn modulus(&self) -> &[u8] {
        &self.0.modulus
    }

    /// The i-th polynomial-basis vector x^i.
    pub fn basis(&self, i: usize) -> ExtElem {
        let mut v = vec![0u8; self.0.degree];
        v[i] = 1;
        ExtElem(v)
    }

    /// x^(q^i). Uses the precomputed GF(q)-linear matrix of x -> x^q.
    pub fn frobenius(&self, x: &ExtElem, i: usize) -> ExtElem {
        let n = self.0.degree;
        let f = &self.0.base;
        let mut cur = x.0.clone();
        for _ in 0..(i % n) {
            let mut next = vec![0u8; n];
            for (j, c) in cur.iter().enumerate() {
                if *c == 0 {
                    continue;
                }
                for (k, r) in self.0.frobenius[j].iter().enumerate() {
                    next[k] = f.add(&next[k], &f.mul(c, r));
                }
            }
            cur = next;
        }
        ExtElem(cur)
    }

    /// Multiplication by a GF(q) scalar.
    pub fn scale(&self, c: u8, a: &ExtElem) -> ExtElem {
        let f = &self.0.base;
        ExtElem(a.0.iter().map(|x| f.mul(&c, x)).collect())
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.0.base == other.0.base && self.0.modulus == other.0.modulus
    }
}

impl Eq for ExtField {}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}) mod {:?}",
            self.0.base.order(),
            self.0.degree,
            self.0.modulus
        )
    }
}

impl Field for ExtField {
    type Elem = ExtElem;

    fn zero(&self) -> ExtElem {
        ExtElem(vec![0; self.0.degree])
    }

    fn one(&self) -> ExtElem {
        self.basis(0)
    }

    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = &self.0.base;
        ExtElem(a.0.iter().zip(&b.0).map(|(x, y)| f.add(x, y)).collect())
    }

    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = &self.0.base;
        ExtElem(a.0.iter().zip(&b.0).map(|(x, y)| f.sub(x, y)).collect())
    }

    fn neg(&self, a: &ExtElem) -> ExtElem {
        let f = &self.0.base;
        ExtElem(a.0.iter().map(|x| f.neg(x)).collect())
    }

    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = &self.0.base;
        let n = self.0.degree;
        let mut prod = vec![0u8; 2 * n - 1];
        for (i, x) in a.0.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                prod[i + j] = f.add(&prod[i + j], &f.mul(x, y));
            }
        }
        let m = &self.0.modulus;
        for top in (n..2 * n - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            let shift = top - n;
            for j in 0..n {
                prod[shift + j] = f.sub(&prod[shift + j], &f.mul(&c, &m[j]));
            }
            prod[top] = 0;
        }
        prod.truncate(n);
        ExtElem(prod)
    }

    fn inv(&self, a: &ExtElem) -> Result<ExtElem, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::ZeroInverse);
        }
        let f = &self.0.base;
        let mut v = poly::inv_mod(f, &a.0, &self.0.modulus)
            .expect("nonzero elements are invertible modulo an irreducible");
        v.resize(self.0.degree, 0);
        Ok(ExtElem(v))
    }

    fn is_zero(&self, a: &ExtElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    fn base(&self) -> &BaseField {
        &self.0.base
    }

    fn degree(&self) -> usize {
        self.0.degree
    }

    fn from_base(&self, c: u8) -> ExtElem {
        let mut v = vec![0u8; self.0.degree];
        v[0] = c;
        ExtElem(v)
    }

    fn coordinates(&self, a: &ExtElem) -> Vec<u8> {
        a.0.clone()
    }

    fn from_coordinates(&self, coords: &[u8]) -> Result<ExtElem, FieldError> {
        if coords.len() != self.0.degree {
            return Err(FieldError::Length {
                expected: self.0.degree,
                got: coords.len(),
            });
        }
        if coords.iter().any(|c| !self.0.base.contains(c)) {
            return Err(FieldError::Mismatch {
                field: self.describe(),
            });
        }
        Ok(ExtElem(coords.to_vec()))
    }

    fn contains(&self, a: &ExtElem) -> bool {
        a.0.len() == self.0.degree && a.0.iter().all(|c| self.0.base.contains(c))
    }

    fn describe(&self) -> String {
        format!("GF({}^{})", self.0.base.order(), self.0.degree)
    }
}
