use std::fmt;
use std::sync::Arc;

use super::{poly, prime_power, Field, FieldError};

/// GF(q), q = p^m <= 256, with full addition and multiplication tables.
///
/// An element is the `u8` whose base-p digits are its polynomial-basis
/// coefficients over GF(p), constant term least significant. So in GF(4)
/// with modulus x^2 + x + 1 the generator x is `2` and x + 1 is `3`.
#[derive(Clone)]
pub struct BaseField(Arc<Tables>);

struct Tables {
    p: usize,
    m: u32,
    q: usize,
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl BaseField {
    /// GF(q) with the lowest irreducible modulus of degree m over GF(p).
    pub fn new(q: usize) -> Result<Self, FieldError> {
        if q > 256 {
            return Err(FieldError::TooLarge(q));
        }
        let (p, m) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        if m == 1 {
            return Ok(Self::build(p, vec![0, 1]));
        }
        let fp = Self::build(p, vec![0, 1]);
        let elems: Vec<u8> = (0..p as u8).collect();
        let modulus = poly::first_irreducible(&fp, m as usize, &elems);
        Ok(Self::build(p, modulus))
    }

    /// GF(p^m) for an explicit monic modulus over GF(p), low degree first.
    pub fn with_modulus(p: usize, modulus: &[u8]) -> Result<Self, FieldError> {
        if prime_power(p) != Some((p, 1)) {
            return Err(FieldError::BadModulus(format!("characteristic {p} is not prime")));
        }
        let m = modulus.len().saturating_sub(1);
        if m == 0 {
            return Err(FieldError::BadModulus("modulus must have degree >= 1".into()));
        }
        if modulus.last() != Some(&1) {
            return Err(FieldError::BadModulus("modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c as usize >= p) {
            return Err(FieldError::BadModulus(format!("coefficient out of range for GF({p})")));
        }
        let q = p.checked_pow(m as u32).filter(|&q| q <= 256).ok_or(FieldError::TooLarge(
            p.saturating_pow(m as u32),
        ))?;
        debug_assert!(q <= 256);
        let fp = Self::build(p, vec![0, 1]);
        if m > 1 && !poly::is_irreducible(&fp, modulus) {
            return Err(FieldError::Reducible(modulus.to_vec()));
        }
        Ok(Self::build(p, modulus.to_vec()))
    }

    fn build(p: usize, modulus: Vec<u8>) -> Self {
        let m = (modulus.len() - 1) as u32;
        let q = p.pow(m);
        let digits = |a: usize| -> Vec<usize> {
            let mut a = a;
            (0..m)
                .map(|_| {
                    let d = a % p;
                    a /= p;
                    d
                })
                .collect()
        };
        let pack = |ds: &[usize]| -> u8 { ds.iter().rev().fold(0, |acc, &d| acc * p + d) as u8 };

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = pack(&s);

                let mut prod = vec![0usize; 2 * m as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for top in (m as usize..prod.len()).rev() {
                    let c = prod[top];
                    if c == 0 {
                        continue;
                    }
                    let shift = top - m as usize;
                    for (j, &mj) in modulus.iter().enumerate() {
                        prod[shift + j] = (prod[shift + j] + (p - c) * mj as usize) % p;
                    }
                }
                mul[a * q + b] = pack(&prod[..m as usize]);
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).expect("field has inverses") as u8
                }
            })
            .collect();
        Self(Arc::new(Tables {
            p,
            m,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        }))
    }

    pub fn order(&self) -> usize {
        self.0.q
    }

    pub fn characteristic(&self) -> usize {
        self.0.p
    }

    /// m in q = p^m.
    pub fn prime_degree(&self) -> u32 {
        self.0.m
    }

    /// Modulus over GF(p), monic, low degree first.
    pub fn modulus(&self) -> &[u8] {
        &self.0.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.0.q).map(|a| a as u8)
    }

    /// The element with integer code `i` (reduced mod q).
    pub fn elem(&self, i: usize) -> u8 {
        (i % self.0.q) as u8
    }

    #[inline]
    fn idx(&self, a: u8, b: u8) -> usize {
        a as usize * self.0.q + b as usize
    }
}

impl PartialEq for BaseField {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.modulus == other.0.modulus
    }
}

impl Eq for BaseField {}

impl fmt::Debug for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) mod {:?}", self.0.q, self.0.modulus)
    }
}

impl Field for BaseField {
    type Elem = u8;

    fn zero(&self) -> u8 {
        0
    }

    fn one(&self) -> u8 {
        1
    }

    #[inline]
    fn add(&self, a: &u8, b: &u8) -> u8 {
        self.0.add[self.idx(*a, *b)]
    }

    #[inline]
    fn sub(&self, a: &u8, b: &u8) -> u8 {
        self.0.add[self.idx(*a, self.0.neg[*b as usize])]
    }

    fn neg(&self, a: &u8) -> u8 {
        self.0.neg[*a as usize]
    }

    #[inline]
    fn mul(&self, a: &u8, b: &u8) -> u8 {
        self.0.mul[self.idx(*a, *b)]
    }

    fn inv(&self, a: &u8) -> Result<u8, FieldError> {
        if *a == 0 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.0.inv[*a as usize])
    }

    fn is_zero(&self, a: &u8) -> bool {
        *a == 0
    }

    fn base(&self) -> &BaseField {
        self
    }

    fn degree(&self) -> usize {
        1
    }

    fn from_base(&self, c: u8) -> u8 {
        c
    }

    fn coordinates(&self, a: &u8) -> Vec<u8> {
        vec![*a]
    }

    fn from_coordinates(&self, coords: &[u8]) -> Result<u8, FieldError> {
        match coords {
            [c] if (*c as usize) < self.0.q => Ok(*c),
            [_] => Err(FieldError::Mismatch {
                field: self.describe(),
            }),
            _ => Err(FieldError::Length {
                expected: 1,
                got: coords.len(),
            }),
        }
    }

    fn contains(&self, a: &u8) -> bool {
        (*a as usize) < self.0.q
    }

    fn describe(&self) -> String {
        format!("GF({})", self.0.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_generator_relation() {
        let f = BaseField::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // omega = x = 2, omega^2 = omega + 1 = 3
        assert_eq!(f.mul(&2, &2), 3);
        assert_eq!(f.add(&2, &1), 3);
    }

    #[test]
    fn identities() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = BaseField::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(&a, &0), a);
                assert_eq!(f.mul(&a, &1), a);
                assert_eq!(f.sub(&a, &a), 0);
            }
        }
    }

    #[test]
    fn gf25_inverses_exhaustive() {
        let f = BaseField::new(25).unwrap();
        let mut count = 0;
        for a in f.elements().filter(|&a| a != 0) {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(f.inv(&0), Err(FieldError::ZeroInverse));
    }

    #[test]
    fn axioms_exhaustive_small_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25] {
            let f = BaseField::new(q).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.add(&a, &b), f.add(&b, &a));
                    assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                    for c in f.elements() {
                        assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
                        assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                        assert_eq!(
                            f.mul(&a, &f.add(&b, &c)),
                            f.add(&f.mul(&a, &b), &f.mul(&a, &c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn default_moduli_are_lowest() {
        assert_eq!(BaseField::new(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(BaseField::new(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(BaseField::new(16).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(BaseField::new(6).unwrap_err(), FieldError::NotPrimePower(6));
        assert_eq!(BaseField::new(512).unwrap_err(), FieldError::TooLarge(512));
        // x^2 + 1 = (x+1)^2 over GF(2)
        assert_eq!(
            BaseField::with_modulus(2, &[1, 0, 1]).unwrap_err(),
            FieldError::Reducible(vec![1, 0, 1])
        );
        assert!(BaseField::with_modulus(2, &[1, 1, 0]).is_err());
        assert!(BaseField::with_modulus(2, &[1, 1, 1]).is_ok());
    }

    #[test]
    fn mismatched_operands_are_rejected() {
        let f = BaseField::new(5).unwrap();
        assert!(matches!(
            f.checked(&3, &7, |f, a, b| f.mul(a, b)),
            Err(FieldError::Mismatch { .. })
        ));
        assert_eq!(f.checked(&3, &4, |f, a, b| f.mul(a, b)), Ok(2));
    }
}
