//! Dense univariate polynomials over a [`Field`], low degree first.
//!
//! Only what modulus selection and extension-field inversion need: the zero
//! polynomial is the empty vector and all results are trimmed.

use super::Field;

pub fn trim<F: Field>(f: &F, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

pub fn degree<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let len = a.len().max(b.len());
    let zero = f.zero();
    let out = (0..len)
        .map(|i| f.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(f, out)
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

/// Quotient and remainder; `divisor` must be nonzero.
pub fn div_rem<F: Field>(
    f: &F,
    a: &[F::Elem],
    divisor: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let dd = degree(divisor).expect("division by the zero polynomial");
    let lead_inv = f.inv(&divisor[dd]).expect("trimmed divisor has nonzero lead");
    let mut rem: Vec<F::Elem> = trim(f, a.to_vec());
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![f.zero(); rem.len() - dd];
    while rem.len() > dd {
        let shift = rem.len() - 1 - dd;
        let c = f.mul(rem.last().unwrap(), &lead_inv);
        for (j, dj) in divisor.iter().enumerate() {
            rem[shift + j] = f.sub(&rem[shift + j], &f.mul(&c, dj));
        }
        quot[shift] = c;
        rem.pop();
        rem = trim(f, rem);
    }
    (trim(f, quot), rem)
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    div_rem(f, a, m).1
}

pub fn mulmod<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod<F: Field>(f: &F, a: &[F::Elem], mut e: u64, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut acc = rem(f, &[f.one()], m);
    let mut sq = rem(f, a, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &sq, m);
        }
        sq = mulmod(f, &sq, &sq, m);
        e >>= 1;
    }
    acc
}

pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut a = trim(f, a.to_vec());
    let mut b = trim(f, b.to_vec());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    a
}

/// Inverse of `a` modulo `m`, if `gcd(a, m)` is a unit.
pub fn inv_mod<F: Field>(f: &F, a: &[F::Elem], m: &[F::Elem]) -> Option<Vec<F::Elem>> {
    // extended Euclid tracking only the coefficient of `a`
    let (mut r0, mut r1) = (trim(f, m.to_vec()), rem(f, a, m));
    let (mut s0, mut s1): (Vec<F::Elem>, Vec<F::Elem>) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = div_rem(f, &r0, &r1);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.len() != 1 {
        return None;
    }
    let c = f.inv(&r0[0]).ok()?;
    Some(rem(f, &mul(f, &s0, &[c]), m))
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// x^(q^i) mod m by repeated q-th powering.
fn x_pow_q_iter<F: Field>(f: &F, m: &[F::Elem], i: usize) -> Vec<F::Elem> {
    let q = field_order(f);
    let mut y = rem(f, &[f.zero(), f.one()], m);
    for _ in 0..i {
        y = powmod(f, &y, q, m);
    }
    y
}

fn field_order<F: Field>(f: &F) -> u64 {
    (f.base().order() as u64).pow(f.degree() as u32)
}

/// Rabin's test: `m` of degree n is irreducible over `f` iff
/// x^(q^n) = x mod m and gcd(x^(q^(n/r)) - x, m) = 1 for every prime r | n.
pub fn is_irreducible<F: Field>(f: &F, m: &[F::Elem]) -> bool {
    let m = trim(f, m.to_vec());
    let Some(n) = degree(&m) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![f.zero(), f.one()];
    for r in prime_factors(n) {
        let h = sub(f, &x_pow_q_iter(f, &m, n / r), &x);
        if degree(&gcd(f, &h, &m)) != Some(0) {
            return false;
        }
    }
    sub(f, &x_pow_q_iter(f, &m, n), &x).is_empty()
}

/// Lowest monic irreducible of the given degree, ordering candidates by the
/// integer whose base-|F| digits are the non-leading coefficients (constant
/// term least significant).
pub fn first_irreducible<F: Field>(f: &F, deg: usize, elems: &[F::Elem]) -> Vec<F::Elem> {
    let q = elems.len();
    let mut digits = vec![0usize; deg];
    loop {
        let mut cand: Vec<F::Elem> = digits.iter().map(|&d| elems[d].clone()).collect();
        cand.push(f.one());
        if is_irreducible(f, &cand) {
            return cand;
        }
        // increment little-endian counter
        let mut i = 0;
        loop {
            assert!(i < deg, "an irreducible of every degree exists");
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}
