//! Cyclic-shift orbits of t-subsets of Z_n and the thread patterns built on them.
//!
//! Rows are 0-based throughout: the cell of MDS coordinate `i` in thread `τ`
//! of a pattern with footprint `π` is `(i, (π[i] + τ) mod n)`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

pub fn gcd(a: usize, b: usize) -> usize {
    a.gcd(&b)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Möbius function by trial division.
pub fn mobius(mut n: usize) -> i32 {
    assert!(n > 0);
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Class counts of t-subsets of Z_n under rotation, grouped by orbit size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCensus {
    pub n: usize,
    pub t: usize,
    /// n / g = gcd(n, t); every orbit size is a multiple of g.
    pub g: usize,
    /// orbit size g·r -> E(g·r)
    pub classes: BTreeMap<usize, BigUint>,
    /// Total number of classes.
    pub total: BigUint,
    /// L = sum_r r·E(g·r), the number of layers per repetition copy.
    pub layers: BigUint,
}

impl OrbitCensus {
    /// sum over sizes of size·E(size); equals C(n, t).
    pub fn subsets_covered(&self) -> BigUint {
        self.classes.iter().map(|(size, e)| e * *size).sum()
    }
}

/// Möbius-inversion census:
/// E(gr) = (1/gr) sum_{s | r} μ(s) C(gr/s, t·gr/(n·s)).
pub fn count_classes(n: usize, t: usize) -> OrbitCensus {
    assert!(1 <= t && t <= n, "need 1 <= t <= n");
    let g = n / gcd(n, t);
    let mut classes = BTreeMap::new();
    for r in divisors(n / g) {
        let size = g * r;
        let mut acc = BigInt::zero();
        for s in divisors(r) {
            let mu = mobius(s);
            if mu == 0 {
                continue;
            }
            let c = BigInt::from(binomial(size / s, t * size / (n * s)));
            if mu > 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        let (e, rem) = acc.div_rem(&BigInt::from(size));
        assert!(rem.is_zero(), "orbit count must be integral");
        let e = e.to_biguint().expect("orbit count is nonnegative");
        if !e.is_zero() {
            classes.insert(size, e);
        }
    }
    let total = classes.values().sum();
    let layers = classes.iter().map(|(size, e)| e * (size / g)).sum();
    OrbitCensus {
        n,
        t,
        g,
        classes,
        total,
        layers,
    }
}

/// One orbit representative with its period (orbit size) and layer multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub index: usize,
    /// Strictly ascending; lexicographically least member of its orbit.
    pub footprint: Vec<usize>,
    /// Least positive shift mapping the footprint onto itself; divides n.
    pub period: usize,
    /// period / g: how many times the pattern's layer is repeated.
    pub omega: usize,
}

impl Pattern {
    pub fn cells(&self, tau: usize, n: usize) -> Vec<(usize, usize)> {
        pattern_cells(&self.footprint, tau, n)
    }
}

pub fn pattern_cells(footprint: &[usize], tau: usize, n: usize) -> Vec<(usize, usize)> {
    footprint
        .iter()
        .enumerate()
        .map(|(i, &c)| (i, (c + tau) % n))
        .collect()
}

fn rotate(set: &[usize], s: usize, n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = set.iter().map(|&c| (c + s) % n).collect();
    out.sort_unstable();
    out
}

pub fn period(set: &[usize], n: usize) -> usize {
    divisors(n)
        .into_iter()
        .find(|&s| rotate(set, s, n) == set)
        .expect("shift by n is the identity")
}

/// Next t-combination of 0..n in lexicographic order, in place.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let t = c.len();
    let Some(i) = (0..t).rev().find(|&i| c[i] < n - t + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..t {
        c[j] = c[j - 1] + 1;
    }
    true
}

/// Every t-subset of 0..n in lexicographic order.
pub fn subsets(n: usize, t: usize) -> Vec<Vec<usize>> {
    if t > n {
        return Vec::new();
    }
    let mut c: Vec<usize> = (0..t).collect();
    let mut out = vec![c.clone()];
    while next_combination(&mut c, n) {
        out.push(c.clone());
    }
    out
}

/// All orbit representatives, in lexicographic order of footprint.
pub fn enumerate_patterns(n: usize, t: usize) -> Vec<Pattern> {
    assert!(1 <= t && t <= n, "need 1 <= t <= n");
    let g = n / gcd(n, t);
    let mut out = Vec::new();
    let mut c: Vec<usize> = (0..t).collect();
    loop {
        let per = period(&c, n);
        let least = (1..per).all(|s| rotate(&c, s, n) > c);
        if least {
            out.push(Pattern {
                index: out.len(),
                footprint: c.clone(),
                period: per,
                omega: per / g,
            });
        }
        if !next_combination(&mut c, n) {
            break;
        }
    }
    out
}

/// Census as machine-size integers, for code construction.
pub fn layers_usize(census: &OrbitCensus) -> Option<usize> {
    census.layers.to_usize()
}
