use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{CodeError, Result};
use crate::field::prime_power;
use crate::patterns::{binomial, count_classes, gcd, OrbitCensus};

/// Every derived quantity of an (n, w, γ) canonical code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalParams {
    pub n: usize,
    pub w: usize,
    pub gamma: usize,
    /// Field order; `None` for parameter-only derivations.
    pub q: Option<usize>,
    /// n / g = gcd(n, w+γ).
    pub g: usize,
    pub census: OrbitCensus,
    /// Number of layers per repetition copy: sum over patterns of ω_ℓ.
    pub l: BigUint,
    /// lcm(w, w+1, ..., w+γ-1).
    pub v1: BigUint,
    /// V = V1 / w.
    pub v: BigUint,
    /// M = L·V layers in total.
    pub m: BigUint,
    /// Scalar dimension L·V·n·w.
    pub k_c: BigUint,
    pub alpha: BigUint,
    pub beta: BigUint,
    pub d: usize,
    pub k: usize,
}

fn lcm_range(lo: usize, hi_exclusive: usize) -> BigUint {
    (lo..hi_exclusive).fold(BigUint::one(), |acc, x| acc.lcm(&BigUint::from(x)))
}

/// β as the per-helper thread count sum:
/// V·gcd(n, w+γ)·Σ_p C(γ-1, p-1)·C(n-γ-1, w+γ-p-1)·w/(w+γ-p).
pub fn beta_by_thread_count(n: usize, w: usize, gamma: usize) -> BigUint {
    let v = lcm_range(w, w + gamma) / w;
    let mult = gcd(n, w + gamma);
    let mut sum = BigUint::zero();
    for p in 1..=gamma {
        let per_thread = &v * w;
        let (share, rem) = per_thread.div_rem(&BigUint::from(w + gamma - p));
        assert!(rem.is_zero(), "(w+γ-p) divides V·w");
        sum += binomial(gamma - 1, p - 1) * binomial(n - gamma - 1, w + gamma - p - 1) * share;
    }
    sum * mult
}

impl CanonicalParams {
    /// Parameter-level derivation for any w >= 1 (no field, no w >= 2 gate).
    pub fn derive(n: usize, w: usize, gamma: usize) -> Result<Self> {
        if w < 1 {
            return Err(CodeError::Parameter("w >= 1".into()));
        }
        if gamma < 1 {
            return Err(CodeError::Parameter("γ >= 1".into()));
        }
        if w + gamma > n {
            return Err(CodeError::Parameter(format!(
                "w+γ <= n (w+γ = {}, n = {n})",
                w + gamma
            )));
        }
        let t = w + gamma;
        let census = count_classes(n, t);
        let g = census.g;
        let l = census.layers.clone();
        let v1 = lcm_range(w, t);
        let v = &v1 / w;
        let m = &l * &v;
        let k_c = &m * n * w;
        let alpha = &m * t;
        let d = n - gamma;

        let (beta, rem) = (&alpha * w).div_rem(&BigUint::from(d));
        if !rem.is_zero() {
            return Err(CodeError::Invariant(format!(
                "β·(n-γ) = w·α has no integral solution for ({n},{w},{gamma})"
            )));
        }
        for p in 1..=gamma {
            if !(&v * w).is_multiple_of(&BigUint::from(t - p)) {
                return Err(CodeError::Invariant(format!("(w+γ-{p}) does not divide V·w")));
            }
        }
        let by_count = beta_by_thread_count(n, w, gamma);
        if by_count != beta {
            return Err(CodeError::Invariant(format!(
                "β mismatch: thread count gives {by_count}, w·α/(n-γ) gives {beta}"
            )));
        }
        Ok(Self {
            n,
            w,
            gamma,
            q: None,
            g,
            census,
            l,
            v1,
            v,
            m,
            k_c,
            alpha,
            beta,
            d,
            k: d,
        })
    }

    /// Full validation for a constructible code over GF(q).
    pub fn new(n: usize, w: usize, gamma: usize, q: usize) -> Result<Self> {
        if w < 2 {
            return Err(CodeError::Parameter(format!("w >= 2 (got w = {w})")));
        }
        if gamma < 1 {
            return Err(CodeError::Parameter("γ >= 1".into()));
        }
        if w + gamma > n {
            return Err(CodeError::Parameter(format!(
                "w+γ <= n (w+γ = {}, n = {n})",
                w + gamma
            )));
        }
        if q > 256 || prime_power(q).is_none() {
            return Err(CodeError::Parameter(format!(
                "q must be a prime power <= 256 (got {q})"
            )));
        }
        if q <= w + gamma {
            return Err(CodeError::Parameter(format!(
                "q > w+γ (q = {q}, w+γ = {})",
                w + gamma
            )));
        }
        let mut p = Self::derive(n, w, gamma)?;
        p.q = Some(q);
        Ok(p)
    }

    pub fn thread_len(&self) -> usize {
        self.w + self.gamma
    }

    pub fn rate(&self) -> BigRational {
        BigRational::new(self.w.into(), (self.w + self.gamma).into())
    }

    /// d·β, the download for one failed node.
    pub fn repair_bandwidth(&self) -> BigUint {
        &self.beta * self.d
    }

    /// (α, β, K_c, L, V) as machine integers, if they fit.
    pub fn small(&self) -> Option<SmallParams> {
        Some(SmallParams {
            alpha: self.alpha.to_usize()?,
            beta: self.beta.to_usize()?,
            k_c: self.k_c.to_usize()?,
            l: self.l.to_usize()?,
            v: self.v.to_usize()?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmallParams {
    pub alpha: usize,
    pub beta: usize,
    pub k_c: usize,
    pub l: usize,
    pub v: usize,
}
