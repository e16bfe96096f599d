//! Rank accumulation of the canonical generator matrix over thick columns.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::canonical::{CanonicalCode, CanonicalParams};
use crate::error::{CodeError, Result};
use crate::field::Field;
use crate::linalg::Basis;
use crate::patterns::{binomial, gcd};

/// ρ_s = V·gcd(n, w+γ)·Σ_p C(s,p)·C(n-s, w+γ-p)·min(p, w).
pub fn rho(params: &CanonicalParams, s: usize) -> BigUint {
    let (n, w, t) = (params.n, params.w, params.thread_len());
    assert!(s <= n, "s must lie in 0..=n");
    let mut sum = BigUint::zero();
    for p in 1..=s.min(t) {
        sum += binomial(s, p) * binomial(n - s, t - p) * p.min(w);
    }
    sum * &params.v * gcd(n, t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    /// ρ_1..ρ_n.
    pub rho: Vec<BigUint>,
    /// a_1..a_n with a_i = ρ_i - ρ_{i-1}.
    pub a: Vec<BigUint>,
}

pub fn profile(params: &CanonicalParams) -> RankProfile {
    let rho: Vec<BigUint> = (1..=params.n).map(|s| self::rho(params, s)).collect();
    let mut prev = BigUint::zero();
    let a = rho
        .iter()
        .map(|r| {
            let inc = r - &prev;
            prev = r.clone();
            inc
        })
        .collect();
    RankProfile { rho, a }
}

/// γ = 1 closed form: a_p = α for p <= w, α - V·gcd(n, w+1)·C(p-1, w) for
/// w < p <= k, and 0 beyond.
pub fn gamma1_profile(params: &CanonicalParams) -> Option<Vec<BigUint>> {
    if params.gamma != 1 {
        return None;
    }
    let mult = &params.v * gcd(params.n, params.w + 1);
    Some(
        (1..=params.n)
            .map(|p| {
                if p <= params.w {
                    params.alpha.clone()
                } else if p <= params.k {
                    &params.alpha - &mult * binomial(p - 1, params.w)
                } else {
                    BigUint::zero()
                }
            })
            .collect(),
    )
}

/// Smallest k with ρ_k >= K.
pub fn k0_of_k(params: &CanonicalParams, filesize: &BigUint) -> Result<usize> {
    if filesize.is_zero() {
        return Err(CodeError::Usage("filesize must be positive".into()));
    }
    if filesize > &params.k_c {
        return Err(CodeError::Parameter(format!(
            "filesize {filesize} is infeasible: K <= K_c = {}",
            params.k_c
        )));
    }
    Ok((1..=params.n)
        .find(|&s| &rho(params, s) >= filesize)
        .expect("ρ_n = K_c"))
}

/// Lower bound every regenerating code obeys: k >= 1 + d(w-1)/w.
pub fn check_note1(params: &CanonicalParams, k: usize) -> Result<()> {
    let (w, d) = (params.w, params.d);
    if k < w || k > d {
        return Err(CodeError::Parameter(format!(
            "w <= k <= d (w = {w}, k = {k}, d = {d})"
        )));
    }
    if w * (k - 1) < d * (w - 1) {
        return Err(CodeError::Parameter(format!(
            "k >= 1 + d(w-1)/w (k = {k}, d = {d}, w = {w})"
        )));
    }
    Ok(())
}

/// Filesize K = ρ_k collectible from any k nodes.
pub fn k_of_k(params: &CanonicalParams, k: usize) -> Result<BigUint> {
    check_note1(params, k)?;
    Ok(rho(params, k))
}

/// The explicit generator: row j is the vectorized encoding of basis message e_j,
/// column `c·α + r` holding cell `(r, c)`.
pub fn generator<F: Field>(code: &CanonicalCode<F>) -> Result<Vec<Vec<F::Elem>>> {
    let f = code.field();
    let mut msg = vec![f.zero(); code.k_c()];
    let mut rows = Vec::with_capacity(code.k_c());
    for j in 0..code.k_c() {
        msg[j] = f.one();
        let arr = code.encode(&msg)?;
        msg[j] = f.zero();
        rows.push(arr.into_columns().into_iter().flatten().collect());
    }
    Ok(rows)
}

/// Rank of the generator restricted to the thick columns of `subset`.
pub fn brute_rank_of<F: Field>(
    code: &CanonicalCode<F>,
    generator: &[Vec<F::Elem>],
    subset: &[usize],
) -> usize {
    let alpha = code.alpha();
    let mut basis = Basis::new(code.field().clone());
    for &c in subset {
        for r in 0..alpha {
            let col: Vec<F::Elem> = generator.iter().map(|row| row[c * alpha + r].clone()).collect();
            basis.insert(col);
            if basis.rank() == generator.len() {
                return basis.rank();
            }
        }
    }
    basis.rank()
}

pub fn brute_rank<F: Field>(code: &CanonicalCode<F>, subset: &[usize]) -> Result<usize> {
    Ok(brute_rank_of(code, &generator(code)?, subset))
}

/// a_p* = min(α, (d-p+1)β) for p <= k, 0 for k < p <= n.
pub fn optimal_profile(
    n: usize,
    k: usize,
    d: usize,
    alpha: &BigUint,
    beta: &BigUint,
) -> Vec<BigUint> {
    (1..=n)
        .map(|p| {
            if p <= k {
                alpha.clone().min(beta * (d + 1 - p))
            } else {
                BigUint::zero()
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteriorPointReport {
    pub n: usize,
    pub w: usize,
    pub alpha: BigUint,
    pub beta: BigUint,
    pub profile: Vec<BigUint>,
    pub optimal: Vec<BigUint>,
    /// (d-(k-2))β - ((k-2)/(k-1))β.
    pub next_corner_alpha: BigRational,
}

impl InteriorPointReport {
    pub fn profile_matches(&self) -> bool {
        self.profile == self.optimal
    }

    pub fn identity_holds(&self) -> bool {
        self.next_corner_alpha == BigRational::from_integer(self.alpha.clone().into())
    }
}

/// The (n, n-1, n-1) canonical code with w = d-1, γ = 1.
pub fn interior_point_check(n: usize) -> Result<InteriorPointReport> {
    if n < 4 {
        return Err(CodeError::Parameter(format!(
            "w >= 2: n = {n} gives w = d-1 = {}, outside the construction range",
            n.saturating_sub(2)
        )));
    }
    let params = CanonicalParams::derive(n, n - 2, 1)?;
    let (d, k) = (params.d, params.k);
    let prof = profile(&params);
    let optimal = optimal_profile(n, k, d, &params.alpha, &params.beta);
    let beta = BigRational::from_integer(params.beta.clone().into());
    let kk = k as i64;
    let next_corner_alpha = &beta * BigRational::from_integer((d as i64 - (kk - 2)).into())
        - &beta * BigRational::new((kk - 2).into(), (kk - 1).into());
    Ok(InteriorPointReport {
        n,
        w: params.w,
        alpha: params.alpha.clone(),
        beta: params.beta.clone(),
        profile: prof.a,
        optimal,
        next_corner_alpha,
    })
}

/// Machine-size view of a profile for callers that know it fits.
pub fn to_u64(v: &[BigUint]) -> Vec<u64> {
    v.iter().map(|x| x.to_u64().expect("fits in u64")).collect()
}
