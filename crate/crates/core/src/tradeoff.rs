//! Exact-rational storage / repair-bandwidth tradeoff computations.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::canonical::CanonicalParams;
use crate::error::{CodeError, Result};
use crate::rank;

pub type Q = BigRational;

pub fn int(x: impl Into<BigInt>) -> Q {
    Q::from_integer(x.into())
}

pub fn ratio(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Q {
    Q::new(a.into(), b.into())
}

fn big(x: &BigUint) -> Q {
    Q::from_integer(BigInt::from(x.clone()))
}

/// `a/b` (or `a` when integral).
pub fn fmt_exact(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Decimal rendering with 12 significant digits.
pub fn fmt_float(x: &Q) -> String {
    let v = x.to_f64().unwrap_or(f64::NAN);
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let digits = 11 - v.abs().log10().floor() as i32;
    if digits >= 0 {
        let s = format!("{:.*}", digits as usize, v);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{v:.11e}")
    }
}

/// Parses `a`, `a/b` or a finite decimal such as `0.25`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let bad = || CodeError::Usage(format!("not a rational number: {s:?}"));
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(a, b));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let neg = whole.starts_with('-');
        let w: BigInt = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            whole.parse().map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let f = Q::new(f, scale);
        return Ok(if neg { int(w) - f } else { int(w) + f });
    }
    Ok(int(s.parse::<BigInt>().map_err(|_| bad())?))
}

/// Σ_{i<k} min(α, (d-i)β).
pub fn cutset_bound(k: usize, d: usize, alpha: &Q, beta: &Q) -> Q {
    (0..k)
        .map(|i| alpha.clone().min(beta * int(d as i64 - i as i64)))
        .fold(Q::zero(), |a, b| a + b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TradeoffPoint {
    pub n: usize,
    pub d: usize,
    pub alpha: Q,
    pub beta: Q,
    pub filesize: Q,
}

impl TradeoffPoint {
    pub fn new(n: usize, d: usize, alpha: Q, beta: Q, filesize: Q) -> Self {
        Self {
            n,
            d,
            alpha,
            beta,
            filesize,
        }
    }

    pub fn d_beta(&self) -> Q {
        &self.beta * int(self.d)
    }

    /// Ω = nα/K.
    pub fn omega(&self) -> Q {
        &self.alpha * int(self.n) / &self.filesize
    }

    /// Θ = ndβ/K.
    pub fn theta(&self) -> Q {
        self.d_beta() * int(self.n) / &self.filesize
    }

    pub fn rate(&self) -> Q {
        self.omega().recip()
    }
}

/// α = (d-k+1)β, K = kα.
pub fn msr_point(n: usize, k: usize, d: usize, beta: Q) -> TradeoffPoint {
    let alpha = &beta * int(d + 1 - k);
    let filesize = &alpha * int(k);
    TradeoffPoint::new(n, d, alpha, beta, filesize)
}

/// α = dβ, K = (dk - C(k,2))β.
pub fn mbr_point(n: usize, k: usize, d: usize, beta: Q) -> TradeoffPoint {
    let alpha = &beta * int(d);
    let filesize = &beta * int(d * k - k * (k - 1) / 2);
    TradeoffPoint::new(n, d, alpha, beta, filesize)
}

/// The k corners α = (d-p)β, p = 0..k-1, scaled so the cut-set bound equals K.
/// Ordered by p: MBR first, MSR last.
pub fn classical_curve(n: usize, k: usize, d: usize, filesize: &Q) -> Vec<TradeoffPoint> {
    (0..k)
        .map(|p| {
            let weight: usize = (0..k).map(|i| (d - p).min(d - i)).sum();
            let beta = filesize / int(weight);
            let alpha = &beta * int(d - p);
            TradeoffPoint::new(n, d, alpha, beta, filesize.clone())
        })
        .collect()
}

/// Corners ordered by decreasing α have increasing dβ, and the slopes between
/// consecutive corners are nondecreasing in that order (convexity).
pub fn is_convex_decreasing(points: &[TradeoffPoint]) -> bool {
    let xy: Vec<(Q, Q)> = points.iter().map(|p| (p.alpha.clone(), p.d_beta())).collect();
    let strict = xy
        .windows(2)
        .all(|w| w[1].0 < w[0].0 && w[1].1 > w[0].1);
    // slope of dβ against α, walking towards smaller α, must get steeper
    let slopes: Vec<Q> = xy
        .windows(2)
        .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
        .collect();
    strict && slopes.windows(2).all(|s| s[1] <= s[0])
}

/// (Ω*, Θ*) at corner p with d = n - γ and α = (d-p)β:
/// 1/Ω* = k/n - (k-p)(k-p-1) / (2n(d-p)), Θ* = Ω*·d/(d-p).
pub fn normalized_bounds(n: usize, k: usize, gamma: usize, p: usize) -> Result<(Q, Q)> {
    if p >= k || gamma >= n || k > n - gamma {
        return Err(CodeError::Parameter(format!(
            "0 <= p <= k-1 and k <= n-γ (n = {n}, k = {k}, γ = {gamma}, p = {p})"
        )));
    }
    let d = n - gamma;
    let inv = ratio(k as i64, n as i64)
        - ratio(((k - p) * (k - p - 1)) as i64, (2 * n * (d - p)) as i64);
    let omega = inv.recip();
    let theta = &omega * ratio(d as i64, (d - p) as i64);
    Ok((omega, theta))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticPoint {
    pub kappa: Q,
    pub theta: Q,
    pub delta: Q,
    pub omega_a: Q,
    pub theta_a: Q,
}

pub fn asymptotic_bounds(kappa: &Q, theta: &Q) -> Result<AsymptoticPoint> {
    let (zero, one) = (Q::zero(), Q::one());
    if kappa < &zero || kappa > &one || theta < &zero || theta > &one {
        return Err(CodeError::Parameter("0 <= κ <= 1 and 0 <= θ <= 1".into()));
    }
    let tk = theta * kappa;
    if tk == one {
        return Err(CodeError::Parameter("θκ = 1 is singular".into()));
    }
    let omt = &one - theta;
    let inv = kappa - &omt * &omt * kappa * kappa / (int(2) * (&one - &tk));
    if inv.is_zero() {
        return Err(CodeError::Parameter("κ = 0 has unbounded storage overhead".into()));
    }
    let omega_a = inv.recip();
    let theta_a = &omega_a / (&one - &tk);
    Ok(AsymptoticPoint {
        kappa: kappa.clone(),
        theta: theta.clone(),
        delta: one,
        omega_a,
        theta_a,
    })
}

/// dβ on the MSR-MBR space-sharing line at storage α:
/// d(2K - kα) / (k(d-k+1)).
pub fn space_sharing_d_beta(k: usize, d: usize, filesize: &Q, alpha: &Q) -> Q {
    int(d) * (int(2) * filesize - int(k) * alpha) / int(k * (d - k + 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominanceVerdict {
    pub w: usize,
    pub point: TradeoffPoint,
    pub space_share_d_beta: Q,
    /// Candidate dβ strictly below the line at equal α.
    pub geometric: bool,
    /// (k-w)(w-γ) > 0.
    pub algebraic: bool,
}

impl DominanceVerdict {
    pub fn agree(&self) -> bool {
        self.geometric == self.algebraic
    }
}

/// The canonical code's own (α, dβ, K_c) against the space-sharing line.
pub fn canonical_dominance(params: &CanonicalParams) -> DominanceVerdict {
    let point = canonical_point(params);
    let line = space_sharing_d_beta(params.k, params.d, &point.filesize, &point.alpha);
    let (k, w, g) = (params.k as i64, params.w as i64, params.gamma as i64);
    DominanceVerdict {
        w: params.w,
        geometric: point.d_beta() < line,
        algebraic: (k - w) * (w - g) > 0,
        point,
        space_share_d_beta: line,
    }
}

pub fn canonical_point(params: &CanonicalParams) -> TradeoffPoint {
    TradeoffPoint::new(
        params.n,
        params.d,
        big(&params.alpha),
        big(&params.beta),
        big(&params.k_c),
    )
}

/// Non-canonical code point: same α, β as the inner code, filesize ρ_k.
pub fn layered_point(params: &CanonicalParams, k: usize) -> Result<TradeoffPoint> {
    let filesize = rank::k_of_k(params, k)?;
    Ok(TradeoffPoint::new(
        params.n,
        params.d,
        big(&params.alpha),
        big(&params.beta),
        big(&filesize),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostModel {
    pub gamma_b: Q,
    pub gamma_s: Q,
}

impl CostModel {
    /// Cost per stored symbol per unit time: γ_B·Θ + γ_S·Ω.
    pub fn per_symbol(&self, point: &TradeoffPoint) -> Q {
        &self.gamma_b * point.theta() + &self.gamma_s * point.omega()
    }

    /// γ(K, T) = (γ_B·ndβ + γ_S·nα)·T.
    pub fn total(&self, point: &TradeoffPoint, horizon: &Q) -> Result<Q> {
        if !horizon.is_positive() {
            return Err(CodeError::Parameter("T > 0".into()));
        }
        Ok(self.per_symbol(point) * &point.filesize * horizon)
    }
}

/// Specialized optimal profile for dβ = wα:
/// α up to ⌊d(w-1)/w + 1⌋, then wα - w(p-1)α/d, then 0.
pub fn optimal_profile_layered(n: usize, k: usize, d: usize, w: usize, alpha: &Q) -> Vec<Q> {
    let knee = (d * (w - 1) / w) + 1;
    (1..=n)
        .map(|p| {
            if p <= knee.min(k) {
                alpha.clone()
            } else if p <= k {
                alpha * int(w) - alpha * int(w * (p - 1)) / int(d)
            } else {
                Q::zero()
            }
        })
        .collect()
}
