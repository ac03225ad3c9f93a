//! Lower and upper bound calculators for f_m(r, H).

use crate::numtheory::{binomial, crt_pair, is_prime};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{0} overflows")]
    Overflow(String),
}

fn pre(ok: bool, msg: impl FnOnce() -> String) -> Result<(), BoundsError> {
    if ok {
        Ok(())
    } else {
        Err(BoundsError::Precondition(msg()))
    }
}

/// ex_m(N, H) <= C N^e.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TuranEnvelope {
    pub c: f64,
    pub e: f64,
    pub m: usize,
}

impl TuranEnvelope {
    pub fn new(c: f64, e: f64, m: usize) -> Result<Self, BoundsError> {
        pre(c > 0.0 && c.is_finite(), || format!("C = {c} must be positive"))?;
        pre(e > 1.0 && e <= m as f64, || format!("e = {e} must lie in (1, {m}]"))?;
        Ok(Self { c, e, m })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBound {
    /// Least k with C(r,m) <= C (rk)^e.
    pub k: u64,
    /// Least k with (r-m)^m / m! <= C (rk)^e.
    pub k_relaxed: u64,
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    (0..k).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
}

/// Least k >= 1 with ln_target <= ln C + e ln(rk), comparisons slightly in
/// favor of smaller k so the bound is never overstated by rounding.
fn least_k(ln_target: f64, r: usize, env: &TuranEnvelope) -> u64 {
    let fits =
        |k: u64| ln_target <= env.c.ln() + env.e * ((r as f64) * k as f64).ln() + 1e-12 * ln_target.abs().max(1.0);
    let guess = ((ln_target - env.c.ln()) / env.e).exp() / r as f64;
    let mut k = guess.ceil().max(1.0) as u64;
    while k > 1 && fits(k - 1) {
        k -= 1;
    }
    while !fits(k) {
        k += 1;
    }
    k
}

/// Any k below `k` admits no H-free m-uniform (r,k)-hypergraph when
/// ex_m(N, H) <= C N^e, so f_m(r, H) >= k.
pub fn min_k_lower(r: usize, env: &TuranEnvelope) -> Result<LowerBound, BoundsError> {
    let m = env.m;
    pre(m >= 2 && r > m, || format!("need r > m >= 2, got r = {r}, m = {m}"))?;
    let k = least_k(ln_binomial(r, m), r, env);
    let ln_relaxed = m as f64 * ((r - m) as f64).ln() - (1..=m).map(|i| (i as f64).ln()).sum::<f64>();
    let k_relaxed = least_k(ln_relaxed, r, env);
    Ok(LowerBound { k, k_relaxed })
}

fn binom(n: usize, k: usize) -> Result<u128, BoundsError> {
    binomial(n as u64, k as u64).ok_or_else(|| BoundsError::Overflow(format!("C({n},{k})")))
}

/// C(r-1, m-1) / C(t-1, m-1), the bound forced by Berge paths and met by
/// m-(r,t,1) designs.
pub fn berge_path_k_lb(r: usize, m: usize, t: usize) -> Result<Ratio<u128>, BoundsError> {
    pre(m >= 2 && t >= m && r > t, || format!("need r > t >= m >= 2, got r = {r}, t = {t}, m = {m}"))?;
    Ok(Ratio::new(binom(r - 1, m - 1)?, binom(t - 1, m - 1)?))
}

/// (r-1)/(t-1).
pub fn tree_bound(r: u64, t: u64) -> Result<Ratio<u64>, BoundsError> {
    pre(t >= 2 && r > t, || format!("need r > t >= 2, got r = {r}, t = {t}"))?;
    Ok(Ratio::new(r - 1, t - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Congruence {
    /// p + 1 = 0 mod D1 and p - 1 = 0 mod D2.
    PlusMinus,
    /// p - 1 = 0 mod D1 and p + 1 = 0 mod D2.
    MinusPlus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportPrime {
    pub p: u64,
    pub congruence: Congruence,
    /// p^2 (p - 1) / D2.
    pub r_p: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissiblePair {
    pub d: u64,
    pub d1: u64,
    pub d2: u64,
    pub x0: u64,
    pub modulus: u64,
    pub primes: Vec<SupportPrime>,
    /// (2D+1) / (D(D+1)) = 1/D1 + 1/D2.
    pub coefficient: f64,
    /// sqrt(d) - 3/2 < D < sqrt(d) - 1/2.
    pub inequality_holds: bool,
}

pub fn congruence_of(p: u64, d1: u64, d2: u64) -> Option<Congruence> {
    if (p + 1).is_multiple_of(d1) && (p - 1).is_multiple_of(d2) {
        Some(Congruence::PlusMinus)
    } else if (p - 1).is_multiple_of(d1) && (p + 1).is_multiple_of(d2) {
        Some(Congruence::MinusPlus)
    } else {
        None
    }
}

/// The pair (D, D+1) with D(D+1) < d <= (D+1)(D+2), the residue x0 of the
/// primes supporting it, and those primes up to `limit`.
pub fn admissible_pair_for(d: u64, limit: u64) -> Result<AdmissiblePair, BoundsError> {
    pre(d >= 12, || format!("d = {d} < 12; use the small-d table"))?;
    let mut big_d = (d as f64).sqrt() as u64;
    while big_d * (big_d + 1) >= d {
        big_d -= 1;
    }
    while (big_d + 1) * (big_d + 2) < d {
        big_d += 1;
    }
    let (d1, d2) = (big_d, big_d + 1);
    let modulus = d1 * d2;
    let x0 = crt_pair((d1 - 1) % d1, d1, 1 % d2, d2).expect("coprime moduli");
    let mut primes = Vec::new();
    let mut p = x0;
    while p <= limit {
        if is_prime(p) {
            let congruence = congruence_of(p, d1, d2).expect("residue forces the congruence");
            let r_p = (p as u128 * p as u128 * (p as u128 - 1)) / d2 as u128;
            primes.push(SupportPrime { p, congruence, r_p });
        }
        p += modulus;
    }
    let s = (d as f64).sqrt();
    let dd = big_d as f64;
    Ok(AdmissiblePair {
        d,
        d1,
        d2,
        x0,
        modulus,
        primes,
        coefficient: (2.0 * dd + 1.0) / (dd * (dd + 1.0)),
        inequality_holds: s - 1.5 < dd && dd < s - 0.5,
    })
}

/// 2 d^{-1/3} (1 - 1.5 d^{-1/2})^{-5/3}, the coefficient of r^{1/3} in the
/// upper bound for f(r, K_{2,d+1}).
pub fn k2d_upper_coeff(d: u64) -> Result<f64, BoundsError> {
    pre(d >= 12, || format!("d = {d} < 12; use the small-d table"))?;
    let d = d as f64;
    Ok(2.0 / d.cbrt() * (1.0 - 1.5 / d.sqrt()).powf(-5.0 / 3.0))
}

/// Reference constants c_d for small d.
pub fn small_d_table() -> BTreeMap<u32, f64> {
    let mut t = BTreeMap::new();
    for (lo, hi, c) in [(2, 3, 1.89), (4, 5, 1.26), (6, 7, 1.21), (8, 11, 1.20), (12, 14, 0.93)] {
        for d in lo..=hi {
            t.insert(d, c);
        }
    }
    t
}
