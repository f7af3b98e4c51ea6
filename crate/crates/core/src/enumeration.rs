//! Exhaustive enumeration over `S_n`: sphere profiles, the closed-form sphere
//! count, and block permutation ball sizes.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{distance_to_identity, next_lex, Permutation};

/// Largest `n` enumerated exhaustively unless the caller raises it.
pub const DEFAULT_MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("n = {n} exceeds the enumeration guard of {max}")]
    GuardExceeded { n: usize, max: usize },
    #[error("n must be at least 1")]
    ZeroN,
    #[error("k = {k} outside 1..={max}")]
    KOutOfRange { k: usize, max: usize },
    #[error("radius t = {t} outside 0..={max}")]
    RadiusOutOfRange { t: usize, max: usize },
    #[error("ball bounds need t <= n - sqrt(n) - 1, which fails for n = {n}, t = {t}")]
    BoundHypothesis { n: usize, t: usize },
}

pub(crate) fn check_guard(n: usize, max: usize) -> Result<(), EnumError> {
    if n == 0 {
        return Err(EnumError::ZeroN);
    }
    if n > max {
        return Err(EnumError::GuardExceeded { n, max });
    }
    Ok(())
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Product `(n - from)(n - from - 1)...(n - to)`; 1 when the range is empty.
pub fn falling_product(n: usize, from: usize, to: usize) -> BigUint {
    (from..=to).fold(BigUint::one(), |acc, i| acc * (n - i))
}

/// The `index`-th permutation of `1..=n` in lexicographic order.
pub fn unrank_lex(n: usize, mut index: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut fact: Vec<u64> = vec![1; n + 1];
    for i in 1..=n {
        fact[i] = fact[i - 1] * i as u64;
    }
    let mut out = Vec::with_capacity(n);
    for pos in 0..n {
        let f = fact[n - 1 - pos];
        let idx = (index / f) as usize;
        index %= f;
        out.push(pool.remove(idx));
    }
    out
}

/// Folds over every permutation of `1..=n` in parallel. The lexicographic
/// index range is split into contiguous chunks; each chunk is folded from
/// `init()` and the partial results are combined with `merge`.
pub fn par_fold_permutations<T, I, F, M>(n: usize, init: I, fold: F, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, &[usize]) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    let total: u64 = (1..=n as u64).product();
    let chunks = (rayon::current_num_threads() as u64 * 8).clamp(1, total);
    let step = total.div_ceil(chunks);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * step;
            let end = ((c + 1) * step).min(total);
            let mut acc = init();
            if start >= end {
                return acc;
            }
            let mut v = unrank_lex(n, start);
            let mut idx = start;
            loop {
                fold(&mut acc, &v);
                idx += 1;
                if idx >= end || !next_lex(&mut v) {
                    break;
                }
            }
            acc
        })
        .reduce(&init, &merge)
}

/// Every permutation of `1..=n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut v: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation::from_vec_unchecked(v.clone()));
        if !next_lex(&mut v) {
            break;
        }
    }
    out
}

/// `counts[k]` is the number of permutations at distance `k` from the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereProfile {
    pub n: usize,
    pub counts: Vec<u64>,
}

impl SphereProfile {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Number of permutations within distance `t` of a center.
    pub fn ball(&self, t: usize) -> u64 {
        self.counts.iter().take(t + 1).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,count\n");
        for (k, c) in self.counts.iter().enumerate() {
            s.push_str(&format!("{k},{c}\n"));
        }
        s
    }
}

pub fn enumerate_spheres(n: usize) -> Result<SphereProfile, EnumError> {
    enumerate_spheres_with_limit(n, DEFAULT_MAX_N)
}

pub fn enumerate_spheres_with_limit(n: usize, max_n: usize) -> Result<SphereProfile, EnumError> {
    check_guard(n, max_n)?;
    let counts = par_fold_permutations(
        n,
        || vec![0u64; n],
        |acc, p| acc[distance_to_identity(p)] += 1,
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    Ok(SphereProfile { n, counts })
}

/// Closed-form size of the distance-`k` sphere:
/// `k! C(n-1, k) Σ_{i=0..k} (-1)^{k-i} (i+1)/(k-i)!`, evaluated exactly.
pub fn myers_count(n: usize, k: usize) -> Result<BigUint, EnumError> {
    if n == 0 {
        return Err(EnumError::ZeroN);
    }
    if k == 0 || k > n - 1 {
        return Err(EnumError::KOutOfRange {
            k,
            max: n.saturating_sub(1),
        });
    }
    let mut sum = BigRational::zero();
    for i in 0..=k {
        let term = BigRational::new(BigInt::from(i + 1), BigInt::from(factorial(k - i)));
        if (k - i).is_odd() {
            sum -= term;
        } else {
            sum += term;
        }
    }
    let scale = BigInt::from(factorial(k) * binomial(n - 1, k));
    let value = sum * BigRational::from_integer(scale);
    assert!(value.is_integer(), "sphere count formula produced a non-integer");
    let value = value.to_integer();
    assert!(!value.is_negative());
    Ok(value.to_biguint().expect("non-negative"))
}

/// `|b_B(n, t)|` with its radius attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallSize {
    pub n: usize,
    pub t: usize,
    pub size: BigUint,
}

pub fn ball_size_exact(n: usize, t: usize) -> Result<BallSize, EnumError> {
    ball_size_exact_with_limit(n, t, DEFAULT_MAX_N)
}

pub fn ball_size_exact_with_limit(n: usize, t: usize, max_n: usize) -> Result<BallSize, EnumError> {
    check_guard(n, max_n)?;
    if t > n - 1 {
        return Err(EnumError::RadiusOutOfRange { t, max: n - 1 });
    }
    let profile = enumerate_spheres_with_limit(n, max_n)?;
    Ok(BallSize {
        n,
        t,
        size: BigUint::from(profile.ball(t)),
    })
}

/// Integer form of `t <= n - sqrt(n) - 1`: `n - t - 1 >= 0` and `(n - t - 1)^2 >= n`.
pub fn ball_bound_hypothesis(n: usize, t: usize) -> bool {
    match n.checked_sub(t + 1) {
        Some(m) => (m as u128) * (m as u128) >= n as u128,
        None => false,
    }
}

/// `(Π_{i=1..t}(n-i), Π_{i=0..t}(n-i))`, which bracket the ball size when
/// [`ball_bound_hypothesis`] holds.
pub fn ball_size_bounds(n: usize, t: usize) -> Result<(BigUint, BigUint), EnumError> {
    if n == 0 {
        return Err(EnumError::ZeroN);
    }
    if !ball_bound_hypothesis(n, t) {
        return Err(EnumError::BoundHypothesis { n, t });
    }
    Ok((falling_product(n, 1, t), falling_product(n, 0, t)))
}
