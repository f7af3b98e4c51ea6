//! Syndrome partition of `S_n` over a prime field.
//!
//! Each unordered pair of labels is mapped to a distinct field element. A
//! permutation's `n - 1` adjacencies become a multiset of field elements, and
//! its syndrome is the vector of the first `d - 1` elementary symmetric
//! polynomials of that multiset. Permutations sharing a syndrome are at block
//! distance at least `d`, so every syndrome class is an `(n, d)` code.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CodeBook, CodeError, Provenance};
use crate::enumeration::{check_guard, par_fold_permutations, DEFAULT_MAX_N};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Option<Self> {
        is_prime(q).then_some(PrimeField { q })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut f = 2u64;
    while f * f <= q {
        if q.is_multiple_of(f) {
            return false;
        }
        f += 1;
    }
    true
}

fn pair_count(n: usize) -> u64 {
    (n as u64) * (n as u64).saturating_sub(1) / 2
}

/// Smallest prime `q >= n(n-1)/2`.
pub fn select_prime(n: usize) -> Result<PrimeField, CodeError> {
    if n < 2 {
        return Err(CodeError::NTooSmall(2));
    }
    let mut q = pair_count(n).max(2);
    while !is_prime(q) {
        q += 1;
    }
    Ok(PrimeField { q })
}

/// Injective map from unordered pairs `{x, y}` to field elements: the
/// lexicographic rank of `(min, max)` among all pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairEncoder {
    n: usize,
    field: PrimeField,
    table: Vec<u64>,
}

pub fn build_pair_encoder(n: usize, field: PrimeField) -> Result<PairEncoder, CodeError> {
    if n < 2 {
        return Err(CodeError::NTooSmall(2));
    }
    let needed = pair_count(n);
    if field.q < needed {
        return Err(CodeError::FieldTooSmall { q: field.q, needed });
    }
    let stride = n + 1;
    let mut table = vec![u64::MAX; stride * stride];
    let mut rank = 0u64;
    for x in 1..=n {
        for y in x + 1..=n {
            table[x * stride + y] = rank;
            table[y * stride + x] = rank;
            rank += 1;
        }
    }
    Ok(PairEncoder { n, field, table })
}

impl PairEncoder {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Field value of the pair `{x, y}`; orientation does not matter.
    pub fn encode(&self, x: usize, y: usize) -> u64 {
        assert!(x != y && (1..=self.n).contains(&x) && (1..=self.n).contains(&y));
        self.table[x * (self.n + 1) + y]
    }
}

/// `(e_1, ..., e_{d-1})` of the encoded adjacencies, each in `[0, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syndrome {
    q: u64,
    values: Vec<u64>,
}

impl Syndrome {
    pub fn new(q: u64, values: Vec<u64>) -> Result<Self, CodeError> {
        if let Some(&value) = values.iter().find(|&&v| v >= q) {
            return Err(CodeError::SyndromeValue { value, q });
        }
        Ok(Syndrome { q, values })
    }

    pub fn design_distance(&self) -> usize {
        self.values.len() + 1
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }
}

// Coefficients of Π(x + γ_i), truncated to degree `len`; e[k] is e_k.
fn elementary_symmetric(image: &[usize], len: usize, enc: &PairEncoder, e: &mut [u64]) {
    let q = enc.field.q;
    e.iter_mut().for_each(|v| *v = 0);
    e[0] = 1;
    for (j, w) in image.windows(2).enumerate() {
        let gamma = enc.table[w[0] * (enc.n + 1) + w[1]];
        let top = (j + 1).min(len);
        for k in (1..=top).rev() {
            e[k] = (e[k] + gamma * e[k - 1]) % q;
        }
    }
}

fn syndrome_values(image: &[usize], d: usize, enc: &PairEncoder) -> Vec<u64> {
    let mut e = vec![0u64; d];
    elementary_symmetric(image, d - 1, enc, &mut e);
    e.remove(0);
    e
}

/// Coordinates beyond `n - 1` are identically zero. Equal syndromes force
/// distance at least `d` only for `d <= n - 1`.
pub fn syndrome(p: &Permutation, d: usize, enc: &PairEncoder) -> Result<Syndrome, CodeError> {
    if d < 2 {
        return Err(CodeError::DistanceTooSmall(2));
    }
    if p.n() != enc.n {
        return Err(crate::perm::PermError::LengthMismatch {
            left: p.n(),
            right: enc.n,
        }
        .into());
    }
    Ok(Syndrome {
        q: enc.field.q,
        values: syndrome_values(p.as_slice(), d, enc),
    })
}

/// The code `{π : F(π) = f}` described by membership, usable at any `n`.
#[derive(Debug, Clone)]
pub struct SyndromeCode {
    d: usize,
    encoder: PairEncoder,
    target: Syndrome,
}

impl SyndromeCode {
    pub fn new(n: usize, d: usize, target: Syndrome) -> Result<Self, CodeError> {
        if d < 2 {
            return Err(CodeError::DistanceTooSmall(2));
        }
        let field = select_prime(n)?;
        if target.q != field.q {
            return Err(CodeError::Format(format!(
                "syndrome is over q = {} but n = {n} uses q = {}",
                target.q, field.q
            )));
        }
        if target.values.len() != d - 1 {
            return Err(CodeError::SyndromeLength {
                got: target.values.len(),
                expected: d - 1,
            });
        }
        let encoder = build_pair_encoder(n, field)?;
        Ok(SyndromeCode { d, encoder, target })
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.n() == self.encoder.n && syndrome_values(p.as_slice(), self.d, &self.encoder) == self.target.values
    }

    pub fn encoder(&self) -> &PairEncoder {
        &self.encoder
    }
}

/// All syndrome classes of `S_n`, keyed by syndrome values.
#[derive(Debug, Clone)]
pub struct SyndromePartition {
    pub n: usize,
    pub d: usize,
    pub field: PrimeField,
    pub classes: BTreeMap<Vec<u64>, Vec<Permutation>>,
}

impl SyndromePartition {
    pub fn total(&self) -> usize {
        self.classes.values().map(Vec::len).sum()
    }

    /// Largest class; ties go to the smallest syndrome.
    pub fn largest(&self) -> Option<(&Vec<u64>, &Vec<Permutation>)> {
        let mut best: Option<(&Vec<u64>, &Vec<Permutation>)> = None;
        for (k, v) in &self.classes {
            if best.is_none_or(|(_, b)| v.len() > b.len()) {
                best = Some((k, v));
            }
        }
        best
    }

    pub fn codebook(&self, values: &[u64]) -> CodeBook {
        let words = self.classes.get(values).cloned().unwrap_or_default();
        CodeBook::new(self.n, self.d, Provenance::Syndrome, words).expect("classes hold distinct words")
    }
}

pub fn syndrome_partition(n: usize, d: usize) -> Result<SyndromePartition, CodeError> {
    syndrome_partition_with_limit(n, d, DEFAULT_MAX_N)
}

pub fn syndrome_partition_with_limit(n: usize, d: usize, max_n: usize) -> Result<SyndromePartition, CodeError> {
    check_guard(n, max_n)?;
    if d < 2 {
        return Err(CodeError::DistanceTooSmall(2));
    }
    let field = select_prime(n)?;
    let enc = build_pair_encoder(n, field)?;
    let mut classes = par_fold_permutations(
        n,
        BTreeMap::<Vec<u64>, Vec<Vec<usize>>>::new,
        |acc, p| {
            acc.entry(syndrome_values(p, d, &enc)).or_default().push(p.to_vec());
        },
        |mut a, b| {
            for (k, mut v) in b {
                a.entry(k).or_default().append(&mut v);
            }
            a
        },
    );
    // Merge order depends on scheduling; canonicalize.
    classes.par_iter_mut().for_each(|(_, v)| v.sort_unstable());
    let classes = classes
        .into_iter()
        .map(|(k, v)| (k, v.into_iter().map(Permutation::from_vec_unchecked).collect()))
        .collect();
    Ok(SyndromePartition { n, d, field, classes })
}

/// Exhaustive `{π ∈ S_n : F(π) = f}`; empty when `f` is not attained.
pub fn syndrome_class(n: usize, d: usize, f: &Syndrome) -> Result<CodeBook, CodeError> {
    syndrome_class_with_limit(n, d, f, DEFAULT_MAX_N)
}

pub fn syndrome_class_with_limit(n: usize, d: usize, f: &Syndrome, max_n: usize) -> Result<CodeBook, CodeError> {
    check_guard(n, max_n)?;
    let code = SyndromeCode::new(n, d, f.clone())?;
    let mut words = par_fold_permutations(
        n,
        Vec::new,
        |acc: &mut Vec<Vec<usize>>, p| {
            if syndrome_values(p, d, &code.encoder) == f.values {
                acc.push(p.to_vec());
            }
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    );
    words.sort_unstable();
    let words = words.into_iter().map(Permutation::from_vec_unchecked).collect();
    CodeBook::new(n, d, Provenance::Syndrome, words)
}

pub fn largest_syndrome_class(n: usize, d: usize) -> Result<CodeBook, CodeError> {
    largest_syndrome_class_with_limit(n, d, DEFAULT_MAX_N)
}

pub fn largest_syndrome_class_with_limit(n: usize, d: usize, max_n: usize) -> Result<CodeBook, CodeError> {
    let partition = syndrome_partition_with_limit(n, d, max_n)?;
    let (key, _) = partition.largest().expect("S_n is non-empty");
    Ok(partition.codebook(&key.clone()))
}
