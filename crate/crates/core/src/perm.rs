//! Permutations in one-line notation and the block permutation metric.
//!
//! Labels are 1-based throughout: a permutation of length `n` is a
//! rearrangement of `1..=n`. The block permutation distance between two
//! permutations is the number of adjacencies of the first one that are
//! missing from the second (see [`block_distance`]); [`distance_by_definition`]
//! recomputes the same value from the block-cutting definition and serves as
//! an independent oracle.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("empty permutation")]
    Empty,
    #[error("label {label} out of range 1..={n}")]
    OutOfRange { label: usize, n: usize },
    #[error("duplicate label {0}")]
    Duplicate(usize),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("cannot parse label {0:?}")]
    Parse(String),
    #[error("n = {n} exceeds the guard of {max}")]
    GuardExceeded { n: usize, max: usize },
    #[error("invalid adjacency pair ({0}, {0})")]
    LoopPair(usize),
}

/// A permutation of `1..=n` stored as its one-line image.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn from_one_line(values: Vec<usize>) -> Result<Self, PermError> {
        let n = values.len();
        if n == 0 {
            return Err(PermError::Empty);
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n {
                return Err(PermError::OutOfRange { label: v, n });
            }
            if seen[v] {
                return Err(PermError::Duplicate(v));
            }
            seen[v] = true;
        }
        Ok(Permutation { image: values })
    }

    /// Caller guarantees `image` is a rearrangement of `1..=image.len()`.
    pub(crate) fn from_vec_unchecked(image: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_one_line(image.clone()).is_ok());
        Permutation { image }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "identity of S_0");
        Permutation {
            image: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.image
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.image
    }

    /// Value at 1-based position `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `successor()[a]` is the label following `a`, or 0 when `a` is last.
    /// Index 0 is unused.
    pub fn successor(&self) -> Vec<usize> {
        let mut next = vec![0; self.n() + 1];
        for w in self.image.windows(2) {
            next[w[0]] = w[1];
        }
        next
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.image {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Parses space- (or comma-) separated decimal labels.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|tok| !tok.is_empty())
            .map(|tok| tok.parse::<usize>().map_err(|_| PermError::Parse(tok.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::from_one_line(values)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = PermError;

    fn try_from(values: Vec<usize>) -> Result<Self, Self::Error> {
        Permutation::from_one_line(values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.image.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let values = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_one_line(values).map_err(serde::de::Error::custom)
    }
}

fn check_same_n(a: &Permutation, b: &Permutation) -> Result<(), PermError> {
    if a.n() != b.n() {
        return Err(PermError::LengthMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    Ok(())
}

/// `(outer ∘ inner)(i) = outer(inner(i))`.
pub fn compose(outer: &Permutation, inner: &Permutation) -> Result<Permutation, PermError> {
    check_same_n(outer, inner)?;
    let image = inner.image.iter().map(|&i| outer.image[i - 1]).collect();
    Ok(Permutation { image })
}

pub fn inverse(p: &Permutation) -> Permutation {
    let mut image = vec![0; p.n()];
    for (i, &v) in p.image.iter().enumerate() {
        image[v - 1] = i + 1;
    }
    Permutation { image }
}

/// An ordered pair of distinct labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(usize, usize)", into = "(usize, usize)")]
pub struct AdjacencyPair {
    first: usize,
    second: usize,
}

impl AdjacencyPair {
    pub fn new(first: usize, second: usize) -> Result<Self, PermError> {
        if first == second {
            return Err(PermError::LoopPair(first));
        }
        Ok(AdjacencyPair { first, second })
    }

    pub fn first(&self) -> usize {
        self.first
    }

    pub fn second(&self) -> usize {
        self.second
    }
}

impl TryFrom<(usize, usize)> for AdjacencyPair {
    type Error = PermError;

    fn try_from((a, b): (usize, usize)) -> Result<Self, Self::Error> {
        AdjacencyPair::new(a, b)
    }
}

impl From<AdjacencyPair> for (usize, usize) {
    fn from(p: AdjacencyPair) -> Self {
        (p.first, p.second)
    }
}

/// The set of ordered adjacent pairs of a permutation, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCharSet")]
pub struct CharSet {
    n: usize,
    pairs: BTreeSet<AdjacencyPair>,
}

#[derive(Deserialize)]
struct RawCharSet {
    n: usize,
    pairs: BTreeSet<AdjacencyPair>,
}

impl TryFrom<RawCharSet> for CharSet {
    type Error = String;

    fn try_from(raw: RawCharSet) -> Result<Self, Self::Error> {
        let cs = CharSet {
            n: raw.n,
            pairs: raw.pairs,
        };
        if !cs.is_path_forest() {
            return Err("pairs do not form disjoint directed paths on 1..=n".into());
        }
        Ok(cs)
    }
}

impl CharSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, pair: &AdjacencyPair) -> bool {
        self.pairs.contains(pair)
    }

    pub fn iter(&self) -> impl Iterator<Item = &AdjacencyPair> {
        self.pairs.iter()
    }

    pub fn difference<'a>(&'a self, other: &'a CharSet) -> impl Iterator<Item = &'a AdjacencyPair> {
        self.pairs.difference(&other.pairs)
    }

    /// True when every label has at most one outgoing and one incoming pair and
    /// the pairs contain no directed cycle, i.e. they form disjoint directed paths.
    pub fn is_path_forest(&self) -> bool {
        let mut out = vec![0usize; self.n + 1];
        let mut indeg = vec![0u8; self.n + 1];
        for p in &self.pairs {
            if p.first > self.n || p.second > self.n {
                return false;
            }
            if out[p.first] != 0 || indeg[p.second] != 0 {
                return false;
            }
            out[p.first] = p.second;
            indeg[p.second] = 1;
        }
        // Walk from every source; anything left unvisited lies on a cycle.
        let mut visited = vec![false; self.n + 1];
        for (start, &deg) in indeg.iter().enumerate().skip(1) {
            if deg == 0 {
                let mut v = start;
                while v != 0 && !visited[v] {
                    visited[v] = true;
                    v = out[v];
                }
            }
        }
        visited.iter().skip(1).all(|&v| v)
    }

    /// True when the pairs form a single directed Hamiltonian path on `1..=n`.
    pub fn is_hamiltonian_path(&self) -> bool {
        self.pairs.len() + 1 == self.n && self.is_path_forest()
    }
}

pub fn char_set(p: &Permutation) -> CharSet {
    let pairs = p
        .image
        .windows(2)
        .map(|w| AdjacencyPair {
            first: w[0],
            second: w[1],
        })
        .collect();
    CharSet { n: p.n(), pairs }
}

/// Block permutation distance `|A(p1) \ A(p2)|`, computed in O(n).
pub fn block_distance(p1: &Permutation, p2: &Permutation) -> Result<usize, PermError> {
    check_same_n(p1, p2)?;
    Ok(block_distance_unchecked(p1.as_slice(), &p2.successor()))
}

/// Distance from `p1` to the permutation whose successor table is `next2`.
#[inline]
pub(crate) fn block_distance_unchecked(p1: &[usize], next2: &[usize]) -> usize {
    p1.windows(2).filter(|w| next2[w[0]] != w[1]).count()
}

/// Distance to the identity: the number of positions where `p(i+1) != p(i) + 1`.
#[inline]
pub(crate) fn distance_to_identity(p: &[usize]) -> usize {
    p.windows(2).filter(|w| w[1] != w[0] + 1).count()
}

/// Membership in `D_n`: no adjacent entries that are consecutive increasing labels.
pub fn is_minimal(p: &Permutation) -> bool {
    distance_to_identity(&p.image) + 1 == p.n()
}

pub const DEFINITION_ORACLE_MAX_N: usize = 10;

/// Recomputes the distance by searching for the fewest cuts of `p1` into
/// blocks that can be reordered by a minimal permutation to produce `p2`.
///
/// Cut sets are tried in order of increasing size; for each, every block order
/// is explored with prefixes pruned as soon as they disagree with `p2`, and a
/// complete order is accepted only when it is minimal.
pub fn distance_by_definition(p1: &Permutation, p2: &Permutation) -> Result<usize, PermError> {
    check_same_n(p1, p2)?;
    let n = p1.n();
    if n > DEFINITION_ORACLE_MAX_N {
        return Err(PermError::GuardExceeded {
            n,
            max: DEFINITION_ORACLE_MAX_N,
        });
    }
    for cuts in 0..n {
        let mut positions = Vec::with_capacity(cuts);
        if search_cut_sets(p1.as_slice(), p2.as_slice(), cuts, 1, &mut positions) {
            return Ok(cuts);
        }
    }
    unreachable!("cutting into singletons always reaches any permutation")
}

// Chooses `remaining` more cut positions (a cut at `c` separates index c-1 from c).
fn search_cut_sets(p1: &[usize], p2: &[usize], remaining: usize, from: usize, positions: &mut Vec<usize>) -> bool {
    if remaining == 0 {
        let mut bounds = Vec::with_capacity(positions.len() + 2);
        bounds.push(0);
        bounds.extend_from_slice(positions);
        bounds.push(p1.len());
        let blocks: Vec<&[usize]> = bounds.windows(2).map(|w| &p1[w[0]..w[1]]).collect();
        let mut order = Vec::with_capacity(blocks.len());
        let mut used = vec![false; blocks.len()];
        return search_block_orders(&blocks, p2, 0, &mut used, &mut order);
    }
    let n = p1.len();
    for c in from..n {
        if n - c < remaining {
            break;
        }
        positions.push(c);
        if search_cut_sets(p1, p2, remaining - 1, c + 1, positions) {
            return true;
        }
        positions.pop();
    }
    false
}

fn search_block_orders(
    blocks: &[&[usize]],
    target: &[usize],
    offset: usize,
    used: &mut [bool],
    order: &mut Vec<usize>,
) -> bool {
    if order.len() == blocks.len() {
        // Block order as a permutation of 1..=k must be minimal.
        return order.windows(2).all(|w| w[1] != w[0] + 1);
    }
    for b in 0..blocks.len() {
        if used[b] {
            continue;
        }
        let block = blocks[b];
        if target[offset..offset + block.len()] != *block {
            continue;
        }
        used[b] = true;
        order.push(b);
        if search_block_orders(blocks, target, offset + block.len(), used, order) {
            return true;
        }
        order.pop();
        used[b] = false;
    }
    false
}

/// All `n` rotations of `p`, starting with `p` itself.
pub fn cyclic_shifts(p: &Permutation) -> Vec<Permutation> {
    let n = p.n();
    (0..n)
        .map(|t| {
            let mut image = Vec::with_capacity(n);
            image.extend_from_slice(&p.image[t..]);
            image.extend_from_slice(&p.image[..t]);
            Permutation { image }
        })
        .collect()
}

/// Lexicographic successor in place; returns false after the last permutation.
pub(crate) fn next_lex(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
