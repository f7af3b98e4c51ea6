//! Code constructions and code verification.
//!
//! Every construction returns a [`CodeBook`]: a set of distinct permutations
//! of the same length tagged with the design distance it targets and the
//! construction that produced it. [`verify_min_distance`] computes the true
//! minimum pairwise block distance and records it on the codebook.

mod cyclic;
mod full_distance;
mod hamdecomp;
mod syndrome;

pub use cyclic::{cyclic_class_code, MAX_CYCLIC_N};
pub use full_distance::{even_n_code, zn1_code};
pub use hamdecomp::{ham_decomp_code, ham_decomp_search, HamDecompOutcome, DEFAULT_MAX_HAMDECOMP_N};
pub use syndrome::{
    build_pair_encoder, largest_syndrome_class, largest_syndrome_class_with_limit, select_prime, syndrome,
    syndrome_class, syndrome_class_with_limit, syndrome_partition, syndrome_partition_with_limit, PairEncoder,
    PrimeField, Syndrome, SyndromeCode, SyndromePartition,
};

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enumeration::EnumError;
use crate::perm::{block_distance_unchecked, PermError, Permutation};

/// Largest codebook verified pairwise unless the caller raises it.
pub const DEFAULT_MAX_WORDS: usize = 10_000;

#[derive(Debug, Error)]
pub enum CodeError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error("duplicate codeword {0}")]
    DuplicateWord(Permutation),
    #[error("codeword {word} has length {got}, expected {expected}")]
    WrongLength {
        word: Permutation,
        got: usize,
        expected: usize,
    },
    #[error("{0} codewords exceed the pairwise verification guard of {1}")]
    TooManyWords(usize, usize),
    #[error("n = {0} is odd; this construction needs even n")]
    OddN(usize),
    #[error("n = {0} is even; this construction needs odd n")]
    EvenN(usize),
    #[error("n + 1 = {0} is not prime")]
    CompositeModulus(usize),
    #[error("field size q = {q} is smaller than the {needed} unordered pairs")]
    FieldTooSmall { q: u64, needed: u64 },
    #[error("n must be at least {0}")]
    NTooSmall(usize),
    #[error("design distance must be at least {0}")]
    DistanceTooSmall(usize),
    #[error("syndrome has {got} coordinates, expected {expected}")]
    SyndromeLength { got: usize, expected: usize },
    #[error("syndrome value {value} is not below q = {q}")]
    SyndromeValue { value: u64, q: u64 },
    #[error("malformed codebook: {0}")]
    Format(String),
}

/// Which construction produced a codebook.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Syndrome,
    Cyclic,
    Even,
    Zn1,
    Hamdecomp,
    Greedy,
    Exact,
    File,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Syndrome => "syndrome",
            Provenance::Cyclic => "cyclic",
            Provenance::Even => "even",
            Provenance::Zn1 => "zn1",
            Provenance::Hamdecomp => "hamdecomp",
            Provenance::Greedy => "greedy",
            Provenance::Exact => "exact",
            Provenance::File => "file",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Provenance {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "syndrome" => Provenance::Syndrome,
            "cyclic" => Provenance::Cyclic,
            "even" => Provenance::Even,
            "zn1" => Provenance::Zn1,
            "hamdecomp" => Provenance::Hamdecomp,
            "greedy" => Provenance::Greedy,
            "exact" => Provenance::Exact,
            "file" => Provenance::File,
            other => return Err(CodeError::Format(format!("unknown provenance {other:?}"))),
        })
    }
}

/// A permutation code with its design distance and origin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCodeBook")]
pub struct CodeBook {
    n: usize,
    design_distance: usize,
    provenance: Provenance,
    words: Vec<Permutation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified_min_distance: Option<usize>,
}

#[derive(Deserialize)]
struct RawCodeBook {
    n: usize,
    design_distance: usize,
    provenance: Provenance,
    words: Vec<Permutation>,
    #[serde(default)]
    verified_min_distance: Option<usize>,
}

impl TryFrom<RawCodeBook> for CodeBook {
    type Error = CodeError;

    fn try_from(raw: RawCodeBook) -> Result<Self, Self::Error> {
        let mut book = CodeBook::new(raw.n, raw.design_distance, raw.provenance, raw.words)?;
        if let Some(d) = raw.verified_min_distance {
            if d != book.min_distance_unguarded() {
                return Err(CodeError::Format(format!(
                    "recorded minimum distance {d} does not match the codewords"
                )));
            }
            book.verified_min_distance = Some(d);
        }
        Ok(book)
    }
}

impl CodeBook {
    pub fn new(
        n: usize,
        design_distance: usize,
        provenance: Provenance,
        words: Vec<Permutation>,
    ) -> Result<Self, CodeError> {
        if n == 0 {
            return Err(CodeError::NTooSmall(1));
        }
        let mut seen = HashSet::with_capacity(words.len());
        for w in &words {
            if w.n() != n {
                return Err(CodeError::WrongLength {
                    word: w.clone(),
                    got: w.n(),
                    expected: n,
                });
            }
            if !seen.insert(w) {
                return Err(CodeError::DuplicateWord(w.clone()));
            }
        }
        Ok(CodeBook {
            n,
            design_distance,
            provenance,
            words,
            verified_min_distance: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn design_distance(&self) -> usize {
        self.design_distance
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn words(&self) -> &[Permutation] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn verified_min_distance(&self) -> Option<usize> {
        self.verified_min_distance
    }

    /// True once verified and the minimum distance meets the design distance.
    pub fn meets_design_distance(&self) -> Option<bool> {
        self.verified_min_distance.map(|d| d >= self.design_distance)
    }

    fn min_distance_unguarded(&self) -> usize {
        if self.words.len() <= 1 {
            return self.n;
        }
        let successors: Vec<Vec<usize>> = self.words.iter().map(|w| w.successor()).collect();
        (0..self.words.len())
            .into_par_iter()
            .map(|i| {
                let a = self.words[i].as_slice();
                successors[i + 1..]
                    .iter()
                    .map(|next| block_distance_unchecked(a, next))
                    .min()
                    .unwrap_or(usize::MAX)
            })
            .min()
            .unwrap_or(self.n)
    }

    /// Text format: a header line `n d provenance`, then one codeword per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.n, self.design_distance, self.provenance);
        for w in &self.words {
            s.push_str(&w.to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, CodeError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| CodeError::Format("missing header line".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(CodeError::Format(format!(
                "header must be `n d provenance`, got {header:?}"
            )));
        }
        let n: usize = fields[0]
            .parse()
            .map_err(|_| CodeError::Format(format!("bad n {:?}", fields[0])))?;
        let d: usize = fields[1]
            .parse()
            .map_err(|_| CodeError::Format(format!("bad d {:?}", fields[1])))?;
        let provenance: Provenance = fields[2].parse()?;
        let words = lines.map(|l| l.parse::<Permutation>()).collect::<Result<Vec<_>, _>>()?;
        CodeBook::new(n, d, provenance, words)
    }
}

/// Exact minimum pairwise block distance (`n` when there are fewer than two
/// codewords), stored on the codebook and returned.
pub fn verify_min_distance(code: &mut CodeBook) -> Result<usize, CodeError> {
    verify_min_distance_with_limit(code, DEFAULT_MAX_WORDS)
}

pub fn verify_min_distance_with_limit(code: &mut CodeBook, max_words: usize) -> Result<usize, CodeError> {
    if code.words.len() > max_words {
        return Err(CodeError::TooManyWords(code.words.len(), max_words));
    }
    let d = code.min_distance_unguarded();
    code.verified_min_distance = Some(d);
    Ok(d)
}
