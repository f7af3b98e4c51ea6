//! Size-`n` codes at the maximum distance `n - 1`.
//!
//! In such a code the characteristic sets of the codewords are pairwise
//! disjoint, so `n` words of `n - 1` pairs each use all `n(n-1)` ordered pairs
//! exactly once.

use super::{CodeBook, CodeError, Provenance};
use crate::perm::Permutation;

// Residue `r` of a label mod `m`, with 0 rendered as `m`.
fn label(r: usize, m: usize) -> usize {
    match r % m {
        0 => m,
        x => x,
    }
}

/// Step sequence `(1, n-2, 3, n-4, ..., 2, n-1)` for even `n`: odd positions
/// `2i-1` carry `2i-1`, even positions `2i` carry `n - 2i`.
fn even_steps(n: usize) -> Vec<usize> {
    (1..n).map(|k| if k % 2 == 1 { k } else { n - k }).collect()
}

/// For even `n`, the `i`-th word starts at `i` and follows the partial sums of
/// [`even_steps`] modulo `n`.
pub fn even_n_code(n: usize) -> Result<CodeBook, CodeError> {
    if n % 2 == 1 {
        return Err(CodeError::OddN(n));
    }
    if n < 2 {
        return Err(CodeError::NTooSmall(2));
    }
    let steps = even_steps(n);
    let words = (1..=n)
        .map(|i| {
            let mut acc = i;
            let mut image = Vec::with_capacity(n);
            image.push(label(acc, n));
            for &a in &steps {
                acc += a;
                image.push(label(acc, n));
            }
            Permutation::from_one_line(image)
        })
        .collect::<Result<Vec<_>, _>>()?;
    CodeBook::new(n, n - 1, Provenance::Even, words)
}

fn is_prime(m: usize) -> bool {
    m >= 2 && (2..).take_while(|f| f * f <= m).all(|f| !m.is_multiple_of(f))
}

/// For prime `n + 1`, the words are `(i, 2i, ..., ni) mod (n+1)`, `i = 1..=n`.
pub fn zn1_code(n: usize) -> Result<CodeBook, CodeError> {
    if !is_prime(n + 1) {
        return Err(CodeError::CompositeModulus(n + 1));
    }
    let m = n + 1;
    let words = (1..=n)
        .map(|i| Permutation::from_one_line((1..=n).map(|j| i * j % m).collect()))
        .collect::<Result<Vec<_>, _>>()?;
    CodeBook::new(n, n - 1, Provenance::Zn1, words)
}
