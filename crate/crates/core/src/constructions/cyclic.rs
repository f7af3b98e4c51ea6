//! Distance-2 code: one representative per rotation class.

use super::{CodeBook, CodeError, Provenance};
use crate::perm::{next_lex, Permutation};

/// Largest `n` for which the `(n-1)!` representatives are materialized.
pub const MAX_CYCLIC_N: usize = 10;

/// Every permutation ending in `n`. Each rotation class contains exactly one,
/// and permutations at distance 1 are rotations of each other, so the result
/// is an `(n, 2)` code of size `(n-1)!`.
pub fn cyclic_class_code(n: usize) -> Result<CodeBook, CodeError> {
    if n < 2 {
        return Err(CodeError::NTooSmall(2));
    }
    if n > MAX_CYCLIC_N {
        return Err(crate::enumeration::EnumError::GuardExceeded { n, max: MAX_CYCLIC_N }.into());
    }
    let mut prefix: Vec<usize> = (1..n).collect();
    let mut words = Vec::new();
    loop {
        let mut image = prefix.clone();
        image.push(n);
        words.push(Permutation::from_vec_unchecked(image));
        if !next_lex(&mut prefix) {
            break;
        }
    }
    CodeBook::new(n, 2, Provenance::Cyclic, words)
}
