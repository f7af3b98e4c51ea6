//! Size-`n` distance-`(n-1)` codes for odd `n` via directed Hamiltonian
//! decompositions of the complete digraph on `[n] ∪ {∞}`.
//!
//! Closing a permutation with the arcs `∞ → π(1)` and `π(n) → ∞` gives a
//! Hamiltonian cycle through `∞`. A set of `n` such cycles using all
//! `n(n+1)` arcs exactly once is the same thing as `n` words with pairwise
//! disjoint characteristic sets.
//!
//! The search relabels so that the first cycle is `∞ 1 2 ... n`. Every cycle
//! leaves `∞` exactly once, so cycle `k` is the one that starts `∞ → k`.
//! Cycles are grown arc by arc with bitmask bookkeeping; a branch is cut when
//! some unvisited vertex (or `∞`) can no longer be entered from the part of
//! the current cycle that is still open.

use super::{CodeBook, CodeError, Provenance};
use crate::perm::Permutation;

pub const DEFAULT_MAX_HAMDECOMP_N: usize = 9;

#[derive(Debug, Clone)]
pub enum HamDecompOutcome {
    Found {
        code: CodeBook,
        nodes: u64,
    },
    /// The search space was exhausted without a decomposition.
    NotFound {
        nodes: u64,
    },
}

impl HamDecompOutcome {
    pub fn code(&self) -> Option<&CodeBook> {
        match self {
            HamDecompOutcome::Found { code, .. } => Some(code),
            HamDecompOutcome::NotFound { .. } => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            HamDecompOutcome::Found { nodes, .. } | HamDecompOutcome::NotFound { nodes } => *nodes,
        }
    }
}

pub fn ham_decomp_code(n: usize) -> Result<HamDecompOutcome, CodeError> {
    ham_decomp_search(n, DEFAULT_MAX_HAMDECOMP_N)
}

pub fn ham_decomp_search(n: usize, max_n: usize) -> Result<HamDecompOutcome, CodeError> {
    if n.is_multiple_of(2) {
        return Err(CodeError::EvenN(n));
    }
    if n > max_n || n > 31 {
        return Err(crate::enumeration::EnumError::GuardExceeded { n, max: max_n.min(31) }.into());
    }
    if n == 1 {
        let code = CodeBook::new(1, 0, Provenance::Hamdecomp, vec![Permutation::identity(1)])?;
        return Ok(HamDecompOutcome::Found { code, nodes: 0 });
    }
    let mut search = Search::new(n);
    let found = search.run();
    let nodes = search.nodes;
    if !found {
        return Ok(HamDecompOutcome::NotFound { nodes });
    }
    let words = search
        .cycles
        .into_iter()
        .map(Permutation::from_one_line)
        .collect::<Result<Vec<_>, _>>()?;
    let code = CodeBook::new(n, n - 1, Provenance::Hamdecomp, words)?;
    Ok(HamDecompOutcome::Found { code, nodes })
}

// Vertex 0 is ∞, labels are 1..=n.
struct Search {
    n: usize,
    // unused_in[v]: bitmask of u with arc u -> v still free.
    unused_in: Vec<u32>,
    cycles: Vec<Vec<usize>>,
    nodes: u64,
}

impl Search {
    fn new(n: usize) -> Self {
        let all: u32 = ((1u64 << (n + 1)) - 1) as u32;
        let unused_in = (0..=n).map(|v| all & !(1 << v)).collect();
        Search {
            n,
            unused_in,
            cycles: Vec::with_capacity(n),
            nodes: 0,
        }
    }

    fn take(&mut self, u: usize, v: usize) {
        debug_assert!(self.unused_in[v] & (1 << u) != 0);
        self.unused_in[v] &= !(1 << u);
    }

    fn give(&mut self, u: usize, v: usize) {
        self.unused_in[v] |= 1 << u;
    }

    fn is_free(&self, u: usize, v: usize) -> bool {
        self.unused_in[v] & (1 << u) != 0
    }

    fn run(&mut self) -> bool {
        // First cycle fixed to ∞ 1 2 ... n ∞.
        let first: Vec<usize> = (1..=self.n).collect();
        self.take(0, 1);
        for w in first.windows(2) {
            self.take(w[0], w[1]);
        }
        self.take(self.n, 0);
        self.cycles.push(first);
        self.next_cycle(2)
    }

    fn next_cycle(&mut self, k: usize) -> bool {
        if k > self.n {
            return true;
        }
        self.take(0, k);
        let labels: u32 = (((1u64 << (self.n + 1)) - 1) as u32) & !1;
        let mut path = vec![k];
        if self.extend(k, labels & !(1 << k), &mut path) {
            return true;
        }
        self.give(0, k);
        false
    }

    // `open` holds the labels not yet on the current cycle.
    fn extend(&mut self, u: usize, open: u32, path: &mut Vec<usize>) -> bool {
        self.nodes += 1;
        if open == 0 {
            if !self.is_free(u, 0) {
                return false;
            }
            self.take(u, 0);
            self.cycles.push(path.clone());
            if self.next_cycle(path[0] + 1) {
                return true;
            }
            self.cycles.pop();
            self.give(u, 0);
            return false;
        }
        let reachable_from = open | (1 << u);
        // Every open label and ∞ must still be enterable from the open part.
        if self.unused_in[0] & open == 0 {
            return false;
        }
        let mut rest = open;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.unused_in[v] & reachable_from == 0 {
                return false;
            }
        }
        let mut candidates = open;
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            if !self.is_free(u, v) {
                continue;
            }
            self.take(u, v);
            path.push(v);
            if self.extend(v, open & !(1 << v), path) {
                return true;
            }
            path.pop();
            self.give(u, v);
        }
        false
    }
}
