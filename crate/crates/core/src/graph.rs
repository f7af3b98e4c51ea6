//! Block permutation graphs at desk scale.
//!
//! `G_{n,d}` has a vertex per permutation and an edge between two distinct
//! permutations at block distance below `d`; its independent sets are exactly
//! the codes with minimum distance `d`. By left-invariance every vertex looks
//! like the identity, so neighbourhood statistics are measured there only.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{verify_min_distance_with_limit, CodeBook, CodeError, Provenance};
use crate::enumeration::{all_permutations, check_guard, factorial, EnumError};
use crate::perm::{block_distance_unchecked, distance_to_identity, PermError, Permutation};

pub const DEFAULT_MAX_GRAPH_N: usize = 7;
pub const DEFAULT_MAX_EXACT_VERTICES: usize = 1000;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("{0} vertices exceed the exact-solver guard of {1}")]
    TooManyVertices(usize, usize),
    #[error("formula needs delta >= 2 and P >= 1 (delta = {delta}, P = {p_edges})")]
    UndefinedLog { delta: usize, p_edges: u64 },
}

/// Graph on a list of permutations with edges for `0 < d_B < d`.
#[derive(Debug, Clone)]
pub struct BlockGraph {
    n: usize,
    d: usize,
    vertices: Vec<Permutation>,
    adjacency: Vec<Vec<u32>>,
}

impl BlockGraph {
    /// Induced graph on an arbitrary vertex list (kept in the given order).
    pub fn induced(n: usize, d: usize, vertices: Vec<Permutation>) -> Result<Self, GraphError> {
        for v in &vertices {
            if v.n() != n {
                return Err(PermError::LengthMismatch { left: v.n(), right: n }.into());
            }
        }
        let successors: Vec<Vec<usize>> = vertices.iter().map(|v| v.successor()).collect();
        let adjacency = (0..vertices.len())
            .into_par_iter()
            .map(|i| {
                let a = vertices[i].as_slice();
                successors
                    .iter()
                    .enumerate()
                    .filter(|&(j, next)| {
                        if i == j {
                            return false;
                        }
                        let dist = block_distance_unchecked(a, next);
                        dist > 0 && dist < d
                    })
                    .map(|(j, _)| j as u32)
                    .collect()
            })
            .collect();
        Ok(BlockGraph {
            n,
            d,
            vertices,
            adjacency,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&(v as u32)).is_ok()
    }

    /// The common degree, if every vertex has the same one.
    pub fn regular_degree(&self) -> Option<usize> {
        let first = self.adjacency.first().map(Vec::len)?;
        self.adjacency.iter().all(|a| a.len() == first).then_some(first)
    }
}

pub fn build_graph(n: usize, d: usize) -> Result<BlockGraph, GraphError> {
    build_graph_with_limit(n, d, DEFAULT_MAX_GRAPH_N)
}

/// `G_{n,d}` on all of `S_n`, vertices in lexicographic order.
pub fn build_graph_with_limit(n: usize, d: usize, max_n: usize) -> Result<BlockGraph, GraphError> {
    check_guard(n, max_n)?;
    BlockGraph::induced(n, d, all_permutations(n))
}

/// Number of identity adjacencies `(i, i+1)` missing from both permutations.
pub fn x_value(p1: &Permutation, p2: &Permutation) -> Result<usize, PermError> {
    if p1.n() != p2.n() {
        return Err(PermError::LengthMismatch {
            left: p1.n(),
            right: p2.n(),
        });
    }
    let (s1, s2) = (p1.successor(), p2.successor());
    Ok((1..p1.n()).filter(|&i| s1[i] != i + 1 && s2[i] != i + 1).count())
}

/// Statistics of the identity's neighbourhood in `G_{n,d}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodStats {
    pub n: usize,
    pub d: usize,
    pub delta: usize,
    /// Edges of the subgraph induced by the identity's neighbours.
    pub p_edges: u64,
    /// Triangles inside that induced subgraph.
    #[serde(rename = "triangles")]
    pub triangle_count: u64,
    /// Edges between two permutations at distance exactly `d - 1` from the
    /// identity that share no missing identity adjacency. Expected to be 0.
    #[serde(rename = "zero_x_edges")]
    pub zero_x_edge_count: u64,
}

pub fn neighborhood_stats(n: usize, d: usize) -> Result<NeighborhoodStats, GraphError> {
    neighborhood_stats_with_limit(n, d, DEFAULT_MAX_GRAPH_N)
}

pub fn neighborhood_stats_with_limit(n: usize, d: usize, max_n: usize) -> Result<NeighborhoodStats, GraphError> {
    check_guard(n, max_n)?;
    let hood: Vec<Permutation> = all_permutations(n)
        .into_iter()
        .filter(|p| {
            let k = distance_to_identity(p.as_slice());
            k > 0 && k < d
        })
        .collect();
    let delta = hood.len();
    let h = BlockGraph::induced(n, d, hood)?;
    let p_edges = h.edge_count() as u64;

    let bits: Vec<Bitset> = (0..delta)
        .map(|v| Bitset::from_indices(delta, h.neighbors(v)))
        .collect();
    let triangle_count: u64 = (0..delta)
        .into_par_iter()
        .map(|u| {
            let mut count = 0u64;
            for &v in h.neighbors(u) {
                let v = v as usize;
                if v > u {
                    count += bits[u].intersection_count_above(&bits[v], v) as u64;
                }
            }
            count
        })
        .sum();

    let id_succ: Vec<usize> = (0..=n).map(|i| if i < n { i + 1 } else { 0 }).collect();
    let outer: Vec<usize> = (0..delta)
        .filter(|&v| d >= 2 && distance_to_identity(h.vertices()[v].as_slice()) == d - 1)
        .collect();
    let missing: Vec<Vec<bool>> = h
        .vertices()
        .iter()
        .map(|p| {
            let s = p.successor();
            (1..n).map(|i| s[i] != id_succ[i]).collect()
        })
        .collect();
    let zero_x_edge_count = outer
        .par_iter()
        .map(|&u| {
            h.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(|&v| v > u && outer.binary_search(&v).is_ok())
                .filter(|&v| !missing[u].iter().zip(&missing[v]).any(|(a, b)| *a && *b))
                .count() as u64
        })
        .sum();

    Ok(NeighborhoodStats {
        n,
        d,
        delta,
        p_edges,
        triangle_count,
        zero_x_edge_count,
    })
}

/// Right-hand side of the sparse-neighbourhood independence bound
/// `|V| / (10Δ) · (log2 Δ − ½ log2(P / 3))` with `|V| = n!`.
pub fn jv_lower_formula(stats: &NeighborhoodStats) -> Result<f64, GraphError> {
    let vertex_count = factorial(stats.n).to_string().parse::<f64>().expect("finite");
    jv_formula_value(vertex_count, stats.delta, stats.p_edges)
}

pub fn jv_formula_value(vertex_count: f64, delta: usize, p_edges: u64) -> Result<f64, GraphError> {
    if delta < 2 || p_edges < 1 {
        return Err(GraphError::UndefinedLog { delta, p_edges });
    }
    let delta_f = delta as f64;
    Ok(vertex_count / (10.0 * delta_f) * (delta_f.log2() - 0.5 * (p_edges as f64 / 3.0).log2()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GreedyOrder {
    /// Vertex index order (lexicographic for full graphs).
    Lexicographic,
    /// Ascending degree, ties by index.
    Degree,
}

fn indices_to_codebook(g: &BlockGraph, picked: &[usize], provenance: Provenance) -> Result<CodeBook, GraphError> {
    let words = picked.iter().map(|&i| g.vertices[i].clone()).collect();
    let mut code = CodeBook::new(g.n, g.d, provenance, words)?;
    verify_min_distance_with_limit(&mut code, usize::MAX)?;
    Ok(code)
}

fn greedy_indices(g: &BlockGraph, order: GreedyOrder) -> Vec<usize> {
    let mut sequence: Vec<usize> = (0..g.vertex_count()).collect();
    if order == GreedyOrder::Degree {
        sequence.sort_by_key(|&v| (g.degree(v), v));
    }
    let mut blocked = vec![false; g.vertex_count()];
    let mut picked = Vec::new();
    for v in sequence {
        if blocked[v] {
            continue;
        }
        picked.push(v);
        blocked[v] = true;
        for &u in g.neighbors(v) {
            blocked[u as usize] = true;
        }
    }
    picked.sort_unstable();
    picked
}

/// A maximal independent set, returned as a verified codebook.
pub fn greedy_independent_set(g: &BlockGraph, order: GreedyOrder) -> Result<CodeBook, GraphError> {
    let picked = greedy_indices(g, order);
    indices_to_codebook(g, &picked, Provenance::Greedy)
}

pub fn exact_independent_set(g: &BlockGraph) -> Result<CodeBook, GraphError> {
    exact_independent_set_with_limit(g, DEFAULT_MAX_EXACT_VERTICES)
}

/// Maximum independent set by branch and bound.
///
/// Branches on the candidate of highest remaining degree (lowest index on
/// ties): either it joins the set, removing its neighbours, or it is dropped.
/// A greedy clique cover of the candidates bounds how many more vertices any
/// completion can add.
pub fn exact_independent_set_with_limit(g: &BlockGraph, max_vertices: usize) -> Result<CodeBook, GraphError> {
    let nv = g.vertex_count();
    if nv > max_vertices {
        return Err(GraphError::TooManyVertices(nv, max_vertices));
    }
    let adj: Vec<Bitset> = (0..nv).map(|v| Bitset::from_indices(nv, g.neighbors(v))).collect();
    let mut best = greedy_indices(g, GreedyOrder::Degree);
    let mut current = Vec::new();
    let all = Bitset::full(nv);
    branch(&adj, &mut current, all, &mut best);
    best.sort_unstable();
    indices_to_codebook(g, &best, Provenance::Exact)
}

fn branch(adj: &[Bitset], current: &mut Vec<usize>, candidates: Bitset, best: &mut Vec<usize>) {
    if candidates.is_empty() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    if current.len() + clique_cover_bound(adj, &candidates) <= best.len() {
        return;
    }
    let mut pick = usize::MAX;
    let mut pick_degree = 0usize;
    for v in candidates.iter() {
        let deg = adj[v].intersection_count(&candidates);
        if pick == usize::MAX || deg > pick_degree {
            pick = v;
            pick_degree = deg;
        }
    }
    let mut with = candidates.clone();
    with.remove(pick);
    with.subtract(&adj[pick]);
    current.push(pick);
    branch(adj, current, with, best);
    current.pop();
    if pick_degree == 0 {
        // An isolated candidate is always worth taking.
        return;
    }
    let mut without = candidates;
    without.remove(pick);
    branch(adj, current, without, best);
}

// An independent set meets each clique at most once.
fn clique_cover_bound(adj: &[Bitset], candidates: &Bitset) -> usize {
    let mut remaining = candidates.clone();
    let mut cliques = 0;
    while let Some(u) = remaining.first() {
        remaining.remove(u);
        let mut extendable = remaining.clone();
        extendable.intersect(&adj[u]);
        while let Some(w) = extendable.first() {
            remaining.remove(w);
            extendable.remove(w);
            extendable.intersect(&adj[w]);
        }
        cliques += 1;
    }
    cliques
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    fn empty(len: usize) -> Self {
        Bitset {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn full(len: usize) -> Self {
        let mut b = Bitset::empty(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    fn from_indices(len: usize, indices: &[u32]) -> Self {
        let mut b = Bitset::empty(len);
        for &i in indices {
            b.insert(i as usize);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, &w)| k * 64 + w.trailing_zeros() as usize)
    }

    fn intersect(&mut self, other: &Bitset) {
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a &= b);
    }

    fn subtract(&mut self, other: &Bitset) {
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a &= !b);
    }

    fn intersection_count(&self, other: &Bitset) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    // Common members strictly greater than `floor`.
    fn intersection_count_above(&self, other: &Bitset, floor: usize) -> usize {
        let start = (floor + 1) / 64;
        self.words
            .iter()
            .zip(&other.words)
            .enumerate()
            .skip(start)
            .map(|(k, (a, b))| {
                let mut w = a & b;
                if k == start {
                    let shift = (floor + 1) % 64;
                    w &= !0u64 << shift;
                }
                w.count_ones() as usize
            })
            .sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(k * 64 + bit)
            })
        })
    }
}
