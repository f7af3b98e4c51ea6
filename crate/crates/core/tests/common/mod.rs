//! Independent reference implementations used by the integration tests.
//! Nothing here calls into the library's distance or enumeration code.
#![allow(dead_code)]

/// All permutations of 1..=n in lexicographic order.
pub fn perms(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v + 1);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Smallest number of cuts in `a` whose blocks can be rearranged into `b`.
/// A minimum cut set always yields a minimal block order, since two blocks
/// that stay consecutive could be merged into one with fewer cuts.
pub fn distance_by_cuts(a: &[usize], b: &[usize]) -> usize {
    let n = a.len();
    assert_eq!(n, b.len());
    if n <= 1 {
        return 0;
    }
    let mut best = usize::MAX;
    for mask in 0u32..(1 << (n - 1)) {
        let cuts = mask.count_ones() as usize;
        if cuts >= best {
            continue;
        }
        let mut blocks: Vec<Vec<usize>> = vec![vec![a[0]]];
        for (i, &v) in a.iter().enumerate().skip(1) {
            if mask & (1 << (i - 1)) != 0 {
                blocks.push(Vec::new());
            }
            blocks.last_mut().unwrap().push(v);
        }
        let mut start_of = vec![usize::MAX; n + 1];
        for (bi, blk) in blocks.iter().enumerate() {
            start_of[blk[0]] = bi;
        }
        let mut pos = 0;
        let mut ok = true;
        while pos < n {
            let bi = start_of[b[pos]];
            if bi == usize::MAX {
                ok = false;
                break;
            }
            let blk = &blocks[bi];
            if pos + blk.len() > n || b[pos..pos + blk.len()] != blk[..] {
                ok = false;
                break;
            }
            pos += blk.len();
        }
        if ok {
            best = cuts;
        }
    }
    best
}

/// Count of ordered adjacent pairs of `a` that are not adjacent, in the same
/// order, anywhere in `b` (quadratic position search).
pub fn distance_by_pairs(a: &[usize], b: &[usize]) -> usize {
    let n = a.len();
    (0..n.saturating_sub(1))
        .filter(|&i| !(0..n - 1).any(|j| b[j] == a[i] && b[j + 1] == a[i + 1]))
        .count()
}

pub fn identity(n: usize) -> Vec<usize> {
    (1..=n).collect()
}

/// `sigma` applied after `p`: i -> sigma(p(i)).
pub fn relabel(sigma: &[usize], p: &[usize]) -> Vec<usize> {
    p.iter().map(|&v| sigma[v - 1]).collect()
}

pub fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1u128;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

pub fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|i| i * i <= q).all(|i| !q.is_multiple_of(i))
}

/// Size of a maximum independent set, by plain recursion over independent
/// sets in increasing vertex order.
pub fn max_independent_set(adj: &[Vec<bool>]) -> usize {
    fn rec(adj: &[Vec<bool>], cand: &[usize]) -> usize {
        let mut best = 0;
        for (i, &v) in cand.iter().enumerate() {
            if best >= cand.len() - i {
                break;
            }
            let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&u| !adj[v][u]).collect();
            best = best.max(1 + rec(adj, &next));
        }
        best
    }
    let all: Vec<usize> = (0..adj.len()).collect();
    rec(adj, &all)
}

/// Adjacency matrix of the graph on S_n joining distinct permutations at
/// distance below `d`.
pub fn block_graph(n: usize, d: usize) -> (Vec<Vec<usize>>, Vec<Vec<bool>>) {
    let vs = perms(n);
    let m = vs.len();
    let mut adj = vec![vec![false; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            if distance_by_pairs(&vs[i], &vs[j]) < d {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    (vs, adj)
}

/// Published comparison table: (n, d, sphere-packing estimate, new bound).
pub const PUBLISHED_TABLE: [(u128, u128, u128, u128); 10] = [
    (13, 9, 40320, 24787),
    (15, 11, 362880, 44672),
    (16, 11, 3628800, 762415),
    (17, 11, 39916800, 13771113),
    (17, 13, 3628800, 74696),
    (18, 11, 479001600, 262461363),
    (18, 13, 39916800, 1423607),
    (19, 11, 6227020800, 5263805324),
    (19, 13, 479001600, 28551213),
    (20, 13, 6227020800, 601078154),
];
