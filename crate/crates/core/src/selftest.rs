//! End-to-end checks run by `blockperm selftest`.
//!
//! Each check exercises the library at desk scale and reports pass, fail or
//! skip. Checks whose instances exceed the configured `max_n` are skipped.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::bounds::{check_table1, parse_table1, Table1Expectation, PUBLISHED_TABLE1_CSV};
use crate::constructions::{
    even_n_code, ham_decomp_code, syndrome_partition_with_limit, verify_min_distance, zn1_code, CodeBook,
    HamDecompOutcome,
};
use crate::enumeration::{
    all_permutations, ball_bound_hypothesis, ball_size_bounds, enumerate_spheres_with_limit, factorial, myers_count,
};
use crate::graph::{build_graph_with_limit, exact_independent_set, jv_lower_formula, neighborhood_stats_with_limit};
use crate::perm::{block_distance, char_set, compose, distance_by_definition, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub id: usize,
    pub title: &'static str,
    pub status: Status,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2}. {} ({:.2?}): {}",
            self.status, self.id, self.title, self.elapsed, self.detail
        )
    }
}

#[derive(Debug, Clone)]
pub struct SelftestConfig {
    /// Largest `n` any check may enumerate.
    pub max_n: usize,
    pub table1: Vec<Table1Expectation>,
    pub seed: u64,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            max_n: 7,
            table1: parse_table1(PUBLISHED_TABLE1_CSV).expect("bundled table parses"),
            seed: 0x5eed,
        }
    }
}

type CheckResult = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub const CHECK_TITLES: [&str; 10] = [
    "worked example distance",
    "sphere counts match closed form",
    "ball sandwich",
    "comparison table reproduction",
    "syndrome classes are codes",
    "maximum-distance constructions",
    "exact independence numbers",
    "graph regularity and zero-x edges",
    "metric axioms",
    "independence formula plug-in",
];

// Largest n each check needs.
const CHECK_MAX_N: [usize; 10] = [1, 7, 7, 1, 7, 7, 5, 7, 7, 4];

pub fn run_selftest(config: &SelftestConfig) -> Vec<CheckOutcome> {
    (1..=10).map(|id| run_check(id, config)).collect()
}

pub fn run_check(id: usize, config: &SelftestConfig) -> CheckOutcome {
    let title = CHECK_TITLES[id - 1];
    let needed = CHECK_MAX_N[id - 1];
    let start = Instant::now();
    if needed > config.max_n {
        return CheckOutcome {
            id,
            title,
            status: Status::Skip,
            detail: format!("needs n up to {needed}, guard is {}", config.max_n),
            elapsed: start.elapsed(),
        };
    }
    let result = match id {
        1 => check_worked_example(),
        2 => check_sphere_counts(),
        3 => check_ball_sandwich(),
        4 => check_table(&config.table1),
        5 => check_syndrome_classes(config.seed),
        6 => check_max_distance_codes(),
        7 => check_independence_numbers(),
        8 => check_graph_structure(),
        9 => check_metric_axioms(config.seed),
        10 => check_formula_plugin(),
        _ => Err(format!("no check {id}")),
    };
    let elapsed = start.elapsed();
    let (status, detail) = match result {
        Ok(d) => (Status::Pass, d),
        Err(d) => (Status::Fail, d),
    };
    CheckOutcome {
        id,
        title,
        status,
        detail,
        elapsed,
    }
}

fn p(s: &str) -> Permutation {
    s.parse().expect("literal permutation")
}

fn check_worked_example() -> CheckResult {
    let start = Instant::now();
    let a = p("4 8 3 2 6 7 5 1 9");
    let b = p("6 7 8 3 2 5 1 9 4");
    let fast = block_distance(&a, &b).map_err(|e| e.to_string())?;
    let slow = distance_by_definition(&a, &b).map_err(|e| e.to_string())?;
    ensure(fast == 3 && slow == 3, || format!("got {fast} and {slow}, expected 3"))?;
    ensure(start.elapsed() < Duration::from_secs(1), || "took over 1 s".into())?;
    Ok("distance 3 by both routes".into())
}

fn check_sphere_counts() -> CheckResult {
    for n in 3..=7 {
        let profile = enumerate_spheres_with_limit(n, n).map_err(|e| e.to_string())?;
        ensure(BigUint::from(profile.total()) == factorial(n), || {
            format!("n = {n}: mass {}", profile.total())
        })?;
        for k in 1..n {
            let formula = myers_count(n, k).map_err(|e| e.to_string())?;
            ensure(formula == BigUint::from(profile.counts[k]), || {
                format!(
                    "n = {n}, k = {k}: enumerated {} vs formula {formula}",
                    profile.counts[k]
                )
            })?;
        }
    }
    Ok("n = 3..7 all k agree".into())
}

fn check_ball_sandwich() -> CheckResult {
    let mut checked = 0;
    for n in 1..=7 {
        let profile = enumerate_spheres_with_limit(n, n).map_err(|e| e.to_string())?;
        for t in 0..n {
            if !ball_bound_hypothesis(n, t) {
                continue;
            }
            let (lo, hi) = ball_size_bounds(n, t).map_err(|e| e.to_string())?;
            let ball = BigUint::from(profile.ball(t));
            ensure(lo <= ball && ball <= hi, || {
                format!("n = {n}, t = {t}: {lo} <= {ball} <= {hi} fails")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (n, t) pairs bracketed"))
}

fn check_table(expected: &[Table1Expectation]) -> CheckResult {
    let start = Instant::now();
    let checks = check_table1(expected).map_err(|e| e.to_string())?;
    let failing: Vec<String> = checks
        .iter()
        .filter(|c| !c.passes())
        .map(|c| {
            format!(
                "({},{}) sp {} vs {}, new floor {} vs {} (gap {})",
                c.row.n,
                c.row.d,
                c.row.sp_estimate,
                c.expected.sphere_packing,
                c.row.new_upper.floor,
                c.expected.new_bound,
                c.new_bound_gap
            )
        })
        .collect();
    ensure(checks.len() == 10, || format!("expected 10 rows, got {}", checks.len()))?;
    ensure(failing.is_empty(), || failing.join("; "))?;
    ensure(start.elapsed() < Duration::from_secs(1), || "took over 1 s".into())?;
    Ok("10 rows within tolerance".into())
}

fn min_distance(code: &CodeBook) -> Result<usize, String> {
    let mut code = code.clone();
    verify_min_distance(&mut code).map_err(|e| e.to_string())
}

fn check_syndrome_classes(seed: u64) -> CheckResult {
    for (n, d) in [(5, 3), (5, 4), (6, 3), (6, 4)] {
        let part = syndrome_partition_with_limit(n, d, n).map_err(|e| e.to_string())?;
        ensure(BigUint::from(part.total()) == factorial(n), || {
            format!("({n},{d}): classes cover {}", part.total())
        })?;
        for key in part.classes.keys() {
            let m = min_distance(&part.codebook(key))?;
            ensure(m >= d, || format!("({n},{d}): class {key:?} has distance {m}"))?;
        }
        let q = BigUint::from(part.field.modulus());
        let floor = Integer::div_ceil(&factorial(n), &q.pow(d as u32 - 1));
        let largest = part.largest().map(|(_, v)| v.len()).unwrap_or(0);
        ensure(BigUint::from(largest) >= floor, || {
            format!("({n},{d}): largest {largest} < {floor}")
        })?;
    }
    let part = syndrome_partition_with_limit(7, 3, 7).map_err(|e| e.to_string())?;
    ensure(part.total() == 5040, || "S_7 classes do not cover the group".into())?;
    let largest = part.largest().map(|(_, v)| v.len()).unwrap_or(0);
    ensure(largest >= 10, || format!("(7,3): largest {largest} < 10"))?;
    let classes: Vec<&Vec<Permutation>> = part.classes.values().filter(|c| c.len() >= 2).collect();
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..100_000 {
        let class = classes[rng.gen_range(0..classes.len())];
        let i = rng.gen_range(0..class.len());
        let mut j = rng.gen_range(0..class.len() - 1);
        if j >= i {
            j += 1;
        }
        let dist = block_distance(&class[i], &class[j]).unwrap();
        ensure(dist >= 3, || {
            format!("(7,3): {} and {} at distance {dist}", class[i], class[j])
        })?;
    }
    Ok("n = 5,6 exhaustive; n = 7 100000 sampled pairs".into())
}

fn partitions_ordered_pairs(code: &CodeBook) -> bool {
    let n = code.n();
    let mut seen = vec![false; (n + 1) * (n + 1)];
    for w in code.words() {
        for pair in char_set(w).iter() {
            let slot = pair.first() * (n + 1) + pair.second();
            if seen[slot] {
                return false;
            }
            seen[slot] = true;
        }
    }
    code.words().len() * (n - 1) == n * (n - 1)
}

fn check_max_distance_codes() -> CheckResult {
    let mut built = Vec::new();
    for n in [4, 6, 8, 10, 12] {
        built.push(even_n_code(n).map_err(|e| e.to_string())?);
    }
    for n in [4, 6, 10, 12] {
        built.push(zn1_code(n).map_err(|e| e.to_string())?);
    }
    for code in &built {
        let n = code.n();
        let m = min_distance(code)?;
        ensure(code.len() == n && m == n - 1, || {
            format!("{} n = {n}: {} words at distance {m}", code.provenance(), code.len())
        })?;
        ensure(partitions_ordered_pairs(code), || {
            format!("{} n = {n}: pairs not partitioned", code.provenance())
        })?;
    }
    match ham_decomp_code(7).map_err(|e| e.to_string())? {
        HamDecompOutcome::Found { code, .. } => {
            let m = min_distance(&code)?;
            ensure(code.len() == 7 && m == 6, || {
                format!("n = 7: {} words at distance {m}", code.len())
            })?;
        }
        HamDecompOutcome::NotFound { .. } => return Err("n = 7: no decomposition found".into()),
    }
    for n in [3, 5] {
        let outcome = ham_decomp_code(n).map_err(|e| e.to_string())?;
        ensure(outcome.code().is_none(), || {
            format!("n = {n}: unexpected decomposition")
        })?;
    }
    Ok("even 4..12, zn1 4,6,10,12, decomposition 7 found, 3 and 5 absent".into())
}

fn check_independence_numbers() -> CheckResult {
    for (n, d, expected) in [(3, 2, 2), (4, 2, 6), (5, 4, 4)] {
        let g = build_graph_with_limit(n, d, n).map_err(|e| e.to_string())?;
        let alpha = exact_independent_set(&g).map_err(|e| e.to_string())?.len();
        ensure(alpha == expected, || {
            format!("G({n},{d}): alpha {alpha}, expected {expected}")
        })?;
    }
    Ok("alpha = 2, 6, 4".into())
}

fn check_graph_structure() -> CheckResult {
    for n in 2..=6 {
        let profile = enumerate_spheres_with_limit(n, n).map_err(|e| e.to_string())?;
        for d in 1..=4 {
            let g = build_graph_with_limit(n, d, n).map_err(|e| e.to_string())?;
            let expected = profile.ball((d - 1).min(n - 1)) as usize - 1;
            ensure(g.regular_degree() == Some(expected), || {
                format!("G({n},{d}) not {expected}-regular")
            })?;
        }
    }
    for n in 3..=7 {
        for d in [3, 4] {
            let s = neighborhood_stats_with_limit(n, d, n).map_err(|e| e.to_string())?;
            ensure(s.zero_x_edge_count == 0, || {
                format!("({n},{d}): {} zero-x edges", s.zero_x_edge_count)
            })?;
        }
    }
    Ok("regular for n <= 6, d <= 4; no zero-x edges for n <= 7".into())
}

fn axioms_hold(a: &Permutation, b: &Permutation, c: &Permutation) -> Result<(), String> {
    let ab = block_distance(a, b).unwrap();
    let ba = block_distance(b, a).unwrap();
    let bc = block_distance(b, c).unwrap();
    let ac = block_distance(a, c).unwrap();
    let shifted = block_distance(&compose(c, a).unwrap(), &compose(c, b).unwrap()).unwrap();
    ensure(ab == ba, || format!("symmetry fails on {a} / {b}"))?;
    ensure(shifted == ab, || format!("left-invariance fails on {a} / {b} / {c}"))?;
    ensure(ac <= ab + bc, || format!("triangle fails on {a} / {b} / {c}"))?;
    ensure((ab == 0) == (a == b), || {
        format!("identity of indiscernibles fails on {a} / {b}")
    })
}

fn check_metric_axioms(seed: u64) -> CheckResult {
    let mut triples = 0u64;
    for n in [4, 5] {
        let all = all_permutations(n);
        for a in &all {
            for b in &all {
                for c in &all {
                    axioms_hold(a, b, c)?;
                    triples += 1;
                }
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let all7 = all_permutations(7);
    for _ in 0..100_000 {
        let pick = |rng: &mut StdRng| &all7[rng.gen_range(0..all7.len())];
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        axioms_hold(a, b, c)?;
        triples += 1;
    }
    Ok(format!("{triples} triples, no violations"))
}

fn check_formula_plugin() -> CheckResult {
    let stats = neighborhood_stats_with_limit(4, 3, 4).map_err(|e| e.to_string())?;
    let value = jv_lower_formula(&stats).map_err(|e| e.to_string())?;
    let g = build_graph_with_limit(4, 3, 4).map_err(|e| e.to_string())?;
    let alpha = exact_independent_set(&g).map_err(|e| e.to_string())?.len();
    ensure(value <= alpha as f64, || {
        format!("formula {value:.4} exceeds alpha {alpha}")
    })?;
    Ok(format!(
        "asymptotic claims not reproducible; formula {value:.4} <= alpha {alpha} on G(4,3)"
    ))
}

/// Exit status for a selftest run: 0 when nothing failed, 2 otherwise.
pub fn exit_code(outcomes: &[CheckOutcome]) -> i32 {
    if outcomes.iter().any(|o| o.status == Status::Fail) {
        2
    } else {
        0
    }
}
