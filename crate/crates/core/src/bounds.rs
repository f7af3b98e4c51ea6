//! Bounds on the maximum size of a code with minimum block distance `d`.
//!
//! All arithmetic is exact. Lower bounds round up, upper bounds round down.
//! The Gilbert–Varshamov and sphere-packing bounds are defined for odd
//! `d = 2t + 1`; in estimate mode the ball sizes they need are replaced by the
//! falling products that bracket them.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enumeration::{
    ball_bound_hypothesis, binomial, check_guard, enumerate_spheres_with_limit, factorial, falling_product, EnumError,
    DEFAULT_MAX_N,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("d = {0} is even; the GV and sphere-packing bounds are stated for odd d = 2t + 1")]
    EvenDistance(usize),
    #[error("d = {d} outside 1..={max}")]
    DistanceOutOfRange { d: usize, max: usize },
    #[error("radius {radius} violates t <= n - sqrt(n) - 1 for n = {n}")]
    Hypothesis { n: usize, radius: usize },
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error("table row {0}: {1}")]
    TableFormat(usize, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    /// Ball sizes from exhaustive enumeration.
    Exact,
    /// Ball sizes replaced by falling products.
    Estimate,
}

fn radius(d: usize) -> Result<usize, BoundError> {
    if d.is_multiple_of(2) {
        return Err(BoundError::EvenDistance(d));
    }
    Ok((d - 1) / 2)
}

fn check_d(n: usize, d: usize) -> Result<(), BoundError> {
    if n == 0 {
        return Err(EnumError::ZeroN.into());
    }
    if d == 0 || d > n - 1 + usize::from(n == 1) {
        return Err(BoundError::DistanceOutOfRange {
            d,
            max: n.saturating_sub(1).max(1),
        });
    }
    Ok(())
}

fn exact_ball(n: usize, radius: usize, max_n: usize) -> Result<BigUint, BoundError> {
    check_guard(n, max_n)?;
    let profile = enumerate_spheres_with_limit(n, max_n)?;
    Ok(BigUint::from(profile.ball(radius.min(n - 1))))
}

/// `⌈n! / |b_B(n, 2t)|⌉` for `d = 2t + 1`.
pub fn gv_lower(n: usize, d: usize, mode: BoundMode) -> Result<BigUint, BoundError> {
    gv_lower_with_limit(n, d, mode, DEFAULT_MAX_N)
}

pub fn gv_lower_with_limit(n: usize, d: usize, mode: BoundMode, max_n: usize) -> Result<BigUint, BoundError> {
    check_d(n, d)?;
    let t = radius(d)?;
    let ball = match mode {
        BoundMode::Exact => exact_ball(n, 2 * t, max_n)?,
        BoundMode::Estimate => {
            if !ball_bound_hypothesis(n, 2 * t) {
                return Err(BoundError::Hypothesis { n, radius: 2 * t });
            }
            falling_product(n, 0, 2 * t)
        }
    };
    Ok(Integer::div_ceil(&factorial(n), &ball))
}

/// Exact mode: `⌊n! / |b_B(n, t)|⌋`. Estimate mode: `n! / Π_{i=0..t}(n-i) =
/// (n-t-1)!`, which only says the true sphere-packing bound is at least this.
pub fn sp_upper(n: usize, d: usize, mode: BoundMode) -> Result<BigUint, BoundError> {
    sp_upper_with_limit(n, d, mode, DEFAULT_MAX_N)
}

pub fn sp_upper_with_limit(n: usize, d: usize, mode: BoundMode, max_n: usize) -> Result<BigUint, BoundError> {
    check_d(n, d)?;
    let t = radius(d)?;
    match mode {
        BoundMode::Exact => Ok(factorial(n) / exact_ball(n, t, max_n)?),
        BoundMode::Estimate => {
            if !ball_bound_hypothesis(n, t) {
                return Err(BoundError::Hypothesis { n, radius: t });
            }
            Ok(factorial(n) / falling_product(n, 0, t))
        }
    }
}

/// The counting bound `C(n,d)^2 (n-d)! / C(n-1, n-d)` as an exact rational
/// together with its floor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewUpperBound {
    #[serde(with = "crate::bignum_serde::rational")]
    pub exact: BigRational,
    #[serde(with = "crate::bignum_serde")]
    pub floor: BigUint,
}

pub fn new_upper(n: usize, d: usize) -> Result<NewUpperBound, BoundError> {
    if n < 2 || d == 0 || d > n - 1 {
        return Err(BoundError::DistanceOutOfRange {
            d,
            max: n.saturating_sub(1),
        });
    }
    let c = binomial(n, d);
    let numerator = &c * &c * factorial(n - d);
    let denominator = binomial(n - 1, n - d);
    let exact = BigRational::new(BigInt::from(numerator), BigInt::from(denominator));
    let floor = exact.floor().to_integer().to_biguint().expect("positive");
    Ok(NewUpperBound { exact, floor })
}

/// Known exact values of the maximum code size.
pub fn special_exact(n: usize, d: usize) -> Option<BigUint> {
    if n == 0 {
        return None;
    }
    match d {
        0 | 1 => Some(factorial(n)),
        _ if d > n - 1 => Some(BigUint::one()),
        2 => Some(factorial(n - 1)),
        _ if d == n - 1 => Some(BigUint::from(match n {
            5 => 4usize,
            _ => n,
        })),
        _ => None,
    }
}

/// Sufficient condition under which the counting bound is no larger than the
/// sphere-packing bound.
pub fn corollary_applies(n: usize, d: usize) -> Result<bool, BoundError> {
    let t = radius(d)?;
    if n == 0 || d > n.saturating_sub(1) {
        return Ok(false);
    }
    if !ball_bound_hypothesis(n, t) {
        return Ok(false);
    }
    let lhs = BigUint::from(n) * falling_product(n, 0, t);
    let rhs = BigUint::from(d) * factorial(d);
    Ok(lhs <= rhs)
}

/// Every bound this module knows for one `(n, d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub d: usize,
    /// Distance the GV/SP values refer to; `d + 1` when `d` is even.
    pub effective_d: usize,
    #[serde(with = "crate::bignum_serde::option")]
    pub gv_lower: Option<BigUint>,
    #[serde(with = "crate::bignum_serde::option")]
    pub sp_upper_estimate: Option<BigUint>,
    pub new_upper: Option<NewUpperBound>,
    #[serde(with = "crate::bignum_serde::option")]
    pub special_exact: Option<BigUint>,
    pub exact_mode: bool,
    pub corollary_applies: bool,
    pub notes: Vec<String>,
}

pub fn bound_report(n: usize, d: usize, exact: bool) -> Result<BoundReport, BoundError> {
    bound_report_with_limit(n, d, exact, DEFAULT_MAX_N)
}

pub fn bound_report_with_limit(n: usize, d: usize, exact: bool, max_n: usize) -> Result<BoundReport, BoundError> {
    check_d(n, d)?;
    let mode = if exact { BoundMode::Exact } else { BoundMode::Estimate };
    let mut notes = Vec::new();
    let effective_d = if d.is_multiple_of(2) {
        notes.push(format!(
            "d = {d} is even: GV and sphere-packing values are for minimum distance {}",
            d + 1
        ));
        d + 1
    } else {
        d
    };
    let mut attempt = |what: &str, r: Result<BigUint, BoundError>| match r {
        Ok(v) => Some(v),
        Err(e) => {
            notes.push(format!("{what} unavailable: {e}"));
            None
        }
    };
    let (gv, sp) = if effective_d <= n.saturating_sub(1).max(1) {
        (
            attempt("GV lower bound", gv_lower_with_limit(n, effective_d, mode, max_n)),
            attempt("sphere-packing bound", sp_upper_with_limit(n, effective_d, mode, max_n)),
        )
    } else {
        notes.push(format!("distance {effective_d} exceeds n - 1"));
        (None, None)
    };
    if !exact && sp.is_some() {
        notes.push("sphere-packing estimate is a floor of the true bound".to_string());
    }
    let new = new_upper(n, d).ok();
    Ok(BoundReport {
        n,
        d,
        effective_d,
        gv_lower: gv,
        sp_upper_estimate: sp,
        new_upper: new,
        special_exact: special_exact(n, d),
        exact_mode: exact,
        corollary_applies: corollary_applies(n, effective_d).unwrap_or(false),
        notes,
    })
}

/// `(n, d)` rows of the published comparison table.
pub const TABLE1_ROWS: [(usize, usize); 10] = [
    (13, 9),
    (15, 11),
    (16, 11),
    (17, 11),
    (17, 13),
    (18, 11),
    (18, 13),
    (19, 11),
    (19, 13),
    (20, 13),
];

/// Published values, bundled as CSV `n,d,sphere_packing,new_bound`.
pub const PUBLISHED_TABLE1_CSV: &str = include_str!("../data/table1.csv");

/// Allowed absolute gap between the computed floor and a published new-bound
/// value; the published column mixes floor and round-up.
pub const TABLE1_NEW_BOUND_TOLERANCE: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Expectation {
    pub n: usize,
    pub d: usize,
    pub sphere_packing: BigUint,
    pub new_bound: BigUint,
}

pub fn parse_table1(csv: &str) -> Result<Vec<Table1Expectation>, BoundError> {
    let mut rows = Vec::new();
    for (i, line) in csv.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || (i == 0 && line.starts_with('n')) {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(BoundError::TableFormat(
                i + 1,
                format!("expected 4 fields, got {}", fields.len()),
            ));
        }
        let small = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| BoundError::TableFormat(i + 1, format!("bad integer {s:?}")))
        };
        let big = |s: &str| {
            BigUint::parse_bytes(s.as_bytes(), 10)
                .ok_or_else(|| BoundError::TableFormat(i + 1, format!("bad integer {s:?}")))
        };
        rows.push(Table1Expectation {
            n: small(fields[0])?,
            d: small(fields[1])?,
            sphere_packing: big(fields[2])?,
            new_bound: big(fields[3])?,
        });
    }
    Ok(rows)
}

pub fn published_table1() -> Vec<Table1Expectation> {
    parse_table1(PUBLISHED_TABLE1_CSV).expect("bundled table parses")
}

/// One computed row of the comparison table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub n: usize,
    pub d: usize,
    #[serde(with = "crate::bignum_serde")]
    pub sp_estimate: BigUint,
    pub new_upper: NewUpperBound,
    pub corollary_applies: bool,
}

pub fn table1(rows: &[(usize, usize)]) -> Result<Vec<Table1Row>, BoundError> {
    rows.iter()
        .map(|&(n, d)| {
            Ok(Table1Row {
                n,
                d,
                sp_estimate: sp_upper(n, d, BoundMode::Estimate)?,
                new_upper: new_upper(n, d)?,
                corollary_applies: corollary_applies(n, d)?,
            })
        })
        .collect()
}

/// Comparison of one computed row against a published row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Check {
    pub row: Table1Row,
    pub expected: Table1Expectation,
    pub sp_matches: bool,
    /// `computed floor - published`, signed.
    pub new_bound_gap: BigInt,
}

impl Table1Check {
    pub fn passes(&self) -> bool {
        self.sp_matches
            && self
                .new_bound_gap
                .magnitude()
                .to_u64()
                .is_some_and(|g| g <= TABLE1_NEW_BOUND_TOLERANCE)
    }
}

pub fn check_table1(expected: &[Table1Expectation]) -> Result<Vec<Table1Check>, BoundError> {
    expected
        .iter()
        .map(|e| {
            let row = table1(&[(e.n, e.d)])?.remove(0);
            let gap = BigInt::from(row.new_upper.floor.clone()) - BigInt::from(e.new_bound.clone());
            Ok(Table1Check {
                sp_matches: row.sp_estimate == e.sphere_packing,
                new_bound_gap: gap,
                row,
                expected: e.clone(),
            })
        })
        .collect()
}

pub fn format_table1(checks: &[Table1Check]) -> String {
    let mut s = format!(
        "{:>3} {:>3} {:>14} {:>14} {:>24} {:>14} {:>5}\n",
        "n", "d", "sp_estimate", "new_floor", "new_exact", "published", "ok"
    );
    for c in checks {
        s.push_str(&format!(
            "{:>3} {:>3} {:>14} {:>14} {:>24} {:>14} {:>5}\n",
            c.row.n,
            c.row.d,
            c.row.sp_estimate,
            c.row.new_upper.floor,
            c.row.new_upper.exact.to_string(),
            c.expected.new_bound,
            if c.passes() { "yes" } else { "NO" }
        ));
    }
    s
}

pub fn table1_csv(checks: &[Table1Check]) -> String {
    let mut s = String::from("n,d,sp_estimate,new_floor,new_exact,published_new,gap,pass\n");
    for c in checks {
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            c.row.n,
            c.row.d,
            c.row.sp_estimate,
            c.row.new_upper.floor,
            c.row.new_upper.exact,
            c.expected.new_bound,
            c.new_bound_gap,
            c.passes()
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn gv_examples() {
        assert_eq!(gv_lower(5, 3, BoundMode::Exact).unwrap(), big(6));
        for n in 1..=6 {
            assert_eq!(gv_lower(n, 1, BoundMode::Exact).unwrap(), factorial(n));
        }
        let expected = Integer::div_ceil(&factorial(13), &falling_product(13, 0, 8));
        assert_eq!(gv_lower(13, 9, BoundMode::Estimate).unwrap(), expected);
        assert_eq!(expected, big(24));
        assert!(matches!(
            gv_lower(5, 2, BoundMode::Exact),
            Err(BoundError::EvenDistance(2))
        ));
        assert!(matches!(
            gv_lower(17, 13, BoundMode::Estimate),
            Err(BoundError::Hypothesis { .. })
        ));
        assert!(gv_lower(9, 3, BoundMode::Exact).is_err());
    }

    #[test]
    fn sp_examples() {
        assert_eq!(sp_upper(13, 9, BoundMode::Estimate).unwrap(), big(40320));
        assert_eq!(sp_upper(15, 11, BoundMode::Estimate).unwrap(), big(362880));
        assert_eq!(sp_upper(5, 3, BoundMode::Exact).unwrap(), big(24));
        assert!(sp_upper(5, 4, BoundMode::Exact).is_err());
    }

    #[test]
    fn new_upper_examples() {
        let b = new_upper(13, 9).unwrap();
        assert_eq!(b.exact, BigRational::new(BigInt::from(12269400), BigInt::from(495)));
        assert_eq!(b.floor, big(24786));
        assert_eq!(new_upper(15, 11).unwrap().floor, big(44672));
        let gap = new_upper(18, 13).unwrap().floor.to_i64().unwrap() - 1423607;
        assert!(gap.abs() <= 1);
        assert!(new_upper(5, 5).is_err());
        assert!(new_upper(5, 0).is_err());
    }

    #[test]
    fn special_values() {
        assert_eq!(special_exact(4, 3), Some(big(4)));
        assert_eq!(special_exact(5, 4), Some(big(4)));
        assert_eq!(special_exact(6, 2), Some(big(120)));
        assert_eq!(special_exact(3, 2), Some(big(2)));
        assert_eq!(special_exact(6, 1), Some(big(720)));
        assert_eq!(special_exact(6, 6), Some(big(1)));
        assert_eq!(special_exact(7, 6), Some(big(7)));
        assert_eq!(special_exact(7, 4), None);
    }

    #[test]
    fn corollary_condition() {
        assert!(corollary_applies(13, 9).unwrap());
        assert!(!corollary_applies(13, 5).unwrap());
        assert!(!corollary_applies(13, 13).unwrap());
        assert!(corollary_applies(13, 4).is_err());
    }

    #[test]
    fn table_rows_from_published_values() {
        let checks = check_table1(&published_table1()).unwrap();
        assert_eq!(checks.len(), 10);
        assert!(checks.iter().all(|c| c.sp_matches));
        let rows = table1(&TABLE1_ROWS).unwrap();
        let find = |n, d| rows.iter().find(|r| r.n == n && r.d == d).unwrap().clone();
        assert_eq!(find(16, 11).sp_estimate, big(3628800));
        assert!((find(16, 11).new_upper.floor.to_i64().unwrap() - 762415).abs() <= 1);
        assert_eq!(find(19, 13).sp_estimate, big(479001600));
        assert!((find(19, 13).new_upper.floor.to_i64().unwrap() - 28551213).abs() <= 1);
        assert_eq!(find(20, 13).sp_estimate, big(6227020800));
        assert!((find(20, 13).new_upper.floor.to_i64().unwrap() - 601078154).abs() <= 1);
    }

    #[test]
    fn table_parser_rejects_garbage() {
        assert!(parse_table1("n,d,sphere_packing,new_bound\n13,9,x,1\n").is_err());
        assert!(parse_table1("13,9,1\n").is_err());
    }

    #[test]
    fn report_for_even_distance_is_annotated() {
        let r = bound_report(6, 2, true).unwrap();
        assert_eq!(r.effective_d, 3);
        assert!(!r.notes.is_empty());
        assert_eq!(r.special_exact, Some(big(120)));
        let json = serde_json::to_string(&r).unwrap();
        let back: BoundReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
