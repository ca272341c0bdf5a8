//! Entropy of S-gap shifts as the root of `Σ_{n∈S} λ^{-(n+1)} = 1`, and
//! count-based entropy bounds.
//!
//! The root is found by bisection on `λ ∈ [1, 2]`. Each comparison of the
//! series with 1 is certified: partial sums are extended until either they
//! exceed 1 or the partial sum plus the geometric tail bound
//! `Σ_{j>N} λ^{-j} = λ^{-N}/(λ−1)` falls below 1. A few guarded Newton steps
//! polish the bracket midpoint without leaving the bracket.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::blocks::BlockCountTable;
use crate::numeric::log2_big;
use crate::sgap::SGapSpec;
use crate::{Error, Result};

/// Longest partial sum a single certified comparison may take.
const MAX_TERMS: u64 = 50_000_000;
const NEWTON_STEPS: usize = 5;

/// A series `Σ_{j≥1} d_j λ^{-j}` with binary coefficients.
pub trait UnitSeries {
    /// Coefficient `d_j` for `j ≥ 1`.
    fn digit(&self, j: u64) -> bool;

    /// Index of the last nonzero coefficient, `None` when there are infinitely many.
    fn last_one(&self) -> Option<u64>;

    /// Number of nonzero coefficients, `None` when infinite.
    fn ones(&self) -> Option<u64>;
}

impl UnitSeries for SGapSpec {
    fn digit(&self, j: u64) -> bool {
        j >= 1 && self.contains(j - 1)
    }

    fn last_one(&self) -> Option<u64> {
        self.max_element().map(|m| m + 1)
    }

    fn ones(&self) -> Option<u64> {
        self.cardinality().map(|c| c as u64)
    }
}

/// Logarithm base used to report entropies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum LogBase {
    #[default]
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "e")]
    Natural,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::Natural => x.ln(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyResult {
    pub lambda: f64,
    /// `log(λ)` in `log_base`.
    pub entropy: f64,
    pub log_base: LogBase,
    pub entropy_log2: f64,
    pub entropy_ln: f64,
    /// `|f_N(λ) − 1|` for the series truncated after `truncation_depth` terms.
    pub residual: f64,
    /// Bound on the omitted terms `Σ_{j>N} λ^{-j}`.
    pub tail_bound: f64,
    pub truncation_depth: u64,
    pub iterations: usize,
}

/// Certified sign of `f(λ) − 1`; `Equal` only when the two agree to rounding.
pub fn compare_series_to_one<S: UnitSeries + ?Sized>(series: &S, lambda: f64) -> Result<Ordering> {
    let gap = lambda - 1.0;
    if gap <= 0.0 {
        return Ok(Ordering::Greater);
    }
    let last = series.last_one();
    let inv = 1.0 / lambda;
    let mut power = 1.0;
    let mut sum = 0.0;
    for j in 1..=MAX_TERMS {
        power *= inv;
        if series.digit(j) {
            sum += power;
        }
        let slack = 4.0 * f64::EPSILON * (j as f64).sqrt();
        if sum > 1.0 + slack {
            return Ok(Ordering::Greater);
        }
        if last.is_some_and(|l| j >= l) {
            return Ok(if sum < 1.0 - slack {
                Ordering::Less
            } else {
                Ordering::Equal
            });
        }
        let tail = power / gap;
        if sum + tail < 1.0 - slack {
            return Ok(Ordering::Less);
        }
        if tail < slack {
            return Ok(Ordering::Equal);
        }
    }
    Err(Error::Numeric(format!(
        "series comparison at λ = {lambda} did not settle within {MAX_TERMS} terms"
    )))
}

/// Truncated series value and derivative `(Σ_{j≤N} d_j λ^{-j}, Σ_{j≤N} −j d_j λ^{-j-1})`.
pub fn series_value<S: UnitSeries + ?Sized>(series: &S, lambda: f64, depth: u64) -> (f64, f64) {
    let inv = 1.0 / lambda;
    let mut power = 1.0;
    let (mut value, mut slope) = (0.0, 0.0);
    for j in 1..=depth {
        power *= inv;
        if series.digit(j) {
            value += power;
            slope -= j as f64 * power * inv;
        }
    }
    (value, slope)
}

/// Smallest `N` with `λ^{-N}/(λ−1) < bound`.
pub fn truncation_depth(lambda: f64, bound: f64) -> u64 {
    let gap = lambda - 1.0;
    if gap <= 0.0 {
        return u64::MAX;
    }
    let n = ((1.0 / (gap * bound)).ln() / lambda.ln()).ceil().max(1.0);
    let mut n = if n.is_finite() { n as u64 } else { u64::MAX / 2 };
    while n > 1 && lambda.powf(-((n - 1) as f64)) / gap < bound {
        n -= 1;
    }
    while lambda.powf(-(n as f64)) / gap >= bound {
        n += 1;
    }
    n
}

/// Root of `Σ_j d_j λ^{-j} = 1` on `[1, 2]` to within `tol`.
pub fn solve_unit_series<S: UnitSeries + ?Sized>(series: &S, tol: f64, base: LogBase) -> Result<EntropyResult> {
    if !(tol > 0.0) {
        return Err(Error::Domain {
            name: "tol",
            value: tol,
            expected: "(0, ∞)",
        });
    }
    match series.ones() {
        Some(0) => return Err(Error::EmptySet),
        Some(1) => {
            return Ok(EntropyResult {
                lambda: 1.0,
                entropy: 0.0,
                log_base: base,
                entropy_log2: 0.0,
                entropy_ln: 0.0,
                residual: 0.0,
                tail_bound: 0.0,
                truncation_depth: series.last_one().unwrap_or(0),
                iterations: 0,
            })
        }
        _ => {}
    }

    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    let mut iterations = 0;
    if compare_series_to_one(series, hi)? != Ordering::Less {
        lo = hi;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        match compare_series_to_one(series, mid)? {
            Ordering::Greater => lo = mid,
            Ordering::Less => hi = mid,
            Ordering::Equal => {
                lo = mid;
                hi = mid;
            }
        }
    }

    let anchor = if lo > 1.0 { lo } else { 0.5 * (lo + hi) };
    let depth = match series.last_one() {
        Some(l) => l,
        None => truncation_depth(anchor, tol / 10.0),
    };
    let tail_at = |x: f64| match series.last_one() {
        Some(_) => 0.0,
        None => x.powf(-(depth as f64)) / (x - 1.0),
    };

    let mut lambda = 0.5 * (lo + hi);
    for _ in 0..NEWTON_STEPS {
        let (f, df) = series_value(series, lambda, depth);
        if df == 0.0 {
            break;
        }
        let next = lambda - (f - 1.0) / df;
        if !(next >= lo && next <= hi) || next == lambda {
            break;
        }
        lambda = next;
    }

    let (f, _) = series_value(series, lambda, depth);
    let entropy_log2 = lambda.log2();
    let entropy_ln = lambda.ln();
    Ok(EntropyResult {
        lambda,
        entropy: base.log(lambda),
        log_base: base,
        entropy_log2,
        entropy_ln,
        residual: (f - 1.0).abs(),
        tail_bound: tail_at(lambda),
        truncation_depth: depth,
        iterations,
    })
}

/// `h(X(S)) = log λ` where `λ` solves `Σ_{n∈S} λ^{-(n+1)} = 1`.
pub fn solve_sgap_entropy(spec: &SGapSpec, tol: f64) -> Result<EntropyResult> {
    solve_unit_series(spec, tol, LogBase::Two)
}

pub fn solve_sgap_entropy_in_base(spec: &SGapSpec, tol: f64, base: LogBase) -> Result<EntropyResult> {
    solve_unit_series(spec, tol, base)
}

/// Entropy sandwich for a shift with supermultiplicativity constant `K`:
/// `((log|B_n| − log K)/n, log|B_n|/n)` in base 2.
pub fn entropy_bounds_from_counts(table: &BlockCountTable, k: f64, n: usize) -> Result<(f64, f64)> {
    if !(k >= 1.0) {
        return Err(Error::Domain {
            name: "K",
            value: k,
            expected: "[1, ∞)",
        });
    }
    if n == 0 {
        return Err(Error::MissingCount(0));
    }
    let upper = log2_big(table.require(n)?) / n as f64;
    Ok((upper - k.log2() / n as f64, upper))
}

/// `(n, log2|B_n| / n)` for `1 ≤ n ≤ n_max`; every value bounds `h(X)` from above.
pub fn entropy_slope_diagnostic(table: &BlockCountTable, n_max: usize) -> Result<Vec<(usize, f64)>> {
    (1..=n_max)
        .map(|n| Ok((n, log2_big(table.require(n)?) / n as f64)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{even_shift_automaton, sgap_count_table, DEFAULT_SUBSET_BUDGET};

    const PHI: f64 = 1.618_033_988_749_895;

    fn spec(s: &str) -> SGapSpec {
        s.parse().unwrap()
    }

    /// Plain bisection on a closed-form characteristic function.
    fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn full_shift_has_entropy_one() {
        let r = solve_sgap_entropy(&SGapSpec::naturals(), 1e-12).unwrap();
        assert!((r.lambda - 2.0).abs() < 1e-12);
        assert!((r.entropy - 1.0).abs() < 1e-12);
    }

    #[test]
    fn golden_mean_cases() {
        let oracle = bisect(|x| 1.0 / x + 1.0 / (x * x) - 1.0, 1.0, 2.0);
        assert!((oracle - PHI).abs() < 1e-14);
        for s in ["co{0}", "{0,1}"] {
            let r = solve_sgap_entropy(&spec(s), 1e-12).unwrap();
            assert!((r.lambda - oracle).abs() < 1e-12, "{s}: {}", r.lambda);
            assert!(r.residual + r.tail_bound < 1e-12, "{s}: {r:?}");
        }
    }

    #[test]
    fn singleton_is_zero_entropy() {
        let r = solve_sgap_entropy(&spec("{0}"), 1e-9).unwrap();
        assert_eq!(r.lambda, 1.0);
        assert_eq!(r.entropy, 0.0);
        let r = solve_sgap_entropy(&spec("{7}"), 1e-9).unwrap();
        assert_eq!(r.entropy, 0.0);
    }

    #[test]
    fn closed_forms_for_infinite_sets() {
        // S = {1, 3, 5, ...}: Σ λ^{-(2k+2)} = 1/(λ²−1) = 1, λ = √2
        let r = solve_sgap_entropy(&spec("ep:pre=;pat=0,1"), 1e-12).unwrap();
        assert!((r.lambda - 2f64.sqrt()).abs() < 1e-12);
        // S = co{0,1,2}: λ^{-3}/(λ−1) = 1
        let oracle = bisect(|x| 1.0 / (x.powi(3) * (x - 1.0)) - 1.0, 1.0, 2.0);
        let r = solve_sgap_entropy(&spec("co{0,1,2}"), 1e-12).unwrap();
        assert!((r.lambda - oracle).abs() < 1e-12);
        assert!(r.tail_bound < 1e-13);
    }

    #[test]
    fn natural_log_reporting() {
        let r = solve_sgap_entropy_in_base(&spec("co{0}"), 1e-12, LogBase::Natural).unwrap();
        assert!((r.entropy - PHI.ln()).abs() < 1e-12);
        assert!((r.entropy_log2 - PHI.log2()).abs() < 1e-12);
    }

    #[test]
    fn bad_tolerance() {
        assert!(matches!(
            solve_sgap_entropy(&spec("{0,1}"), 0.0),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn truncation_depth_is_minimal() {
        for &(l, b) in &[(1.5, 1e-10), (1.9, 1e-6), (1.01, 1e-3)] {
            let n = truncation_depth(l, b);
            assert!(l.powf(-(n as f64)) / (l - 1.0) < b);
            assert!(l.powf(-((n - 1) as f64)) / (l - 1.0) >= b);
        }
    }

    #[test]
    fn bounds_from_counts_full_shift() {
        let t = sgap_count_table(&SGapSpec::naturals(), 12);
        for n in 1..=12 {
            assert_eq!(entropy_bounds_from_counts(&t, 1.0, n).unwrap(), (1.0, 1.0));
        }
        assert!(entropy_bounds_from_counts(&t, 0.5, 3).is_err());
        assert_eq!(entropy_bounds_from_counts(&t, 1.0, 13), Err(Error::MissingCount(13)));
    }

    #[test]
    fn even_shift_sandwich() {
        let t = even_shift_automaton().count_table(16, DEFAULT_SUBSET_BUDGET).unwrap();
        let (lo, hi) = entropy_bounds_from_counts(&t, 4.0, 10).unwrap();
        assert!((hi - lo - 0.2).abs() < 1e-12);
        let h = PHI.log2();
        assert!(lo <= h && h <= hi);
    }

    #[test]
    fn slope_upper_bounds() {
        let t = sgap_count_table(&SGapSpec::naturals(), 8);
        assert!(entropy_slope_diagnostic(&t, 8).unwrap().iter().all(|&(_, v)| v == 1.0));
        let s = spec("{0,2,5}");
        let h = solve_sgap_entropy(&s, 1e-12).unwrap().entropy;
        let t = sgap_count_table(&s, 40);
        for (_, v) in entropy_slope_diagnostic(&t, 40).unwrap() {
            assert!(v >= h - 1e-12);
        }
    }
}
