//! Finite-depth evidence for bounded supermultiplicativity, balancedness and
//! Gibbs-type inequalities.
//!
//! Both properties quantify over all lengths, so nothing here is a proof.
//! Reports give the extremal constants observed on the tested window, the
//! word that witnesses them, and a verdict describing the trend.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::blocks::{class_representative, BlockCountTable, SGapCounter, Word};
use crate::numeric::{rational_to_f64, serialize_opt_rational, serialize_rational};
use crate::sgap::SGapSpec;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    ConsistentWithBSM,
    ConsistentWithBalanced,
    RatioDecayDetected,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyReport {
    /// `max counts(m)·counts(n)/counts(m+n)` over the window.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub k_estimate: Option<BigRational>,
    /// `(m, n)` attaining `k_estimate`.
    pub k_witness: Option<(usize, usize)>,
    /// `min |B_{ω,r}|/|B_r|` over the window.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub b_estimate: Option<BigRational>,
    /// The same minimum restricted to `r ≤ r_max/2`.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub b_estimate_half: Option<BigRational>,
    pub depth_tested: usize,
    pub verdict: Verdict,
    /// `(ω, r)` attaining `b_estimate`.
    pub witness: Option<(Word, usize)>,
}

fn ratio(num: BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den.clone()))
}

/// `K = max_{1≤m,n≤depth} |B_m|·|B_n| / |B_{m+n}|`, exact.
///
/// The verdict is `ConsistentWithBSM` when raising the depth through the last
/// quarter of the window moves the maximum by less than 1%.
pub fn bsm_estimate(table: &BlockCountTable, depth: usize) -> Result<PropertyReport> {
    if depth == 0 {
        return Err(Error::MissingCount(1));
    }
    for n in 1..=2 * depth {
        table.require(n)?;
    }
    let c = |n: usize| table.count(n).expect("checked above");
    // best[d]: maximum over m, n ≤ d
    let mut best: Vec<(BigRational, (usize, usize))> = Vec::with_capacity(depth + 1);
    best.push((BigRational::zero(), (0, 0)));
    for d in 1..=depth {
        let mut cur = best[d - 1].clone();
        for m in 1..=d {
            // pairs newly admitted at depth d: (m, d) and (d, m)
            let q = ratio(c(m) * c(d), c(m + d));
            if q > cur.0 {
                cur = (q, (m, d));
            }
        }
        best.push(cur);
    }
    let (k, pair) = best[depth].clone();
    let quarter = depth - depth.div_ceil(4);
    let earlier = &best[quarter.max(1)].0;
    let stable = &k * BigRational::new(BigInt::from(100), BigInt::from(101)) <= *earlier;
    Ok(PropertyReport {
        k_estimate: Some(k),
        k_witness: Some(pair),
        b_estimate: None,
        b_estimate_half: None,
        depth_tested: depth,
        verdict: if stable {
            Verdict::ConsistentWithBSM
        } else {
            Verdict::Inconclusive
        },
        witness: None,
    })
}

/// One tested `(ω, r)` pair of a balance scan.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BalanceCell {
    pub word: Word,
    pub r: usize,
    #[serde(serialize_with = "crate::numeric::serialize_big")]
    pub followers: BigUint,
    #[serde(serialize_with = "crate::numeric::serialize_big")]
    pub blocks: BigUint,
    pub ratio: f64,
}

/// Suffix classes `(has_one, run)` realised by admissible words of length at
/// most `max_len`, each with its shortest representative.
fn suffix_classes(spec: &SGapSpec, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for run in 0..max_len {
        if spec.admits_run(run as u64) {
            out.push(Word::one_then_zeros(run));
        }
    }
    for run in 1..=max_len {
        if spec.admits_run(run as u64) {
            out.push(Word::zeros(run));
        }
    }
    out
}

/// `B = min |B_{ω,r}|/|B_r|` over admissible `ω` with `|ω| ≤ word_length_max`
/// and `1 ≤ r ≤ r_max`, together with every tested cell.
///
/// Followers of an S-gap word depend only on its trailing zero-run and on
/// whether it contains a 1, so one representative per class is tested.
pub fn balanced_scan(
    spec: &SGapSpec,
    word_length_max: usize,
    r_max: usize,
) -> Result<(PropertyReport, Vec<BalanceCell>)> {
    if word_length_max == 0 || r_max == 0 {
        return Err(Error::Domain {
            name: "window",
            value: 0.0,
            expected: "word_length_max ≥ 1 and r_max ≥ 1",
        });
    }
    let mut counter = SGapCounter::new(spec, r_max);
    let blocks: Vec<BigUint> = (0..=r_max).map(|r| counter.blocks(r)).collect();
    let mut cells = Vec::new();
    let mut best: Option<(BigRational, Word, usize)> = None;
    let mut best_half: Option<BigRational> = None;
    for word in suffix_classes(spec, word_length_max) {
        let (has_one, run) = word.suffix_state();
        for r in 1..=r_max {
            let f = counter.followers(has_one, run, r);
            let q = ratio(f.clone(), &blocks[r]);
            if 2 * r <= r_max && best_half.as_ref().is_none_or(|b| q < *b) {
                best_half = Some(q.clone());
            }
            if best.as_ref().is_none_or(|b| q < b.0) {
                best = Some((q.clone(), word.clone(), r));
            }
            cells.push(BalanceCell {
                word: word.clone(),
                r,
                followers: f,
                blocks: blocks[r].clone(),
                ratio: rational_to_f64(&q),
            });
        }
    }
    let (b, w, r) = best.expect("the class 1·0^0 is always tested");
    let verdict = match &best_half {
        Some(half) if b.clone() * BigRational::from_integer(BigInt::from(4)) <= *half => {
            Verdict::RatioDecayDetected
        }
        Some(_) => Verdict::ConsistentWithBalanced,
        None => Verdict::Inconclusive,
    };
    let report = PropertyReport {
        k_estimate: None,
        k_witness: None,
        b_estimate: Some(b),
        b_estimate_half: best_half,
        depth_tested: r_max,
        verdict,
        witness: Some((w, r)),
    };
    Ok((report, cells))
}

pub fn balanced_estimate(spec: &SGapSpec, word_length_max: usize, r_max: usize) -> Result<PropertyReport> {
    balanced_scan(spec, word_length_max, r_max).map(|(r, _)| r)
}

/// `(1 + Σ_{j=1..N} |B_j|)^{-1}` with `N` the connector length of `X(S)`:
/// the balance constant guaranteed for almost specified shifts.
pub fn almost_spec_balance_bound(spec: &SGapSpec) -> Option<BigRational> {
    let n = spec.connector_length()? as usize;
    let mut counter = SGapCounter::new(spec, n);
    let mut denom = BigUint::one();
    for j in 1..=n {
        denom += counter.blocks(j);
    }
    Some(ratio(BigUint::one(), &denom))
}

/// One finite-level Gibbs cell: `μ_{r+k}([ω]) = |B_{ω,k}|/|B_{r+k}|` against
/// the band `[c₁/|B_r|, c₂/|B_r|]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GibbsCell {
    pub word: Word,
    pub r: usize,
    pub k: usize,
    pub mu: f64,
    /// `μ · |B_r|`, which the band confines to `[c₁, c₂]`.
    pub scaled: f64,
    /// `c₁/|B_r|` and `c₂/|B_r|`, the band on `mu`.
    pub lower: f64,
    pub upper: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GibbsDiagnostics {
    pub h: f64,
    /// `(n, 2^{n·h}/|B_n|)` for `1 ≤ n ≤ depth`.
    pub ratios: Vec<(usize, f64)>,
    pub ratio_min: f64,
    pub ratio_max: f64,
    #[serde(serialize_with = "serialize_rational")]
    pub c1: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub c2: BigRational,
    /// Smallest and largest `μ·|B_r|` over all cells.
    pub scaled_min: f64,
    pub scaled_max: f64,
    pub cells: Vec<GibbsCell>,
    pub violations: usize,
}

/// Gibbs diagnostics with the band read off the same window:
/// `c₁ = min |B_{ω,k}|/|B_k|`, `c₂ = max |B_r|·|B_k|/|B_{r+k}|`.
pub fn gibbs_diagnostics(spec: &SGapSpec, h: f64, depth: usize) -> Result<GibbsDiagnostics> {
    gibbs_diagnostics_with_band(spec, h, depth, None)
}

/// As [`gibbs_diagnostics`], but checks cells against a fixed band when given.
pub fn gibbs_diagnostics_with_band(
    spec: &SGapSpec,
    h: f64,
    depth: usize,
    band: Option<(f64, f64)>,
) -> Result<GibbsDiagnostics> {
    if depth < 2 {
        return Err(Error::Domain {
            name: "depth",
            value: depth as f64,
            expected: "[2, ∞)",
        });
    }
    let mut counter = SGapCounter::new(spec, depth);
    let blocks: Vec<BigUint> = (0..=depth).map(|n| counter.blocks(n)).collect();
    let ratios: Vec<(usize, f64)> = (1..=depth)
        .map(|n| {
            let log = n as f64 * h - crate::numeric::log2_big(&blocks[n]);
            (n, log.exp2())
        })
        .collect();
    let ratio_min = ratios.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let ratio_max = ratios.iter().map(|r| r.1).fold(0.0, f64::max);

    // (ω, r, k, followers) with r + k ≤ depth
    let mut raw = Vec::new();
    let mut c1: Option<BigRational> = None;
    let mut c2 = BigRational::one();
    for r in 1..depth {
        let mut classes: Vec<(bool, usize)> = (0..r).map(|run| (true, run)).collect();
        classes.push((false, r));
        for (has_one, run) in classes {
            let Some(word) = class_representative(spec, has_one, run, r) else {
                continue;
            };
            for k in 1..=depth - r {
                let f = counter.followers(has_one, run, k);
                let b = ratio(f.clone(), &blocks[k]);
                if c1.as_ref().is_none_or(|c| b < *c) {
                    c1 = Some(b);
                }
                raw.push((word.clone(), r, k, f));
            }
        }
        for k in 1..=depth - r {
            let q = ratio(blocks[r].clone() * &blocks[k], &blocks[r + k]);
            if q > c2 {
                c2 = q;
            }
        }
    }
    let c1 = c1.ok_or_else(|| Error::Numeric("no admissible cells in window".into()))?;
    let (lo, hi) = match band {
        Some((a, b)) => (
            BigRational::from_float(a).ok_or_else(|| Error::Numeric("band c1".into()))?,
            BigRational::from_float(b).ok_or_else(|| Error::Numeric("band c2".into()))?,
        ),
        None => (c1.clone(), c2.clone()),
    };
    let mut cells = Vec::with_capacity(raw.len());
    let mut violations = 0;
    let (mut scaled_min, mut scaled_max) = (f64::INFINITY, 0.0f64);
    for (word, r, k, f) in raw {
        let mu = ratio(f.clone(), &blocks[r + k]);
        let scaled = ratio(f * &blocks[r], &blocks[r + k]);
        let pass = lo <= scaled && scaled <= hi;
        if !pass {
            violations += 1;
        }
        let br = BigRational::from_integer(BigInt::from(blocks[r].clone()));
        let scaled_f = rational_to_f64(&scaled);
        scaled_min = scaled_min.min(scaled_f);
        scaled_max = scaled_max.max(scaled_f);
        cells.push(GibbsCell {
            word,
            r,
            k,
            mu: rational_to_f64(&mu),
            scaled: scaled_f,
            lower: rational_to_f64(&(&lo / &br)),
            upper: rational_to_f64(&(&hi / &br)),
            pass,
        });
    }
    Ok(GibbsDiagnostics {
        h,
        ratios,
        ratio_min,
        ratio_max,
        c1: lo,
        c2: hi,
        scaled_min,
        scaled_max,
        cells,
        violations,
    })
}
