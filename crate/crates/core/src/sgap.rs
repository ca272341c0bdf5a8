//! Finite descriptions of gap sets and the classification of `X(S)`.
//!
//! `ℕ` includes 0 throughout. A set is described in one of three ways:
//!
//! ```text
//! {0,2,5}               explicit finite set
//! co{0,3}               cofinite: every natural except those listed
//! ep:pre=1,0;pat=0,1    characteristic bits; bits after the preperiod repeat the pattern
//! ```
//!
//! Parsing always normalizes, so two descriptions of the same set render
//! identically: finite sets become `Explicit`, sets whose tail is all ones
//! become `Cofinite`, and eventually periodic descriptions carry the shortest
//! period and preperiod.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SGapSpec {
    /// Strictly increasing, nonempty.
    Explicit(Vec<u64>),
    /// The excluded values, strictly increasing.
    Cofinite(Vec<u64>),
    /// `n ∈ S` iff bit `n` is set; bits past the preperiod cycle through `period`.
    EventuallyPeriodic { preperiod: Vec<bool>, period: Vec<bool> },
}

impl SGapSpec {
    pub fn explicit<I: IntoIterator<Item = u64>>(members: I) -> Result<Self> {
        SGapSpec::Explicit(members.into_iter().collect()).normalize()
    }

    pub fn cofinite<I: IntoIterator<Item = u64>>(excluded: I) -> Result<Self> {
        SGapSpec::Cofinite(excluded.into_iter().collect()).normalize()
    }

    pub fn eventually_periodic(preperiod: Vec<bool>, period: Vec<bool>) -> Result<Self> {
        SGapSpec::EventuallyPeriodic { preperiod, period }.normalize()
    }

    /// S = ℕ, the full shift.
    pub fn naturals() -> Self {
        SGapSpec::Cofinite(Vec::new())
    }

    /// Canonical form of the same set.
    pub fn normalize(self) -> Result<Self> {
        match self {
            SGapSpec::Explicit(mut v) => {
                v.sort_unstable();
                v.dedup();
                if v.is_empty() {
                    return Err(Error::EmptySet);
                }
                Ok(SGapSpec::Explicit(v))
            }
            SGapSpec::Cofinite(mut v) => {
                v.sort_unstable();
                v.dedup();
                Ok(SGapSpec::Cofinite(v))
            }
            SGapSpec::EventuallyPeriodic { preperiod, period } => {
                normalize_periodic(preperiod, period)
            }
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        match self {
            SGapSpec::Explicit(v) => v.binary_search(&n).is_ok(),
            SGapSpec::Cofinite(v) => v.binary_search(&n).is_err(),
            SGapSpec::EventuallyPeriodic { preperiod, period } => {
                let pre = preperiod.len() as u64;
                if n < pre {
                    preperiod[n as usize]
                } else {
                    period[((n - pre) % period.len() as u64) as usize]
                }
            }
        }
    }

    /// Largest element, or `None` when S is infinite.
    pub fn max_element(&self) -> Option<u64> {
        match self {
            SGapSpec::Explicit(v) => v.last().copied(),
            _ => None,
        }
    }

    pub fn min_element(&self) -> u64 {
        match self {
            SGapSpec::Explicit(v) => v[0],
            _ => (0..).find(|&n| self.contains(n)).unwrap_or(0),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, SGapSpec::Explicit(_))
    }

    /// Number of elements when S is finite.
    pub fn cardinality(&self) -> Option<usize> {
        match self {
            SGapSpec::Explicit(v) => Some(v.len()),
            _ => None,
        }
    }

    /// Whether some `s ∈ S` satisfies `s ≥ k`, i.e. a boundary zero-run of
    /// length `k` can occur.
    pub fn admits_run(&self, k: u64) -> bool {
        self.max_element().is_none_or(|m| k <= m)
    }

    /// Smallest `c ≥ 0` with `k + c ∈ S`.
    pub fn distance_to_next(&self, k: u64) -> Option<u64> {
        match self {
            SGapSpec::Explicit(v) => {
                let i = v.partition_point(|&s| s < k);
                v.get(i).map(|&s| s - k)
            }
            SGapSpec::Cofinite(_) => (0..).find(|&c| self.contains(k + c)),
            SGapSpec::EventuallyPeriodic { preperiod, period } => {
                let horizon = (preperiod.len() + period.len()) as u64;
                (0..=horizon).find(|&c| self.contains(k + c))
            }
        }
    }

    /// All members, in increasing order; unbounded for infinite S.
    pub fn members(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        match self {
            SGapSpec::Explicit(v) => Box::new(v.iter().copied()),
            _ => Box::new((0..).filter(move |&n| self.contains(n))),
        }
    }

    /// `{ n ∈ S : n ≤ bound }` in increasing order.
    pub fn members_up_to(&self, bound: u64) -> Vec<u64> {
        match self {
            SGapSpec::Explicit(v) => v.iter().copied().take_while(|&n| n <= bound).collect(),
            _ => (0..=bound).filter(|&n| self.contains(n)).collect(),
        }
    }

    /// A bound past which consecutive differences and residues repeat.
    fn structural_horizon(&self) -> u64 {
        match self {
            SGapSpec::Explicit(v) => *v.last().unwrap_or(&0),
            SGapSpec::Cofinite(v) => v.last().map_or(1, |&m| m + 2),
            SGapSpec::EventuallyPeriodic { preperiod, period } => {
                (preperiod.len() + 3 * period.len()) as u64
            }
        }
    }

    /// `sup_i (n_{i+1} − n_i)`; `None` means unbounded gaps. A singleton has no
    /// consecutive pairs and reports 0.
    pub fn gap_sup(&self) -> Option<u64> {
        if let SGapSpec::EventuallyPeriodic { period, .. } = self {
            if !period.iter().any(|&b| b) {
                return None;
            }
        }
        let members = self.members_up_to(self.structural_horizon());
        Some(members.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0))
    }

    /// `gcd{ n + 1 : n ∈ S }`.
    pub fn gcd_value(&self) -> u64 {
        match self {
            SGapSpec::Explicit(v) => v.iter().fold(0, |g, &n| g.gcd(&(n + 1))),
            SGapSpec::Cofinite(_) => self
                .members_up_to(self.structural_horizon())
                .iter()
                .fold(0, |g, &n| g.gcd(&(n + 1))),
            SGapSpec::EventuallyPeriodic { preperiod, period } => {
                // Every n ≥ |pre| in S has n + p ∈ S, so the gcd divides p.
                let horizon = (preperiod.len() + 2 * period.len()) as u64;
                self.members_up_to(horizon)
                    .iter()
                    .fold(period.len() as u64, |g, &n| g.gcd(&(n + 1)))
            }
        }
    }

    /// Smallest `N` such that any two words of `X(S)` can be joined by a
    /// connector of length at most `N` (the empty connector included).
    ///
    /// For words `u = …1 0^a` and `v = 0^b 1…` the shortest connectors are
    /// either `0^c` with `a + b + c ∈ S`, or `0^{c₁} 1 0^{c₂}` with `a + c₁ ∈ S`
    /// and `b + c₂ ∈ S`. Words without a 1 are factors of these cases, so the
    /// maximum over admissible `(a, b)` is exact.
    pub fn connector_length(&self) -> Option<u64> {
        self.gap_sup()?;
        let reach = match self {
            SGapSpec::Explicit(v) => *v.last().unwrap(),
            SGapSpec::Cofinite(v) => v.last().map_or(0, |&m| m + 1),
            SGapSpec::EventuallyPeriodic { preperiod, period } => {
                (preperiod.len() + period.len()) as u64
            }
        };
        let mut worst = 0;
        for a in 0..=reach {
            let ga = self.distance_to_next(a)?;
            for b in a..=reach {
                let gb = self.distance_to_next(b)?;
                let split = 1 + ga + gb;
                let joined = self.distance_to_next(a + b).map_or(split, |c| c.min(split));
                worst = worst.max(joined);
            }
        }
        Some(worst)
    }

    pub fn classify(&self) -> Classification {
        let gap_sup = self.gap_sup();
        let gcd_value = self.gcd_value();
        let is_sft = match self {
            SGapSpec::Explicit(_) | SGapSpec::Cofinite(_) => true,
            SGapSpec::EventuallyPeriodic { period, .. } => {
                period.iter().all(|&b| b) || period.iter().all(|&b| !b)
            }
        };
        let is_almost_specified = gap_sup.is_some();
        let is_mixing = gcd_value == 1;
        Classification {
            is_sft,
            is_almost_specified,
            is_mixing,
            has_specification: is_almost_specified && is_mixing,
            gap_sup,
            gcd_value,
            connector_length: self.connector_length(),
        }
    }
}

/// Classification of `X(S)` by the arithmetic of `S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub is_sft: bool,
    pub is_almost_specified: bool,
    pub is_mixing: bool,
    pub has_specification: bool,
    /// `None` when the gaps of S are unbounded.
    pub gap_sup: Option<u64>,
    pub gcd_value: u64,
    /// Exact almost-specification constant of `X(S)`; see [`SGapSpec::connector_length`].
    pub connector_length: Option<u64>,
}

pub fn parse_sgap_spec(text: &str) -> Result<SGapSpec> {
    text.parse()
}

pub fn members_up_to(spec: &SGapSpec, bound: u64) -> Vec<u64> {
    spec.members_up_to(bound)
}

pub fn classify(spec: &SGapSpec) -> Classification {
    spec.classify()
}

fn normalize_periodic(mut pre: Vec<bool>, period: Vec<bool>) -> Result<SGapSpec> {
    if period.is_empty() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "eventually periodic pattern must be nonempty".into(),
        });
    }
    if period.iter().all(|&b| !b) {
        return SGapSpec::explicit(
            pre.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| i as u64),
        );
    }
    if period.iter().all(|&b| b) {
        return SGapSpec::cofinite(
            pre.iter()
                .enumerate()
                .filter(|(_, &b)| !b)
                .map(|(i, _)| i as u64),
        );
    }
    let p = period.len();
    let d = (1..=p)
        .find(|&d| p.is_multiple_of(d) && (d..p).all(|i| period[i] == period[i - d]))
        .unwrap_or(p);
    let mut period: Vec<bool> = period[..d].to_vec();
    while let Some(&last) = pre.last() {
        if last != *period.last().unwrap() {
            break;
        }
        pre.pop();
        period.rotate_right(1);
    }
    Ok(SGapSpec::EventuallyPeriodic {
        preperiod: pre,
        period,
    })
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for SGapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SGapSpec::Explicit(v) => {
                f.write_str("{")?;
                write_list(f, v)?;
                f.write_str("}")
            }
            SGapSpec::Cofinite(v) => {
                f.write_str("co{")?;
                write_list(f, v)?;
                f.write_str("}")
            }
            SGapSpec::EventuallyPeriodic { preperiod, period } => {
                let bits = |v: &[bool]| v.iter().map(|&b| u8::from(b)).collect::<Vec<_>>();
                f.write_str("ep:pre=")?;
                write_list(f, &bits(preperiod))?;
                f.write_str(";pat=")?;
                write_list(f, &bits(period))
            }
        }
    }
}

impl FromStr for SGapSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let offset = text.len() - text.trim_start().len();
        let t = text.trim();
        if let Some(rest) = t.strip_prefix("co") {
            let body = braced(rest, offset + 2)?;
            SGapSpec::cofinite(parse_naturals(body, offset + 3)?)
        } else if t.starts_with('{') {
            let body = braced(t, offset)?;
            let members = parse_naturals(body, offset + 1)?;
            if members.is_empty() {
                return Err(Error::EmptySet);
            }
            SGapSpec::explicit(members)
        } else if let Some(rest) = t.strip_prefix("ep:") {
            let (pre, pat) = rest.split_once(';').ok_or_else(|| Error::Syntax {
                pos: offset + 3,
                msg: "expected `pre=…;pat=…`".into(),
            })?;
            let pre_body = pre.trim().strip_prefix("pre=").ok_or_else(|| Error::Syntax {
                pos: offset + 3,
                msg: "expected `pre=`".into(),
            })?;
            let pat_pos = offset + 4 + pre.len();
            let pat_body = pat.trim().strip_prefix("pat=").ok_or_else(|| Error::Syntax {
                pos: pat_pos,
                msg: "expected `pat=`".into(),
            })?;
            let preperiod = parse_bits(pre_body, offset + 7)?;
            let period = parse_bits(pat_body, pat_pos + 4)?;
            if period.is_empty() {
                return Err(Error::Syntax {
                    pos: pat_pos + 4,
                    msg: "pattern must contain at least one bit".into(),
                });
            }
            if !preperiod.iter().chain(&period).any(|&b| b) {
                return Err(Error::EmptySet);
            }
            SGapSpec::eventually_periodic(preperiod, period)
        } else {
            Err(Error::Syntax {
                pos: offset,
                msg: "expected `{…}`, `co{…}` or `ep:pre=…;pat=…`".into(),
            })
        }
    }
}

fn braced(s: &str, pos: usize) -> Result<&str> {
    s.strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::Syntax {
            pos,
            msg: "expected a braced list".into(),
        })
}

fn parse_naturals(body: &str, pos: usize) -> Result<Vec<u64>> {
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut at = pos;
    body.split(',')
        .map(|item| {
            let here = at;
            at += item.len() + 1;
            item.trim().parse::<u64>().map_err(|_| Error::Syntax {
                pos: here,
                msg: format!("`{}` is not a natural number", item.trim()),
            })
        })
        .collect()
}

fn parse_bits(body: &str, pos: usize) -> Result<Vec<bool>> {
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut at = pos;
    body.split(',')
        .map(|item| {
            let here = at;
            at += item.len() + 1;
            match item.trim() {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(Error::Syntax {
                    pos: here,
                    msg: format!("`{other}` is not a bit"),
                }),
            }
        })
        .collect()
}
