//! Exact block and follower counts.
//!
//! A binary word is admissible in `X(S)` when every zero-run bounded by ones
//! on both sides has length in `S`, every zero-run touching an end of the word
//! has length at most `sup S`, and `0ⁿ` needs `n ≤ sup S`. Boundary runs only
//! need to extend to some element of `S`, since the language of a shift space
//! includes blocks of its limit points.

mod automaton;
mod table;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::sgap::SGapSpec;
use crate::{Error, Result};

pub use automaton::{
    build_sft_automaton, count_blocks_automaton, even_shift_automaton, ShiftAutomaton,
    DEFAULT_SUBSET_BUDGET,
};
pub use table::BlockCountTable;

/// Longest word [`enumerate_blocks_sgap`] will expand.
pub const MAX_ENUMERATION_LENGTH: usize = 22;

/// A finite word; symbols are letter indices (0/1 for binary shifts).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    /// `1·0^k`, the word ending a block with a zero-run of length `k`.
    pub fn one_then_zeros(k: usize) -> Self {
        let mut v = vec![1];
        v.resize(k + 1, 0);
        Word(v)
    }

    pub fn zeros(k: usize) -> Self {
        Word(vec![0; k])
    }

    /// Length of the trailing zero-run and whether the word contains a 1.
    pub fn suffix_state(&self) -> (bool, usize) {
        let k = self.0.iter().rev().take_while(|&&s| s == 0).count();
        (k < self.0.len(), k)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Syntax {
                    pos: i,
                    msg: format!("`{c}` is not a binary digit"),
                }),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Direct admissibility test for a binary word in `X(S)`.
pub fn is_admissible_sgap(spec: &SGapSpec, word: &[u8]) -> bool {
    let ones: Vec<usize> = word
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == 1)
        .map(|(i, _)| i)
        .collect();
    if word.iter().any(|&s| s > 1) {
        return false;
    }
    let (Some(&first), Some(&last)) = (ones.first(), ones.last()) else {
        return spec.admits_run(word.len() as u64);
    };
    spec.admits_run(first as u64)
        && spec.admits_run((word.len() - 1 - last) as u64)
        && ones
            .windows(2)
            .all(|w| spec.contains((w[1] - w[0] - 1) as u64))
}

/// Counts of words of each length `m` that may follow a `1`.
///
/// `tails[m]` counts words `α` of length `m` such that `1α` is admissible
/// when only the right boundary is free: `α = 0^{s₁}1 0^{s₂}1 ⋯ 0^t` with
/// `sᵢ ∈ S` and `t ≤ sup S`.
pub(crate) struct SGapCounter<'a> {
    spec: &'a SGapSpec,
    tails: Vec<BigUint>,
}

impl<'a> SGapCounter<'a> {
    pub(crate) fn new(spec: &'a SGapSpec, max_len: usize) -> Self {
        let members: Vec<usize> = match max_len {
            0 => Vec::new(),
            m => spec
                .members_up_to(m as u64 - 1)
                .into_iter()
                .map(|n| n as usize)
                .collect(),
        };
        let mut tails: Vec<BigUint> = Vec::with_capacity(max_len + 1);
        for m in 0..=max_len {
            let mut w = if spec.admits_run(m as u64) {
                BigUint::one()
            } else {
                BigUint::zero()
            };
            for &s in members.iter().take_while(|&&s| s < m) {
                w += &tails[m - s - 1];
            }
            tails.push(w);
        }
        SGapCounter { spec, tails }
    }

    fn ensure(&mut self, max_len: usize) {
        if max_len + 1 > self.tails.len() {
            *self = SGapCounter::new(self.spec, max_len.max(2 * self.tails.len()));
        }
    }

    /// `|B_n(X(S))|`.
    pub(crate) fn blocks(&mut self, n: usize) -> BigUint {
        if n == 0 {
            return BigUint::one();
        }
        self.ensure(n);
        let mut total = if self.spec.admits_run(n as u64) {
            BigUint::one()
        } else {
            BigUint::zero()
        };
        for lead in 0..n {
            if !self.spec.admits_run(lead as u64) {
                break;
            }
            total += &self.tails[n - 1 - lead];
        }
        total
    }

    /// Followers of length `r` for a word with the given suffix state.
    pub(crate) fn followers(&mut self, has_one: bool, run: usize, r: usize) -> BigUint {
        self.ensure(r);
        let mut total = if self.spec.admits_run((run + r) as u64) {
            BigUint::one()
        } else {
            BigUint::zero()
        };
        for c in 0..r {
            let closing = (run + c) as u64;
            let ok = if has_one {
                self.spec.contains(closing)
            } else {
                self.spec.admits_run(closing)
            };
            if ok {
                total += &self.tails[r - c - 1];
            }
        }
        total
    }
}

/// `|B_n(X(S))|` by dynamic programming over zero-runs.
pub fn count_blocks_sgap(spec: &SGapSpec, n: usize) -> BigUint {
    SGapCounter::new(spec, n).blocks(n)
}

/// Counts `|B_n(X(S))|` for `1 ≤ n ≤ n_max`.
pub fn sgap_count_table(spec: &SGapSpec, n_max: usize) -> BlockCountTable {
    let mut counter = SGapCounter::new(spec, n_max);
    let mut table = BlockCountTable::new();
    for n in 1..=n_max {
        table.insert_count(n, counter.blocks(n));
    }
    table
}

/// All admissible words of length `n`, lexicographically sorted, by filtering
/// every binary word.
pub fn enumerate_blocks_sgap(spec: &SGapSpec, n: usize) -> Result<Vec<Word>> {
    if n > MAX_ENUMERATION_LENGTH {
        return Err(Error::SizeGuard {
            n,
            max: MAX_ENUMERATION_LENGTH,
        });
    }
    let mut out = Vec::new();
    let mut buf = vec![0u8; n];
    for code in 0u64..(1u64 << n) {
        for (i, b) in buf.iter_mut().enumerate() {
            *b = ((code >> (n - 1 - i)) & 1) as u8;
        }
        if is_admissible_sgap(spec, &buf) {
            out.push(Word(buf.clone()));
        }
    }
    Ok(out)
}

/// `|B_{ω,r}(X(S))|`: the number of `α` of length `r` with `ωα` admissible.
/// Depends on `ω` only through its trailing zero-run and whether it has a 1.
pub fn follower_count(spec: &SGapSpec, word: &Word, r: usize) -> Result<BigUint> {
    if !is_admissible_sgap(spec, word.symbols()) {
        return Err(Error::Inadmissible(word.to_string()));
    }
    if word.is_empty() {
        return Ok(count_blocks_sgap(spec, r));
    }
    let (has_one, run) = word.suffix_state();
    Ok(SGapCounter::new(spec, r).followers(has_one, run, r))
}

/// An admissible word of exactly `len` symbols ending in `1·0^run`, or `0^len`
/// when `has_one` is false.
pub fn class_representative(
    spec: &SGapSpec,
    has_one: bool,
    run: usize,
    len: usize,
) -> Option<Word> {
    if !has_one {
        return (run == len && spec.admits_run(len as u64)).then(|| Word::zeros(len));
    }
    if run >= len || !spec.admits_run(run as u64) {
        return None;
    }
    // how an admissible word of length m ending in 1 can be built
    #[derive(Clone, Copy)]
    enum Step {
        Lead,
        Gap(usize),
    }
    let head = len - run;
    let mut reach: Vec<Option<Step>> = vec![None; head + 1];
    for m in 1..=head {
        reach[m] = if spec.admits_run((m - 1) as u64) {
            Some(Step::Lead)
        } else {
            (0..m - 1)
                .find(|&s| spec.contains(s as u64) && reach[m - 1 - s].is_some())
                .map(Step::Gap)
        };
    }
    // zero-runs preceding each 1, collected from the right
    let mut runs = Vec::new();
    let mut m = head;
    while m > 0 {
        match reach[m]? {
            Step::Lead => {
                runs.push(m - 1);
                m = 0;
            }
            Step::Gap(s) => {
                runs.push(s);
                m -= s + 1;
            }
        }
    }
    let mut symbols = Vec::with_capacity(len);
    for &z in runs.iter().rev() {
        symbols.extend(std::iter::repeat_n(0, z));
        symbols.push(1);
    }
    symbols.extend(std::iter::repeat_n(0, run));
    let w = Word(symbols);
    debug_assert!(is_admissible_sgap(spec, w.symbols()));
    Some(w)
}
