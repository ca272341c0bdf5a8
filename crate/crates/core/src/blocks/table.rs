use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;

use super::Word;
use crate::numeric::log2_big;
use crate::{Error, Result};

/// Exact block counts `|B_n(X)|` and follower counts `|B_{ω,r}(X)|`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlockCountTable {
    counts: BTreeMap<usize, BigUint>,
    follower_counts: BTreeMap<(Word, usize), BigUint>,
}

impl BlockCountTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_counts<I: IntoIterator<Item = (usize, BigUint)>>(counts: I) -> Self {
        BlockCountTable {
            counts: counts.into_iter().collect(),
            follower_counts: BTreeMap::new(),
        }
    }

    pub fn insert_count(&mut self, n: usize, count: BigUint) {
        self.counts.insert(n, count);
    }

    pub fn insert_follower(&mut self, word: Word, r: usize, count: BigUint) {
        self.follower_counts.insert((word, r), count);
    }

    pub fn count(&self, n: usize) -> Option<&BigUint> {
        self.counts.get(&n)
    }

    /// Like [`count`](Self::count) but reports a missing entry as an error.
    pub fn require(&self, n: usize) -> Result<&BigUint> {
        self.counts.get(&n).ok_or(Error::MissingCount(n))
    }

    pub fn follower(&self, word: &Word, r: usize) -> Option<&BigUint> {
        self.follower_counts.get(&(word.clone(), r))
    }

    pub fn counts(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.counts.iter().map(|(&n, c)| (n, c))
    }

    pub fn followers(&self) -> impl Iterator<Item = (&Word, usize, &BigUint)> {
        self.follower_counts.iter().map(|((w, r), c)| (w, *r, c))
    }

    /// Largest `N` with counts present for every `1 ≤ n ≤ N`.
    pub fn contiguous_depth(&self) -> usize {
        (1..).take_while(|n| self.counts.contains_key(n)).count()
    }

    /// CSV with columns `n,count,log2_count,log2_count_over_n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count,log2_count,log2_count_over_n\n");
        for (&n, c) in &self.counts {
            let l = log2_big(c);
            let per = if n == 0 { 0.0 } else { l / n as f64 };
            let _ = writeln!(out, "{n},{c},{l:.12},{per:.12}");
        }
        out
    }
}
