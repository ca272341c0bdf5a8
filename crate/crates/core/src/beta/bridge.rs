//! Expansions of 1 as gap sets: `(a_j)` corresponds to `S = {j−1 : a_j = 1}`,
//! and the entropy of `X(S)` is `log λ` exactly when `(a_j)` is a
//! λ-expansion of 1.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::blocks::Word;
use crate::entropy::{solve_unit_series, EntropyResult, LogBase, UnitSeries};
use crate::sgap::SGapSpec;
use crate::{Error, Result};

/// A finite digit word, or one whose tail repeats forever.
///
/// Written `0110` or `01(1)`, the parenthesised block being the period.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DigitSequence {
    Finite(Word),
    EventuallyPeriodic { prefix: Word, period: Word },
}

impl DigitSequence {
    /// Digit `a_j` for `j ≥ 1`.
    pub fn digit(&self, j: usize) -> u8 {
        if j == 0 {
            return 0;
        }
        match self {
            DigitSequence::Finite(w) => w.symbols().get(j - 1).copied().unwrap_or(0),
            DigitSequence::EventuallyPeriodic { prefix, period } => {
                let i = j - 1;
                if i < prefix.len() {
                    prefix.symbols()[i]
                } else {
                    period.symbols()[(i - prefix.len()) % period.len()]
                }
            }
        }
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word((1..=len).map(|j| self.digit(j)).collect())
    }
}

impl fmt::Display for DigitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DigitSequence::Finite(w) => write!(f, "{w}"),
            DigitSequence::EventuallyPeriodic { prefix, period } => write!(f, "{prefix}({period})"),
        }
    }
}

impl FromStr for DigitSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let syntax = |pos: usize, msg: &str| Error::Syntax {
            pos,
            msg: msg.to_string(),
        };
        let word = |text: &str, offset: usize| -> Result<Word> {
            match text.bytes().position(|b| b != b'0' && b != b'1') {
                Some(p) => Err(syntax(offset + p, "expected 0 or 1")),
                None => Ok(Word(text.bytes().map(|b| b - b'0').collect())),
            }
        };
        match s.find('(') {
            None => Ok(DigitSequence::Finite(word(s, 0)?)),
            Some(open) => {
                if !s.ends_with(')') {
                    return Err(syntax(s.len(), "expected ')' at the end"));
                }
                let period = word(&s[open + 1..s.len() - 1], open + 1)?;
                if period.is_empty() {
                    return Err(syntax(open + 1, "empty period"));
                }
                Ok(DigitSequence::EventuallyPeriodic {
                    prefix: word(&s[..open], 0)?,
                    period,
                })
            }
        }
    }
}

impl Serialize for DigitSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DigitSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn bools(w: &Word) -> Vec<bool> {
    w.symbols().iter().map(|&d| d == 1).collect()
}

/// `S = {j−1 : a_j = 1}`.
pub fn sgap_from_expansion(digits: &DigitSequence) -> Result<SGapSpec> {
    let spec = match digits {
        DigitSequence::Finite(w) => {
            let members = w.symbols().iter().enumerate().filter(|(_, &d)| d == 1).map(|(i, _)| i as u64);
            SGapSpec::explicit(members)
        }
        DigitSequence::EventuallyPeriodic { prefix, period } => {
            SGapSpec::eventually_periodic(bools(prefix), bools(period))
        }
    };
    spec.map_err(|e| match e {
        Error::EmptySet => Error::AllZeroDigits,
        e => e,
    })
}

/// Indicator word `a_j = [j−1 ∈ S]` for `j = 1..=length`.
pub fn expansion_from_sgap(spec: &SGapSpec, length: usize) -> Word {
    Word((0..length as u64).map(|n| u8::from(spec.contains(n))).collect())
}

/// The whole indicator sequence of `S` as a finite description.
pub fn digits_from_sgap(spec: &SGapSpec) -> DigitSequence {
    let bits = |v: &[bool]| Word(v.iter().map(|&b| u8::from(b)).collect());
    match spec {
        SGapSpec::Explicit(v) => {
            let last = *v.last().expect("explicit sets are nonempty");
            DigitSequence::Finite(expansion_from_sgap(spec, last as usize + 1))
        }
        SGapSpec::Cofinite(v) => DigitSequence::EventuallyPeriodic {
            prefix: expansion_from_sgap(spec, v.last().map_or(0, |&m| m as usize + 1)),
            period: Word(vec![1]),
        },
        SGapSpec::EventuallyPeriodic { preperiod, period } => DigitSequence::EventuallyPeriodic {
            prefix: bits(preperiod),
            period: bits(period),
        },
    }
}

/// Bit `n` of the Thue–Morse sequence: `ω₀ = 0`, `ω_{2i} = ω_i`,
/// `ω_{2i+1} = 1 − ω_i`.
pub fn thue_morse(n: u64) -> u8 {
    let mut bit = 0;
    let mut i = n;
    while i > 0 {
        bit ^= (i & 1) as u8;
        i >>= 1;
    }
    bit
}

/// `Σ_{j≥1} ω_j λ^{-j}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ThueMorse;

impl UnitSeries for ThueMorse {
    fn digit(&self, j: u64) -> bool {
        thue_morse(j) == 1
    }

    fn last_one(&self) -> Option<u64> {
        None
    }

    fn ones(&self) -> Option<u64> {
        None
    }
}

/// The smallest base in which 1 has a unique expansion, the root of
/// `Σ_{j≥1} ω_j λ^{-j} = 1`.
pub fn komornik_loreti_constant(tol: f64) -> Result<EntropyResult> {
    solve_unit_series(&ThueMorse, tol, LogBase::Two)
}
