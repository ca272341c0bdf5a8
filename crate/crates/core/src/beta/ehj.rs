//! The expansions of 1 in the golden base: `(10)^∞`, `(10)ⁿ 1 1 0^∞` and
//! `(10)ⁿ 0 1^∞` for `n ≥ 0`.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EhjFamily {
    Periodic10,
    /// `(10)ⁿ 1 1 0^∞`.
    Family11ZerosTail(usize),
    /// `(10)ⁿ 0 1^∞`.
    Family01OnesTail(usize),
    NotAPrefix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EhjClassification {
    pub family: EhjFamily,
    /// Other families the word is also a prefix of, each with its least `n`.
    pub also: Vec<EhjFamily>,
}

fn periodic(i: usize) -> u8 {
    u8::from(i.is_multiple_of(2))
}

fn family_digit(family: EhjFamily, i: usize) -> u8 {
    match family {
        EhjFamily::Periodic10 | EhjFamily::NotAPrefix => periodic(i),
        EhjFamily::Family11ZerosTail(n) => match i {
            i if i < 2 * n => periodic(i),
            i if i <= 2 * n + 1 => 1,
            _ => 0,
        },
        EhjFamily::Family01OnesTail(n) => match i {
            i if i < 2 * n => periodic(i),
            i if i == 2 * n => 0,
            _ => 1,
        },
    }
}

fn is_prefix_of(digits: &[u8], family: EhjFamily) -> bool {
    digits.iter().enumerate().all(|(i, &d)| d == family_digit(family, i))
}

/// Which golden-base expansion of 1 the word begins.
///
/// A prefix of `(10)^∞` is reported as `Periodic10`, listing in `also` the
/// first member of each other family it begins. Any other word leaves
/// `(10)^∞` at a single position, which fixes the family and `n`.
pub fn ehj_classify(digits: &[u8]) -> EhjClassification {
    match digits.iter().enumerate().position(|(i, &d)| d != periodic(i)) {
        None => {
            let reach = digits.len() / 2 + 1;
            let also = [EhjFamily::Family11ZerosTail as fn(usize) -> EhjFamily, EhjFamily::Family01OnesTail]
                .iter()
                .filter_map(|make| (0..=reach).map(make).find(|&f| is_prefix_of(digits, f)))
                .collect();
            EhjClassification {
                family: EhjFamily::Periodic10,
                also,
            }
        }
        Some(p) => {
            let candidate = if p % 2 == 1 {
                EhjFamily::Family11ZerosTail((p - 1) / 2)
            } else {
                EhjFamily::Family01OnesTail(p / 2)
            };
            EhjClassification {
                family: if is_prefix_of(digits, candidate) {
                    candidate
                } else {
                    EhjFamily::NotAPrefix
                },
                also: Vec::new(),
            }
        }
    }
}
