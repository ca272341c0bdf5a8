//! Labelled-graph presentations and word counting.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{BlockCountTable, Word};
use crate::{Error, Result};

/// Default cap on subset states created while counting distinct words.
pub const DEFAULT_SUBSET_BUDGET: usize = 1 << 20;

/// Cap on `|alphabet|^(m-1)` candidate states for a higher-block presentation.
const MAX_BLOCK_STATES: usize = 1 << 20;

/// Deterministic labelled graph; its language is the set of label sequences
/// of finite paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftAutomaton {
    alphabet: Vec<char>,
    /// `transitions[state][letter]`
    transitions: Vec<Vec<Option<usize>>>,
    state_names: Vec<String>,
    all_states_initial: bool,
}

impl ShiftAutomaton {
    /// Builds an automaton from explicit transitions `(from, letter, to)`.
    pub fn new(
        alphabet: Vec<char>,
        state_names: Vec<String>,
        edges: &[(usize, char, usize)],
    ) -> Result<Self> {
        let letter = |c: char| alphabet.iter().position(|&a| a == c);
        let mut transitions = vec![vec![None; alphabet.len()]; state_names.len()];
        for &(from, c, to) in edges {
            let l = letter(c).ok_or_else(|| Error::InvalidForbidden(format!("letter {c}")))?;
            if from >= state_names.len() || to >= state_names.len() {
                return Err(Error::InvalidForbidden(format!("edge {from}->{to}")));
            }
            if transitions[from][l].replace(to).is_some() {
                return Err(Error::InvalidForbidden(format!(
                    "two {c}-edges leave state {from}"
                )));
            }
        }
        Ok(ShiftAutomaton {
            alphabet,
            transitions,
            state_names,
            all_states_initial: true,
        })
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.transitions.len()
    }

    pub fn num_edges(&self) -> usize {
        self.transitions.iter().flatten().filter(|t| t.is_some()).count()
    }

    pub fn state_names(&self) -> &[String] {
        &self.state_names
    }

    pub fn all_states_initial(&self) -> bool {
        self.all_states_initial
    }

    pub fn next(&self, state: usize, letter: u8) -> Option<usize> {
        self.transitions[state][letter as usize]
    }

    /// Whether `word` labels some path (from any state when all are initial,
    /// else from state 0).
    pub fn accepts(&self, word: &Word) -> bool {
        let starts: Vec<usize> = if self.all_states_initial {
            (0..self.num_states()).collect()
        } else {
            vec![0]
        };
        starts.into_iter().any(|s| {
            word.symbols()
                .iter()
                .try_fold(s, |q, &l| self.next(q, l))
                .is_some()
        })
    }

    pub fn letter_index(&self, c: char) -> Option<u8> {
        self.alphabet.iter().position(|&a| a == c).map(|i| i as u8)
    }

    /// Subset construction from the initial set; `trans[subset][letter]`.
    fn determinize(&self, budget: usize) -> Result<Vec<Vec<Option<usize>>>> {
        let start: Vec<usize> = if self.all_states_initial {
            (0..self.num_states()).collect()
        } else {
            vec![0]
        };
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut subsets = vec![start.clone()];
        ids.insert(start, 0);
        let mut trans = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            let mut row = Vec::with_capacity(self.alphabet.len());
            for l in 0..self.alphabet.len() {
                let mut image: Vec<usize> = subsets[i]
                    .iter()
                    .filter_map(|&q| self.transitions[q][l])
                    .collect();
                image.sort_unstable();
                image.dedup();
                if image.is_empty() {
                    row.push(None);
                    continue;
                }
                let next = match ids.get(&image) {
                    Some(&id) => id,
                    None => {
                        if subsets.len() >= budget {
                            return Err(Error::Budget {
                                what: "subset states",
                                limit: budget,
                            });
                        }
                        let id = subsets.len();
                        ids.insert(image.clone(), id);
                        subsets.push(image);
                        id
                    }
                };
                row.push(Some(next));
            }
            trans.push(row);
            i += 1;
        }
        Ok(trans)
    }

    /// Number of distinct words of each length `1..=n_max`.
    pub fn count_table(&self, n_max: usize, budget: usize) -> Result<BlockCountTable> {
        let dfa = self.determinize(budget)?;
        let mut weights = vec![BigUint::zero(); dfa.len()];
        weights[0] = BigUint::one();
        let mut table = BlockCountTable::new();
        for n in 1..=n_max {
            let mut next = vec![BigUint::zero(); dfa.len()];
            for (q, w) in weights.iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                for t in dfa[q].iter().flatten() {
                    next[*t] += w;
                }
            }
            weights = next;
            table.insert_count(n, weights.iter().sum());
        }
        Ok(table)
    }
}

/// Number of distinct length-`n` words readable in `aut`.
pub fn count_blocks_automaton(aut: &ShiftAutomaton, n: usize) -> Result<BigUint> {
    if n == 0 {
        return Ok(BigUint::one());
    }
    let table = aut.count_table(n, DEFAULT_SUBSET_BUDGET)?;
    Ok(table.count(n).cloned().unwrap_or_default())
}

/// Higher-block presentation of the shift of finite type `X_F`.
///
/// States are the admissible `(m−1)`-blocks, where `m` is the longest
/// forbidden word; reading letter `x` in state `u` moves to the last `m−1`
/// symbols of `ux`. States without a predecessor or successor are pruned
/// until none remain, so every remaining path extends bi-infinitely.
pub fn build_sft_automaton(alphabet: &[char], forbidden: &[String]) -> Result<ShiftAutomaton> {
    if alphabet.is_empty() {
        return Err(Error::InvalidForbidden("empty alphabet".into()));
    }
    let mut dedup = alphabet.to_vec();
    dedup.sort_unstable();
    dedup.dedup();
    if dedup.len() != alphabet.len() {
        return Err(Error::InvalidForbidden("repeated letter in alphabet".into()));
    }
    let letter = |c: char| alphabet.iter().position(|&a| a == c).map(|i| i as u8);
    let mut blocks: Vec<Vec<u8>> = Vec::with_capacity(forbidden.len());
    for f in forbidden {
        if f.is_empty() {
            return Err(Error::InvalidForbidden("empty forbidden word".into()));
        }
        let w = f
            .chars()
            .map(|c| letter(c).ok_or_else(|| Error::InvalidForbidden(format!("`{c}` in {f}"))))
            .collect::<Result<Vec<u8>>>()?;
        blocks.push(w);
    }
    let m = blocks.iter().map(Vec::len).max().unwrap_or(0);
    if m < 2 {
        return Err(Error::InvalidForbidden(
            "longest forbidden word must have length at least 2".into(),
        ));
    }
    let k = alphabet.len();
    let width = m - 1;
    let total = k
        .checked_pow(width as u32)
        .filter(|&t| t <= MAX_BLOCK_STATES)
        .ok_or(Error::Budget {
            what: "block states",
            limit: MAX_BLOCK_STATES,
        })?;

    let avoids_at_end = |w: &[u8]| blocks.iter().all(|f| !w.ends_with(f));
    let clean = |w: &[u8]| (1..=w.len()).all(|end| avoids_at_end(&w[..end]));

    let decode = |mut code: usize| {
        let mut w = vec![0u8; width];
        for slot in w.iter_mut().rev() {
            *slot = (code % k) as u8;
            code /= k;
        }
        w
    };
    let encode = |w: &[u8]| w.iter().fold(0usize, |acc, &l| acc * k + l as usize);

    let mut index = vec![usize::MAX; total];
    let mut states: Vec<Vec<u8>> = Vec::new();
    for code in 0..total {
        let w = decode(code);
        if clean(&w) {
            index[code] = states.len();
            states.push(w);
        }
    }
    let mut trans: Vec<Vec<Option<usize>>> = states
        .iter()
        .map(|u| {
            (0..k as u8)
                .map(|x| {
                    let mut ux = u.clone();
                    ux.push(x);
                    if !avoids_at_end(&ux) {
                        return None;
                    }
                    let t = index[encode(&ux[1..])];
                    (t != usize::MAX).then_some(t)
                })
                .collect()
        })
        .collect();

    // prune stranded states to a fixed point
    let mut alive = vec![true; states.len()];
    loop {
        let mut indeg = vec![0usize; states.len()];
        let mut outdeg = vec![0usize; states.len()];
        for (q, row) in trans.iter().enumerate() {
            if !alive[q] {
                continue;
            }
            for t in row.iter().flatten() {
                if alive[*t] {
                    outdeg[q] += 1;
                    indeg[*t] += 1;
                }
            }
        }
        let mut changed = false;
        for q in 0..states.len() {
            if alive[q] && (indeg[q] == 0 || outdeg[q] == 0) {
                alive[q] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut renumber = vec![usize::MAX; states.len()];
    let mut names = Vec::new();
    for (q, w) in states.iter().enumerate() {
        if alive[q] {
            renumber[q] = names.len();
            names.push(w.iter().map(|&l| alphabet[l as usize]).collect::<String>());
        }
    }
    if names.is_empty() {
        return Err(Error::EmptyShift);
    }
    let transitions = trans
        .iter_mut()
        .enumerate()
        .filter(|(q, _)| alive[*q])
        .map(|(_, row)| {
            row.iter()
                .map(|t| t.filter(|&t| alive[t]).map(|t| renumber[t]))
                .collect()
        })
        .collect();
    Ok(ShiftAutomaton {
        alphabet: alphabet.to_vec(),
        transitions,
        state_names: names,
        all_states_initial: true,
    })
}

/// Two-state presentation of the even shift: words without a factor
/// `1 0^{2k+1} 1`.
pub fn even_shift_automaton() -> ShiftAutomaton {
    ShiftAutomaton::new(
        vec!['0', '1'],
        vec!["even".into(), "odd".into()],
        &[(0, '1', 0), (0, '0', 1), (1, '0', 0)],
    )
    .expect("static presentation")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forbid(list: &str) -> Vec<String> {
        list.split(',').map(str::to_string).collect()
    }

    #[test]
    fn example_three_one_presentation() {
        let aut = build_sft_automaton(&['a', 'b', 'c', 'd'], &forbid("ac,ad,bd,ca,cb,da,db")).unwrap();
        assert_eq!(aut.num_states(), 4);
        assert_eq!(aut.num_edges(), 9);
        assert_eq!(count_blocks_automaton(&aut, 1).unwrap(), BigUint::from(4u8));
        assert_eq!(count_blocks_automaton(&aut, 2).unwrap(), BigUint::from(9u8));
        assert_eq!(count_blocks_automaton(&aut, 3).unwrap(), BigUint::from(20u8));
    }

    #[test]
    fn golden_mean_and_empty() {
        let aut = build_sft_automaton(&['0', '1'], &forbid("11")).unwrap();
        assert_eq!((aut.num_states(), aut.num_edges()), (2, 3));
        assert_eq!(
            build_sft_automaton(&['0', '1'], &forbid("00,01,10,11")),
            Err(Error::EmptyShift)
        );
        assert!(matches!(
            build_sft_automaton(&['0', '1'], &forbid("1")),
            Err(Error::InvalidForbidden(_))
        ));
        assert!(matches!(
            build_sft_automaton(&['0', '1'], &forbid("12")),
            Err(Error::InvalidForbidden(_))
        ));
    }

    #[test]
    fn pruning_removes_dead_ends() {
        // after 'b' nothing may follow, so 'b' never occurs
        let aut = build_sft_automaton(&['a', 'b'], &forbid("ba,bb")).unwrap();
        assert_eq!(aut.num_states(), 1);
        assert_eq!(count_blocks_automaton(&aut, 5).unwrap(), BigUint::one());
    }

    #[test]
    fn even_shift_small_counts() {
        let aut = even_shift_automaton();
        assert_eq!(count_blocks_automaton(&aut, 1).unwrap(), BigUint::from(2u8));
        assert_eq!(count_blocks_automaton(&aut, 3).unwrap(), BigUint::from(7u8));
        assert_eq!(count_blocks_automaton(&aut, 4).unwrap(), BigUint::from(12u8));
    }

    #[test]
    fn subset_budget_is_enforced() {
        let aut = even_shift_automaton();
        assert_eq!(
            aut.count_table(3, 1),
            Err(Error::Budget {
                what: "subset states",
                limit: 1
            })
        );
    }
}
