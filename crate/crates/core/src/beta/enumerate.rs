use serde::Serialize;

use super::{BetaContext, BranchFlag, ExpansionPrefix};
use crate::{Error, Result};

pub const MAX_ENUMERATION_DEPTH: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Enumeration {
    /// Leaves in lexicographic digit order.
    pub leaves: Vec<ExpansionPrefix>,
    /// Set when `max_leaves` stopped the search early.
    pub budget_exhausted: bool,
}

/// All digit prefixes of length `depth` that keep the orbit of 1 inside
/// `I_λ`, by depth-first search over switch-region choices.
///
/// A branch whose orbit comes too close to a switch endpoint to decide ends
/// early with `ambiguous_at` set.
pub fn enumerate_expansions_of_one(ctx: &BetaContext, depth: usize, max_leaves: usize) -> Result<Enumeration> {
    if depth > MAX_ENUMERATION_DEPTH {
        return Err(Error::SizeGuard {
            n: depth,
            max: MAX_ENUMERATION_DEPTH,
        });
    }
    let mut leaves = Vec::new();
    let mut stack = vec![ExpansionPrefix::empty(ctx, 1.0)];
    while let Some(mut node) = stack.pop() {
        if node.len() < depth {
            let flag = ctx.classify_point(node.orbit_point(), node.orbit_error);
            match flag {
                BranchFlag::Forced0 | BranchFlag::Forced1 => {
                    node.push(ctx, u8::from(flag == BranchFlag::Forced1), flag);
                    stack.push(node);
                    continue;
                }
                BranchFlag::Switch => {
                    let mut one = node.clone();
                    one.push(ctx, 1, flag);
                    node.push(ctx, 0, flag);
                    stack.push(one);
                    stack.push(node);
                    continue;
                }
                BranchFlag::Ambiguous => node.ambiguous_at = Some(node.len() + 1),
            }
        }
        if leaves.len() == max_leaves {
            return Ok(Enumeration {
                leaves,
                budget_exhausted: true,
            });
        }
        leaves.push(node);
    }
    Ok(Enumeration {
        leaves,
        budget_exhausted: false,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum UnivoqueStatus {
    UniqueUpToDepth,
    /// 1-based digit position at which both digits are possible.
    BranchAt(usize),
    AmbiguousAt(usize),
}

/// Follows the forced orbit of 1 and reports the first switch-region visit.
pub fn univoque_check(ctx: &BetaContext, depth: usize) -> UnivoqueStatus {
    let mut p = ExpansionPrefix::empty(ctx, 1.0);
    for step in 1..=depth {
        match ctx.classify_point(p.orbit_point(), p.orbit_error) {
            BranchFlag::Switch => return UnivoqueStatus::BranchAt(step),
            BranchFlag::Ambiguous => return UnivoqueStatus::AmbiguousAt(step),
            f => p.push(ctx, u8::from(f == BranchFlag::Forced1), f),
        }
    }
    UnivoqueStatus::UniqueUpToDepth
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SwitchFrequency {
    pub iterations: usize,
    /// Orbit points clearly inside `S_λ` (endpoint ties included).
    pub visits: usize,
    /// Orbit points within tolerance of an endpoint.
    pub ambiguous: usize,
    pub frequency: f64,
}

/// Fraction of the first `iterations` points of the greedy orbit of 1 that lie
/// in the switch region.
///
/// The orbit is the floating-point one; past a few dozen steps it no longer
/// tracks the exact orbit, so the value is a diagnostic only.
pub fn greedy_switch_frequency(ctx: &BetaContext, iterations: usize) -> SwitchFrequency {
    let (mut visits, mut ambiguous) = (0, 0);
    let mut x = 1.0;
    for _ in 0..iterations {
        match ctx.classify_point(x, 0.0) {
            BranchFlag::Switch => visits += 1,
            BranchFlag::Ambiguous => ambiguous += 1,
            _ => {}
        }
        let digit = u8::from(x >= ctx.switch_lo - ctx.membership_tol);
        x = ctx.step(digit, x, 0.0).0;
    }
    SwitchFrequency {
        iterations,
        visits,
        ambiguous,
        frequency: if iterations == 0 {
            0.0
        } else {
            visits as f64 / iterations as f64
        },
    }
}
