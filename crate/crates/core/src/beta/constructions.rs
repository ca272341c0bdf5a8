//! Expansions of 1 built to have prescribed digit statistics.

use serde::Serialize;

use super::{lazy_step, BetaContext, ExpansionPrefix, GOLDEN_RATIO};
use crate::{Error, Result};

/// Expansion of 1 beginning `1, 1` and continuing with the lazy map from
/// `T₁²(1)`, for `λ ∈ [φ, 2)`.
///
/// Stops early with `eventual_period` set when the orbit returns to an
/// earlier point; otherwise the word is cut at `depth`.
pub fn spec_construction_lazy(ctx: &BetaContext, depth: usize) -> Result<ExpansionPrefix> {
    if ctx.lambda < GOLDEN_RATIO - ctx.membership_tol {
        return Err(Error::Domain {
            name: "lambda",
            value: ctx.lambda,
            expected: "[φ, 2)",
        });
    }
    if depth < 3 {
        return Err(Error::Domain {
            name: "depth",
            value: depth as f64,
            expected: "[3, ∞)",
        });
    }
    let mut p = ExpansionPrefix::empty(ctx, 1.0);
    for _ in 0..2 {
        let flag = ctx.classify_point(p.orbit_point(), p.orbit_error);
        p.push(ctx, 1, flag);
    }
    while p.len() < depth {
        lazy_step(ctx, &mut p);
        let k = p.len();
        let x = p.orbit[k];
        if let Some(i) = (2..k).find(|&i| (p.orbit[i] - x).abs() <= ctx.membership_tol) {
            // orbit[k] = orbit[i], so digits i..k repeat forever
            p.eventual_period = Some((i, k - i));
            break;
        }
    }
    Ok(p)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NavigatorRun {
    pub prefix: ExpansionPrefix,
    /// Trap interval `[1/(λ²−1), λ/(λ²−1)]`.
    pub trap: (f64, f64),
    /// Orbit index at which the trap was first reached.
    pub entry_index: Option<usize>,
    pub choices_used: usize,
    pub choices_exhausted: bool,
}

/// One member of the continuum of expansions of 1 for `λ ∈ (1, φ)`.
///
/// The word starts `0ⁿ, 1, 1` with `n` minimal such that `λⁿ > λ/(λ²−1)`,
/// then steers the orbit into the trap interval, which lies strictly inside
/// the switch region. Each trap visit consumes one bit of `choices` as the
/// next digit; after a 0 the orbit is brought back with `T₁`, after a 1 with
/// `T₀`.
pub fn continuum_navigator(ctx: &BetaContext, choices: &[u8], depth: usize) -> Result<NavigatorRun> {
    if ctx.lambda >= GOLDEN_RATIO {
        return Err(Error::Domain {
            name: "lambda",
            value: ctx.lambda,
            expected: "(1, φ)",
        });
    }
    let lambda = ctx.lambda;
    let tol = ctx.membership_tol;
    let a = 1.0 / (lambda * lambda - 1.0);
    let b = lambda * a;
    let mut run = NavigatorRun {
        prefix: ExpansionPrefix::empty(ctx, 1.0),
        trap: (a, b),
        entry_index: None,
        choices_used: 0,
        choices_exhausted: false,
    };
    let push = |run: &mut NavigatorRun, digit: u8| -> bool {
        if run.prefix.len() >= depth {
            return false;
        }
        let p = &mut run.prefix;
        let flag = ctx.classify_point(p.orbit_point(), p.orbit_error);
        p.push(ctx, digit, flag);
        true
    };

    while run.prefix.orbit_point() <= b {
        if !push(&mut run, 0) {
            return Ok(run);
        }
    }
    for _ in 0..2 {
        if !push(&mut run, 1) {
            return Ok(run);
        }
    }
    loop {
        let x = run.prefix.orbit_point();
        let digit = if x < a - tol {
            0
        } else if x > b + tol {
            1
        } else {
            run.entry_index.get_or_insert(run.prefix.len());
            match choices.get(run.choices_used) {
                Some(&c) => {
                    run.choices_used += 1;
                    c.min(1)
                }
                None => {
                    run.choices_exhausted = run.prefix.len() < depth;
                    return Ok(run);
                }
            }
        };
        if !push(&mut run, digit) {
            return Ok(run);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beta::{max_zero_run_bound, sgap_from_expansion};

    #[test]
    fn golden_lazy_construction_is_eventually_zero() {
        let p = spec_construction_lazy(&BetaContext::golden(), 10).unwrap();
        assert_eq!(p.digit_sequence().to_string(), "11(0)");
        let s = sgap_from_expansion(&p.digit_sequence()).unwrap();
        assert_eq!(s.to_string(), "{0,1}");
    }

    #[test]
    fn lazy_construction_bounds_zero_runs() {
        let c = BetaContext::new(1.8).unwrap();
        let p = spec_construction_lazy(&c, 50).unwrap();
        assert_eq!(&p.digits.symbols()[..2], &[1, 1]);
        let bound = max_zero_run_bound(c.lazy_floor(), &c).unwrap() as usize;
        assert!(p.max_zero_run() <= bound);
        let s = sgap_from_expansion(&p.digit_sequence()).unwrap();
        assert!(s.classify().has_specification);
    }

    #[test]
    fn construction_rejects_small_bases() {
        assert!(spec_construction_lazy(&BetaContext::new(1.5).unwrap(), 10).is_err());
        assert!(continuum_navigator(&BetaContext::new(1.7).unwrap(), &[0], 10).is_err());
    }

    #[test]
    fn trap_lies_inside_switch_region() {
        let c = BetaContext::new(1.4).unwrap();
        let run = continuum_navigator(&c, &[0; 40], 40).unwrap();
        let (a, b) = run.trap;
        assert!((a - 1.0 / 0.96).abs() < 1e-12 && (b - 1.4 / 0.96).abs() < 1e-12);
        assert!(a > c.switch_lo && b < c.switch_hi);
    }

    #[test]
    fn choices_change_the_word() {
        let c = BetaContext::new(1.4).unwrap();
        let zeros = continuum_navigator(&c, &[0; 40], 40).unwrap();
        let mut other = vec![0u8; 40];
        other[0] = 1;
        let ones = continuum_navigator(&c, &other, 40).unwrap();
        assert_eq!(zeros.prefix.len(), 40);
        assert_ne!(zeros.prefix.digits, ones.prefix.digits);
        assert!(zeros.entry_index.is_some());
    }

    #[test]
    fn exhausted_choices_are_flagged() {
        let run = continuum_navigator(&BetaContext::new(1.4).unwrap(), &[1], 60).unwrap();
        assert!(run.choices_exhausted);
        assert_eq!(run.choices_used, 1);
    }
}
