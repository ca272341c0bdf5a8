//! Expansions in a non-integer base `λ ∈ (1, 2)`.
//!
//! A sequence `(a_j)` of binary digits is a λ-expansion of `x` when
//! `Σ a_j λ^{-j} = x`. Expansions correspond to orbits of `x` under
//! `T₀(x) = λx` and `T₁(x) = λx − 1` that never leave
//! `I_λ = [0, 1/(λ−1)]`; a digit can be chosen freely exactly when the orbit
//! sits in the switch region `S_λ = [1/λ, 1/(λ(λ−1))]`.
//!
//! Orbits are computed in `f64` together with a running bound on their
//! accumulated error. A point is classified against `S_λ` three ways: clearly
//! outside (the digit is forced), clearly inside (both digits are allowed),
//! or too close to an endpoint to tell (`Ambiguous`). A point within
//! `membership_tol` of an endpoint while its error bound is still below
//! `membership_tol` is taken to be exactly on the endpoint, and endpoints
//! belong to the closed switch region.

mod bridge;
mod constructions;
mod ehj;
mod enumerate;

pub use bridge::{
    digits_from_sgap, expansion_from_sgap, komornik_loreti_constant, sgap_from_expansion,
    thue_morse, DigitSequence, ThueMorse,
};
pub use constructions::{continuum_navigator, spec_construction_lazy, NavigatorRun};
pub use ehj::{ehj_classify, EhjClassification, EhjFamily};
pub use enumerate::{
    enumerate_expansions_of_one, greedy_switch_frequency, univoque_check, Enumeration,
    SwitchFrequency, UnivoqueStatus, MAX_ENUMERATION_DEPTH,
};

use serde::Serialize;

use crate::blocks::Word;
use crate::{Error, Result};

/// `(1 + √5)/2`.
pub const GOLDEN_RATIO: f64 = 1.618_033_988_749_895;
pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BetaContext {
    pub lambda: f64,
    /// `1/(λ−1)`, the right end of `I_λ`.
    pub interval_right: f64,
    /// `1/λ`.
    pub switch_lo: f64,
    /// `1/(λ(λ−1))`.
    pub switch_hi: f64,
    pub membership_tol: f64,
    /// Bound on `|λ − λ_true|` fed into orbit error bounds.
    pub lambda_uncertainty: f64,
}

/// How the orbit point before a digit relates to the switch region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchFlag {
    Forced0,
    Forced1,
    Switch,
    Ambiguous,
}

impl BetaContext {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 1.0 && lambda < 2.0) {
            return Err(Error::Domain {
                name: "lambda",
                value: lambda,
                expected: "(1, 2)",
            });
        }
        Ok(BetaContext {
            lambda,
            interval_right: 1.0 / (lambda - 1.0),
            switch_lo: 1.0 / lambda,
            switch_hi: 1.0 / (lambda * (lambda - 1.0)),
            membership_tol: DEFAULT_MEMBERSHIP_TOL,
            lambda_uncertainty: lambda * f64::EPSILON,
        })
    }

    pub fn golden() -> Self {
        Self::new(GOLDEN_RATIO).expect("φ lies in (1, 2)")
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.membership_tol = tol;
        self
    }

    /// Use when `λ` itself is only known to within `delta`, e.g. a computed root.
    pub fn with_lambda_uncertainty(mut self, delta: f64) -> Self {
        self.lambda_uncertainty = delta;
        self
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= -self.membership_tol && x <= self.interval_right + self.membership_tol
    }

    /// Three-way switch-region test of a point known to within `err`.
    pub fn classify_point(&self, x: f64, err: f64) -> BranchFlag {
        let tol = self.membership_tol;
        let d = (x - self.switch_lo).abs().min((x - self.switch_hi).abs());
        if d <= tol && err < tol {
            return BranchFlag::Switch;
        }
        if d <= tol.max(err) {
            return BranchFlag::Ambiguous;
        }
        if x < self.switch_lo {
            BranchFlag::Forced0
        } else if x > self.switch_hi {
            BranchFlag::Forced1
        } else {
            BranchFlag::Switch
        }
    }

    /// `T_d(x)` with the propagated error bound, snapped onto the fixed points
    /// `0` and `1/(λ−1)` when indistinguishable from them.
    pub(crate) fn step(&self, digit: u8, x: f64, err: f64) -> (f64, f64) {
        let lambda = self.lambda;
        let y = apply_map(digit, x, self);
        let e = lambda * err + x.abs() * self.lambda_uncertainty + f64::EPSILON * ((lambda * x).abs() + 1.0);
        let tol = self.membership_tol;
        let right = self.interval_right;
        if e < tol && y.abs() <= tol {
            return (0.0, 0.0);
        }
        if e < tol && (y - right).abs() <= tol {
            return (right, 0.0);
        }
        (y.clamp(0.0, right), e)
    }

    fn check_start(&self, x: f64) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::Domain {
                name: "x",
                value: x,
                expected: "[0, 1/(λ−1)]",
            })
        }
    }

    /// `(2−λ)/(λ−1)`: lazy orbits end up in `(δ, 1/(λ−1)]`.
    pub fn lazy_floor(&self) -> f64 {
        (2.0 - self.lambda) / (self.lambda - 1.0)
    }
}

/// `T₀(x) = λx`, `T₁(x) = λx − 1`.
pub fn apply_map(digit: u8, x: f64, ctx: &BetaContext) -> f64 {
    ctx.lambda * x - f64::from(digit)
}

/// Digits with the orbit that produced them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionPrefix {
    pub lambda: f64,
    pub start: f64,
    pub digits: Word,
    /// `orbit[k]` is the point after `k` digits; `orbit[0] = start`.
    pub orbit: Vec<f64>,
    /// Classification of `orbit[k]` before digit `k + 1`.
    pub branch_flags: Vec<BranchFlag>,
    /// Error bound on the last orbit point.
    pub orbit_error: f64,
    /// 1-based position whose digit could not be decided.
    pub ambiguous_at: Option<usize>,
    /// `(start, length)`: digits from `start` on repeat with this period forever.
    pub eventual_period: Option<(usize, usize)>,
}

impl ExpansionPrefix {
    pub(crate) fn empty(ctx: &BetaContext, start: f64) -> Self {
        ExpansionPrefix {
            lambda: ctx.lambda,
            start,
            digits: Word(Vec::new()),
            orbit: vec![start],
            branch_flags: Vec::new(),
            orbit_error: 0.0,
            ambiguous_at: None,
            eventual_period: None,
        }
    }

    /// Appends `digit`, recording the flag of the current point.
    pub(crate) fn push(&mut self, ctx: &BetaContext, digit: u8, flag: BranchFlag) {
        let (x, e) = ctx.step(digit, self.orbit_point(), self.orbit_error);
        self.digits.0.push(digit);
        self.branch_flags.push(flag);
        self.orbit.push(x);
        self.orbit_error = e;
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn orbit_point(&self) -> f64 {
        *self.orbit.last().expect("orbit holds the start point")
    }

    /// `Σ_{j≤k} a_j λ^{-j}`.
    pub fn partial_sum(&self) -> f64 {
        partial_sum(self.digits.symbols(), self.lambda)
    }

    /// `start − Σ_{j≤k} a_j λ^{-j}`, which equals `λ^{-k}·orbit_point`.
    pub fn residual(&self) -> f64 {
        self.start - self.partial_sum()
    }

    pub fn max_zero_run(&self) -> usize {
        max_zero_run(self.digits.symbols())
    }

    pub fn digit_sequence(&self) -> DigitSequence {
        let d = self.digits.symbols();
        match self.eventual_period {
            Some((s, p)) => DigitSequence::EventuallyPeriodic {
                prefix: Word(d[..s].to_vec()),
                period: Word(d[s..s + p].to_vec()),
            },
            None => DigitSequence::Finite(self.digits.clone()),
        }
    }
}

/// `Σ_j d_j λ^{-j}` by Horner's rule from the last digit.
pub fn partial_sum(digits: &[u8], lambda: f64) -> f64 {
    digits
        .iter()
        .rev()
        .fold(0.0, |acc, &d| (acc + f64::from(d)) / lambda)
}

pub fn max_zero_run(digits: &[u8]) -> usize {
    digits
        .split(|&d| d != 0)
        .map(<[u8]>::len)
        .max()
        .unwrap_or(0)
}

/// Digits from iterating the greedy map: 1 whenever `x ≥ 1/λ`.
pub fn greedy_expansion(x: f64, ctx: &BetaContext, depth: usize) -> Result<ExpansionPrefix> {
    ctx.check_start(x)?;
    let mut p = ExpansionPrefix::empty(ctx, x.clamp(0.0, ctx.interval_right));
    for _ in 0..depth {
        let y = p.orbit_point();
        let digit = u8::from(y >= ctx.switch_lo - ctx.membership_tol);
        p.push(ctx, digit, ctx.classify_point(y, p.orbit_error));
    }
    Ok(p)
}

/// Digits from iterating the lazy map: 1 only when `x > 1/(λ(λ−1))`.
pub fn lazy_expansion(x: f64, ctx: &BetaContext, depth: usize) -> Result<ExpansionPrefix> {
    ctx.check_start(x)?;
    let mut p = ExpansionPrefix::empty(ctx, x.clamp(0.0, ctx.interval_right));
    for _ in 0..depth {
        lazy_step(ctx, &mut p);
    }
    Ok(p)
}

pub(crate) fn lazy_step(ctx: &BetaContext, p: &mut ExpansionPrefix) {
    let y = p.orbit_point();
    let digit = u8::from(y > ctx.switch_hi + ctx.membership_tol);
    p.push(ctx, digit, ctx.classify_point(y, p.orbit_error));
}

/// Smallest `N` with `δ·λ^N ≥ 1/(λ−1)`: an orbit that stays above `δ` has
/// fewer than `N` consecutive zeros.
pub fn max_zero_run_bound(delta: f64, ctx: &BetaContext) -> Result<u64> {
    if !(delta > 0.0 && delta < ctx.interval_right) {
        return Err(Error::Domain {
            name: "delta",
            value: delta,
            expected: "(0, 1/(λ−1))",
        });
    }
    let target = ctx.interval_right * (1.0 - 4.0 * f64::EPSILON);
    let mut n = ((target / delta).ln() / ctx.lambda.ln()).floor().max(1.0) as u64;
    while n > 1 && delta * ctx.lambda.powf((n - 1) as f64) >= target {
        n -= 1;
    }
    while delta * ctx.lambda.powf(n as f64) < target {
        n += 1;
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(p: &ExpansionPrefix) -> String {
        p.digits.to_string()
    }

    #[test]
    fn context_endpoints() {
        let c = BetaContext::new(1.9).unwrap();
        assert!((c.switch_hi - 1.0 / (1.9 * 0.9)).abs() < 1e-15);
        assert!(c.switch_lo < c.switch_hi && c.switch_hi < c.interval_right);
        assert!(BetaContext::new(2.0).is_err());
        assert!(BetaContext::new(1.0).is_err());
    }

    #[test]
    fn maps() {
        let g = BetaContext::golden();
        assert_eq!(apply_map(0, 0.0, &g), 0.0);
        assert!((apply_map(1, g.interval_right, &g) - g.interval_right).abs() < 1e-15);
        assert!((apply_map(1, 1.0, &g) - 1.0 / GOLDEN_RATIO).abs() < 1e-15);
    }

    #[test]
    fn golden_greedy_and_lazy() {
        let g = BetaContext::golden();
        assert_eq!(bits(&greedy_expansion(1.0, &g, 5).unwrap()), "11000");
        assert_eq!(bits(&lazy_expansion(1.0, &g, 5).unwrap()), "01111");
    }

    #[test]
    fn fixed_points() {
        for lambda in [1.2, 1.5, 1.9] {
            let c = BetaContext::new(lambda).unwrap();
            assert_eq!(bits(&greedy_expansion(0.0, &c, 6).unwrap()), "000000");
            assert_eq!(bits(&lazy_expansion(0.0, &c, 6).unwrap()), "000000");
            assert_eq!(bits(&greedy_expansion(c.interval_right, &c, 4).unwrap()), "1111");
        }
    }

    #[test]
    fn rejects_points_outside() {
        let c = BetaContext::new(1.5).unwrap();
        assert!(greedy_expansion(2.5, &c, 3).is_err());
        assert!(lazy_expansion(-0.1, &c, 3).is_err());
    }

    #[test]
    fn zero_run_bounds() {
        let c = BetaContext::new(1.5).unwrap();
        assert_eq!(max_zero_run_bound(0.1, &c).unwrap(), 8);
        assert_eq!(max_zero_run_bound(c.interval_right / 1.5, &c).unwrap(), 1);
        assert_eq!(max_zero_run_bound(0.5, &BetaContext::golden()).unwrap(), 3);
        assert!(max_zero_run_bound(0.0, &c).is_err());
    }

    #[test]
    fn partial_sum_identity() {
        let c = BetaContext::new(1.7).unwrap();
        let p = lazy_expansion(0.9, &c, 30).unwrap();
        let k = p.len() as i32;
        assert!((p.residual() - p.orbit_point() * c.lambda.powi(-k)).abs() < 1e-10);
    }

    #[test]
    fn endpoint_tie_is_a_branch() {
        let g = BetaContext::golden();
        assert_eq!(g.classify_point(1.0, 0.0), BranchFlag::Switch);
        assert_eq!(g.classify_point(1.0, 1e-6), BranchFlag::Ambiguous);
        assert_eq!(g.classify_point(0.3, 1e-6), BranchFlag::Forced0);
        assert_eq!(g.classify_point(1.5, 0.0), BranchFlag::Forced1);
    }
}
