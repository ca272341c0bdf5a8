//! Computation and cross-checking of S-gap shifts and related shift spaces.
//!
//! The crate is organised around five modules:
//!
//! - [`sgap`]: finite descriptions of a gap set `S ⊆ ℕ` and the classification
//!   of `X(S)` (finite type, almost specification, mixing, specification).
//! - [`blocks`]: exact block counts `|B_n(X)|` and follower counts `|B_{ω,r}(X)|`
//!   for S-gap shifts, shifts of finite type and the even shift.
//! - [`entropy`]: certified root solving for `Σ_{n∈S} λ^{-(n+1)} = 1` and
//!   count-based entropy sandwiches.
//! - [`props`]: finite-depth evidence for bounded supermultiplicativity,
//!   balancedness and Gibbs-type inequalities.
//! - [`beta`]: expansions in non-integer bases, the switch region, the
//!   Komornik–Loreti constant and the bridge between expansions of 1 and
//!   S-gap shifts.
//!
//! All block counts are arbitrary-precision integers; floating point only
//! enters through entropies and orbits of the maps `x ↦ λx − d`.

pub mod beta;
pub mod blocks;
pub mod entropy;
mod error;
pub mod numeric;
pub mod props;
pub mod sgap;

pub use error::{Error, Result};
