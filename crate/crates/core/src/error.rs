use thiserror::Error;

/// Errors reported by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("the description encodes the empty set")]
    EmptySet,

    #[error("n = {n} exceeds the enumeration guard of {max}")]
    SizeGuard { n: usize, max: usize },

    #[error("word {0} is not admissible")]
    Inadmissible(String),

    #[error("forbidden blocks leave the empty shift")]
    EmptyShift,

    #[error("invalid forbidden-block list: {0}")]
    InvalidForbidden(String),

    #[error("budget exceeded: more than {limit} {what}")]
    Budget { what: &'static str, limit: usize },

    #[error("count table has no entry for n = {0}")]
    MissingCount(usize),

    #[error("{name} = {value} is outside {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("digit sequence contains no 1")]
    AllZeroDigits,

    #[error("numerical failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
