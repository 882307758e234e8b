use thiserror::Error;

/// Errors produced by constructors and search entry points.
///
/// Formula evaluation itself never fails: once a singularity or basket
/// exists, every correction term and plurigenus is a total function of it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index must satisfy r >= 2, got r = {r}")]
    IndexOutOfRange { r: u32 },

    #[error("weight must satisfy 0 < a < r, got a = {a} for r = {r}")]
    WeightOutOfRange { r: u32, a: u32 },

    #[error("weight a = {a} is not coprime to index r = {r}")]
    NotCoprime { r: u32, a: u32 },

    #[error("P_12 must lie in 1..=4, got {p12}")]
    InvalidP12 { p12: i64 },

    #[error("search target must have nonnegative integer components, got {value} in slot {slot}")]
    InvalidTarget { slot: usize, value: String },

    #[error("unknown filter name `{0}`")]
    UnknownFilter(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}
