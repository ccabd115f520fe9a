use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree of the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("coefficient at exponent {requested} is beyond the reliable order {order}")]
    Truncation { requested: i64, order: i64 },

    #[error("cannot invert a series that vanishes up to its order")]
    ZeroSeries,

    #[error("no unique power-series root: {0}")]
    NoSeriesRoot(String),

    #[error("split constraint m < 2^n + 2 - n violated for m = {m}, n = {n}")]
    SplitConstraint { m: u64, n: u32 },

    #[error("target {target} is below the minimum {min} for this method")]
    BelowMinimum { target: u64, min: u64 },

    #[error("seed row index {0} is too large to materialize")]
    SeedTooLarge(u32),

    #[error("assembled value is not an integer: {0}")]
    NotIntegral(String),

    #[error("leading recurrence coefficient vanishes at k = {k} (j = {j})")]
    SingularRecurrence { k: i64, j: i64 },

    #[error("recurrence values left the dyadic rationals at k = {0}")]
    NotDyadic(i64),

    #[error("the elimination system has only the trivial solution")]
    TrivialSolution,

    #[error("recurrence fit: {0}")]
    Fit(String),

    #[error("recurrence validation failed: {0}")]
    Validation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cache format: {0}")]
    Cache(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
