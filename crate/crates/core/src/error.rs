use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("referent map is not a single {m}-cycle")]
    NotSingleCycle { m: usize },

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("malformed configuration: {0}")]
    Malformed(String),

    #[error("m = {m} exceeds the bound {bound}")]
    BoundExceeded { m: usize, bound: usize },

    #[error("configuration is not paradoxical (even number of negating claims)")]
    NotParadoxical,

    #[error("state has support outside the {dim}-dimensional reasoning subspace")]
    SupportOutsideSubspace { dim: usize },

    #[error("initial measurement {sentence}:{value} has zero probability")]
    ZeroProbabilityMeasurement { sentence: usize, value: char },

    #[error("unsupported dimension n = {n} for m = {m} (expected 2m or 2m-1)")]
    UnsupportedDimension { m: usize, n: u32 },
}

impl Error {
    pub(crate) fn out_of_range(what: &'static str, detail: impl Into<String>) -> Self {
        Error::OutOfRange {
            what,
            detail: detail.into(),
        }
    }
}
