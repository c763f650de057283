use thiserror::Error;

/// Errors raised by the construction, analysis and simulation routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported range: {what} = {value}, supported range is {min}..={max}")]
    UnsupportedRange {
        what: &'static str,
        value: u64,
        min: u64,
        max: u64,
    },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("inconsistent weight enumerator: {0}")]
    InconsistentEnumerator(String),

    #[error("recursion produced a non-integer count: {0}")]
    RecursionInconsistency(String),

    #[error("existence theorem violated: {0}")]
    TheoremViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(what: &'static str, value: u64, min: u64, max: u64) -> Result<()> {
    if value < min || value > max {
        return Err(Error::UnsupportedRange {
            what,
            value,
            min,
            max,
        });
    }
    Ok(())
}
