use thiserror::Error;

/// Errors raised by group construction and the analyses built on top of it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse group spec `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("{what} exceeds cap: {value} > {cap}")]
    CapExceeded { what: &'static str, value: u128, cap: u128 },

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("group is not Dedekind (some subgroup is not normal)")]
    NotDedekind,

    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),

    #[error("search budget exhausted")]
    Timeout,

    /// An internal consistency check failed. Reaching this is a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn cap_check(what: &'static str, value: u128, cap: u128) -> Result<()> {
    if value > cap {
        Err(Error::CapExceeded { what, value, cap })
    } else {
        Ok(())
    }
}
