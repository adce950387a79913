use thiserror::Error;

/// Errors raised by the algebra kernel and the verification drivers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("variable universes differ: [{left}] vs [{right}]")]
    UniverseMismatch { left: String, right: String },

    #[error("invalid value: {0}")]
    InvalidValue(String),

    #[error("pole: substitution makes denominator factor `{0}` vanish")]
    Pole(String),

    #[error(
        "series not invertible: factor `{0}` has zero constant term in the expansion variable"
    )]
    NotInvertible(String),

    #[error("resource limit exceeded: {what} = {requested} exceeds cap {cap}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn check_cap(what: &'static str, requested: usize, cap: usize) -> Result<()> {
        if requested > cap {
            Err(Error::ResourceLimit {
                what,
                requested,
                cap,
            })
        } else {
            Ok(())
        }
    }
}
