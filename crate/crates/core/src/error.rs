use thiserror::Error;

/// Errors raised by the numerical routines and the command surface.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("{what}: {detail}")]
    Domain { what: &'static str, detail: String },

    /// The forward scan found no sign change of the radius function.
    #[error("no sign change of {function}({n}, {m}, r) on the scan grid; last value {last_value:e} at r = {last_r}")]
    NoBracket {
        function: &'static str,
        n: u32,
        m: u32,
        last_r: f64,
        last_value: f64,
    },

    /// A denominator vanished (or changed sign) where it must stay positive.
    #[error("singular denominator in {what} at x = {x}, n = {n}")]
    Singularity { what: &'static str, x: f64, n: f64 },

    /// The threshold scan hit its cap without reaching the target radius.
    #[error("radius never reached {target} for n <= {cap}")]
    ThresholdNotReached { target: f64, cap: u32 },

    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        what,
        detail: detail.into(),
    }
}
