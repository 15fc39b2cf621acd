use thiserror::Error;

/// Errors raised by the solvers.
///
/// The variants split into two families: input problems (`Invalid*`) and
/// numerical defects. [`Error::is_numerical`] tells them apart, which the
/// CLI uses to choose its exit code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("infinite penetration depth at omega = 0")]
    InfinitePenetrationDepth,
    #[error("degenerate transfer factor at omega = {omega} rad/s")]
    DegenerateTransferFactor { omega: f64 },
    #[error("degenerate stratum: amplitude system is singular (e -> 0)")]
    DegenerateStratum,
    #[error("non-finite {what} at omega = {omega} rad/s")]
    NonFinite { what: &'static str, omega: f64 },
    #[error("spectral reconstruction: imaginary residue {residue:e} exceeds tolerance (peak {peak:e})")]
    ImaginaryResidue { residue: f64, peak: f64 },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// True for numerical defects, false for rejected input.
    pub fn is_numerical(&self) -> bool {
        !matches!(self, Error::Invalid(_) | Error::InfinitePenetrationDepth)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
