//! Front end of the `rwall` binary: config and weather ingestion, table
//! output and the command implementations. Also writes the scenario bundles.

pub mod bundle;
pub mod commands;
pub mod config;
pub mod output;
pub mod weather;

/// Rejected input (exit 2) or numerical defect (exit 3).
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<riccati_wall::Error> for Failure {
    fn from(e: riccati_wall::Error) -> Self {
        Failure { code: if e.is_numerical() { 3 } else { 2 }, message: e.to_string() }
    }
}
