//! Experiment pipelines behind the `qortho` binary.
//!
//! Every subcommand is a function here taking parsed options and returning
//! rows, so tests can drive the same code paths without spawning a process.

pub mod grid;
pub mod pipeline;
pub mod report;
pub mod select;

use std::fmt;

pub use grid::parse_p_grid;
pub use select::{load_code, CodeSelector, SelectOptions};

/// A check performed by the CLI itself (rather than the core library) failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckFailed(pub String);

impl fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "check failed: {}", self.0)
    }
}

impl std::error::Error for CheckFailed {}

/// 1 for mathematical/verification failures, 2 for everything else
/// (bad input, exceeded budgets, I/O).
pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<qortho::Error>() {
            return if e.is_verification() { 1 } else { 2 };
        }
        if cause.is::<CheckFailed>() {
            return 1;
        }
    }
    2
}
