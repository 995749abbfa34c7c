//! Operating-system side of the simultaneous palindrome toolkit.
//!
//! - [`parse`]: exact integer literals such as `1e18` or `6^20`.
//! - [`checkpoint`]: atomic checkpoint files and the advisory lock that
//!   guards them.
//! - [`runner`]: the multi-threaded search driver with periodic
//!   checkpoints and resume.
//! - [`report`]: the JSON and CSV run reports written by the binary.
//!
//! The number theory lives in [`simpal_core`].

pub mod checkpoint;
pub mod parse;
pub mod report;
pub mod runner;

pub use runner::{RunConfig, RunError, RunOutcome};
