//! Verification suites, convergence studies and report plumbing for `conflat-core`.

pub mod config;
pub mod converge;
pub mod error;
pub mod report;
pub mod runner;
pub mod suites;

pub use config::{parse_config, SuiteConfig};
pub use error::{HarnessError, Result};
pub use report::{VerificationReport, Verdict};
pub use runner::{run_suite, run_suite_with_seed};
