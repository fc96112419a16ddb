//! Scenario language, checks and reports behind the `zf` binary.

pub mod report;
pub mod run;
pub mod scenario;

pub use report::Report;
pub use run::{builtin, run_checks, Failure, Options};
pub use scenario::{parse_scenario, Scenario};
