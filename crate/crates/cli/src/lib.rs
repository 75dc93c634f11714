//! Suite configuration, batch execution and report emission for the
//! `dirichlet` command.

pub mod config;
pub mod corpus;
pub mod emit;
pub mod runner;

pub use config::{parse_config, Check, ConfigError, OutputFormat, SuiteConfig, VerifyCase};
pub use emit::{emit_report, records, CaseRecord};
pub use runner::{convergence, run_case, run_suite, CaseReport, CheckRecord, ConvergenceRow};

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAIL: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const IO: i32 = 3;
}
