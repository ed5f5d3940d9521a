//! Command-line front end: algebra files, reports and commands.

mod commands;
mod format;
mod report;

pub use commands::{bv_report, cohomology_report, execute, scenario_report, verify, Cli, Command, Output};
pub use format::{fingerprint, AlgebraFile, BasisEntry};
pub use report::{Report, Table};
