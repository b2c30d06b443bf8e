//! Command-line front end for `blockpoly-core`, plus the seeded instance
//! generators used by the tests and benchmarks.

pub mod args;
pub mod bench;
pub mod gen;
pub mod run;

pub use args::{Cli, Command, GlobalArgs};
pub use run::{error_report, execute, Outcome, Status};
