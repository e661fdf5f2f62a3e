//! Command-line front end: context formats, DOT output and the `concept`
//! subcommands.

mod cli;
pub mod dot;
pub mod format;

pub use cli::{run, Cli, EXIT_CHECK_FAILED, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE};
