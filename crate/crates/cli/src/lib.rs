//! Command-line front end: scenario files, subcommands and output formats.

pub mod cli;
pub mod emit;
pub mod scenario;
pub mod selftest;

pub use cli::{cli_main, CliError, Outcome};
pub use emit::{emit_sweep, emit_table, EmissionFormat};
pub use scenario::{load_scenario, parse_scenario, Scenario, ScenarioError};
