//! Command-line driver for `ergokit-core`: built-in scenarios, TOML scenario
//! files, detuning sweeps and CSV/JSON trajectory output.

pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod runner;

pub use error::{CliError, Result};
