//! Command-line front end: JSON configs, shipped presets, report rendering
//! and the sweep driver.

pub mod app;
pub mod config;
pub mod error;
pub mod presets;
pub mod report;
pub mod run;

pub use error::CliError;
