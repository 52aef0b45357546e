//! Command-line surface for the sivp toolkit: scenario config parsing,
//! analysis/simulation/sweep commands, and JSON/CSV report writers.

pub mod commands;
pub mod config;
pub mod report;
