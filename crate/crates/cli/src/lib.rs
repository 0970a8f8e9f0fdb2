//! Front-end plumbing for the `prehom` binary: flat key-value run
//! configuration, JSON/CSV report envelopes, and the subcommand
//! implementations. Kept as a library so integration tests can drive
//! commands without spawning processes.

pub mod commands;
pub mod config;
pub mod render;
pub mod report;
