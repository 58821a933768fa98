//! Library half of the `ionphot` binary: configuration, exporters and the
//! subcommand bodies.

pub mod cli;
pub mod commands;
pub mod config;
pub mod export;
