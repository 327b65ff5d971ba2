//! File formats, parallel drivers and subcommands for the `enriques` tool.

pub mod commands;
pub mod formats;
pub mod ladder;
pub mod parallel;
