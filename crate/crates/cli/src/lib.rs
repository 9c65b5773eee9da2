//! Command-line front end for `rrbailey-core`: the shipped identity corpus,
//! the subcommands and their report formats.

pub mod commands;
pub mod corpus;
pub mod report;
