//! File formats, subcommands and the fuzz harness behind the `blockslide`
//! command.

pub mod commands;
pub mod fuzz;
pub mod instance;
