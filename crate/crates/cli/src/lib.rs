//! Library surface of the command-line tool: the object-definition DSL and
//! the subcommand implementations, kept separate from the binary so tests
//! can drive them directly.

pub mod commands;
pub mod dsl;
