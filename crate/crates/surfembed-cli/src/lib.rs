//! Instance and verdict files, the shipped example corpus and the
//! subcommands of the `surfembed` binary.

pub mod commands;
pub mod corpus;
pub mod knots;
pub mod schema;
pub mod verdict;
