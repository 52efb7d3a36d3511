//! Library half of the CLI: command implementations, report rendering,
//! and the tuple file schema. The `mpiso` binary in `main.rs` is a thin
//! argument-parsing shell over these.

pub mod commands;
pub mod report;
pub mod tuple_file;
