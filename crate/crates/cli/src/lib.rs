//! File formats, report serialization and subcommands behind the
//! `strassen` binary.

pub mod commands;
pub mod matrix_file;
pub mod table_io;

pub use commands::CliError;
