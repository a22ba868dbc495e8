//! Command-line front end and HTTP service for the purgatory puzzle toolkit.

pub mod api;
pub mod commands;
pub mod server;

pub use commands::{run, Cli};
