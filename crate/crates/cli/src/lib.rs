//! Command implementations behind the `garmwarp` binary, exposed as a
//! library so integration tests can drive them directly.

pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod report;
