//! Report rendering shared by the `ergofit` command line and the read-only
//! HTTP service, so both emit identical numbers for identical inputs.

pub mod analysis;
pub mod error;
pub mod render;
pub mod service;

pub use error::CliError;
pub use render::Format;
