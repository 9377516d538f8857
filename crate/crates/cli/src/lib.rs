//! IO, configuration, and batch-processing frontend for the spectral
//! augmentation core.

pub mod bank;
pub mod commands;
pub mod config;
pub mod error;
pub mod io;
pub mod manifest;

pub use error::{CliError, Result};
