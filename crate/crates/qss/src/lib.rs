//! File formats, parallel sweeps and the `qss` command line on top of
//! [`qss_core`].

pub mod cli;
mod error;
pub mod figure;
pub mod format;
pub mod statefile;
pub mod sweep;

pub use error::{Error, Result};
