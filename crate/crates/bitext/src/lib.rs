//! Files, configuration and orchestration around `bitext-core`: Moses and
//! TSV readers, a multi-threaded filter driver, the JSON pipeline config
//! and the `build` command that produces a split dataset directory.

pub mod build;
pub mod config;
pub mod error;
pub mod io;
pub mod parallel;

pub use error::{Error, Result};
