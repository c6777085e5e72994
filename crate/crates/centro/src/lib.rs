//! Command-line front end for `centro-core`: JSON file formats, the `centro`
//! command and a randomized self-check suite.
//!
//! Every verb reads and writes the JSON shapes of the core types, for example
//! `{"order": 2, "dim": 2, "entries": [2, 1, 1, 2]}` for a tensor and
//! `{"order": 3, "generating": [1, 2, 1]}` for a Cauchy tensor.

#![deny(missing_debug_implementations)]

pub mod cli;
mod error;
pub mod format;
pub mod suite;

pub use error::CliError;
