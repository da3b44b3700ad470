//! Command-line plumbing around the `rangemode` engine: a trace runner, a
//! seeded differential fuzzer, a benchmark harness and a set intersection
//! front end. Each is usable as a library; `src/main.rs` only parses flags.

pub mod bench;
mod error;
pub mod fuzz;
pub mod intersect;
pub mod trace;

pub use error::{CliError, Result};
