//! Command-line companion to `hexdist-core`: result cache, tables, SVG
//! drawings, point-list files and a thread-parallel clique engine.

pub mod cache;
pub mod clock;
pub mod error;
pub mod orchestrator;
pub mod parallel;
pub mod points_file;
pub mod svg;
pub mod table;

pub use error::{Error, Result};
pub use hexdist_core;
