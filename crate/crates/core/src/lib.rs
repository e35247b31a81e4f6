//! Exact search for large few-distance sets on the triangular lattice.
#![no_std]

extern crate alloc;

mod bitset;
pub mod clique;
pub mod error;
pub mod graph;
pub mod hexagon;
pub mod lattice;
pub mod search;

pub use bitset::BitSet;
pub use error::{Error, MenuDefect};
