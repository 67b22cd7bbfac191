//! Star edge-coloring of subcubic multigraphs.
//!
//! A star edge-coloring is a proper edge-coloring in which no path and no
//! cycle on exactly four edges is bichromatic (uses exactly two colors).
//! This crate constructs such colorings for loopless multigraphs of maximum
//! degree at most three, where every edge draws its color from its own list
//! of at least seven candidates. It also ships exhaustive oracles for small
//! instances, a violation-reporting verifier, and deterministic generators,
//! all wired into the `starlit` command-line tool.

pub mod colorer;
pub mod cycles;
pub mod decompose;
pub mod error;
pub mod format;
pub mod fuzz;
pub mod gen;
pub mod multigraph;
pub mod oracle;
pub mod verifier;

pub mod cli;

pub use error::{Error, Result};
