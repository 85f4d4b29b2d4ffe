//! Library side of the `emin-lab` binary: experiment runners, verification
//! suites, serialization, and the golden worked example. The binary is a thin
//! argument-parsing layer over these modules, and the acceptance suite calls
//! them directly.

pub mod config;
pub mod experiment;
pub mod golden;
pub mod io;
pub mod stats;
pub mod suites;
pub mod svg;
