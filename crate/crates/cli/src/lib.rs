//! Support code for the `homds` binary: the acceptance suites and report
//! rendering.

pub mod output;
pub mod suites;
