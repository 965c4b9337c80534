//! File formats, reports and the command-line front end for `mirrorbench-core`.

pub mod cli;
pub mod objects;
pub mod report;
pub mod skeleton_file;

pub use cli::{run, Outcome};
