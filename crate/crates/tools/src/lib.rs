//! Graph file formats, JSON reports and the implementation of the `itp` command.

pub mod cli;
pub mod formats;
pub mod report;
