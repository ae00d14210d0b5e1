//! File formats, experiment drivers and the `aco` command line on top of
//! [`aco_core`].

pub mod cli;
pub mod config;
pub mod experiment;
pub mod io;
pub mod report;
