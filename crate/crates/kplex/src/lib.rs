//! Instance formats, reports, benchmark harness and the `kplex` command
//! line around [`kplex_core`].

pub mod bench;
pub mod cli;
pub mod io;
pub mod report;
pub mod runner;

pub use kplex_core as core;
