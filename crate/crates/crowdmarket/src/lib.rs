//! File formats, simulation studies, and the command-line front end for the
//! `crowdmarket-core` solver.

pub mod cli;
pub mod experiments;
pub mod format;
