//! Command line, JSON interchange and the acceptance-suite runner for
//! [`loopslice_core`].

pub mod acceptance;
pub mod cli;
pub mod json;
pub mod sampling;
