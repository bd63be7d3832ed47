//! Exact kernels for matrix pairs over truncated Laurent series, principal
//! Slodowy slices, characteristic-polynomial fibers, graded dimension
//! bookkeeping and graded branching of `GL` characters.
//!
//! Everything here is `no_std` with `alloc`; IO, JSON and the command line
//! live in the `loopslice` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod branching;
pub mod error;
pub mod exactnum;
pub mod fibers;
pub mod graded;
pub mod lattice;
pub mod slodowy;

pub use error::{Error, Result};
pub use exactnum::{MultiPoly, Poly, QMatrix, Rational, TruncatedLaurent};

/// Working precision used when the caller does not pick one.
pub const DEFAULT_PRECISION: i64 = 8;
