//! Exact-arithmetic toolkit for the spectra of symmetric matrices with a
//! prescribed graph.
//!
//! Everything here is exact: rationals are arbitrary-precision, polynomial
//! matrices are reduced by fraction-free elimination, real roots are isolated
//! by Sturm sequences with rational endpoints, and graph parameters (diameter,
//! path cover number) are computed combinatorially. No floating point is used
//! anywhere.
//!
//! The crate is `no_std` (alloc only); file IO, the CLI and JSON output live
//! in the companion `acyclic-spectra-cli` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod auditor;
pub mod exactpoly;
pub mod graphs;
pub mod polymatrix;
mod rngutil;
pub mod spectra;

pub use exactpoly::{Interval, Poly, Rational};
pub use graphs::{Graph, PathFamily, Tree};
pub use polymatrix::{PolyMatrix, RatMatrix, SnfResult};
pub use spectra::{EigenStructure, RatSymMatrix};
