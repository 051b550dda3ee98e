//! Perfect tilings by pairwise-distinct integer squares.
//!
//! This crate holds the pure algorithmic side of the project: exact geometry
//! and verification of square tilings, Fibonacci-extended integer sequences
//! with disjointness certificates, a complete backtracking search for perfect
//! squared rectangles, and constructions of verified plane patches built from
//! whirling squares.
//!
//! Everything is exact integer arithmetic. The crate is `no_std` and only
//! needs `alloc`; IO, JSON and the command line live in the `sqtile` crate.
//!
//! Modules:
//! - [`tiling`]: placements, regions, tilings and the verifier every other
//!   module is checked against.
//! - [`seq`]: sequence generation, scaling, disjointness certificates and the
//!   golden-ratio growth filter.
//! - [`rect`]: rectangle search, enumeration, Fibonacci extension and
//!   odd-count verdicts.
//! - [`plane`]: quadrant whirls, the one-odd pinwheel and the three-odd
//!   construction, plus plane verdicts.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod plane;
pub mod rect;
pub mod seq;
pub mod tiling;

pub use error::{Error, Result};
pub use tiling::{area_identity, odd_census, scale_tiling, verify};
pub use tiling::{Placement, Region, Tiling, VerificationReport, Violation};
