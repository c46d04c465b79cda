//! Modular representation theory of finite permutation groups over GF(p).
//!
//! The crate is `no_std` (it needs `alloc`). Groups are enumerated in full,
//! modules are given by generator matrices, and every question (hom spaces,
//! splittings, relative projectivity, decompositions) is reduced to exact
//! row reduction over the prime field.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod decomp;
pub mod error;
pub mod functors;
pub mod green;
pub mod groups;
pub mod linalg;
pub mod relproj;
pub mod reps;

pub use error::{Error, Result};
pub use linalg::{Echelon, Fp, FpMatrix, Prime, Rref};
