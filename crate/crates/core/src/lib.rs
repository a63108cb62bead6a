//! Exact combinatorics of d-semistable degenerations of primary Kodaira
//! surfaces: lattice arithmetic, periodic smoothing fans, dual graphs of
//! seminormal curves, the classifier for the three normalization types, and
//! the boundary strata of the moduli space.

pub mod boundary;
pub mod classifier;
pub mod error;
pub mod fan;
pub mod graphs;
pub mod json;
pub mod lattice;
pub mod smoothing;

pub use error::{Error, Result};
