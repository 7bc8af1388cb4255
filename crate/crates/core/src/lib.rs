//! Exact tooling for the second class of complex filiform Leibniz algebras
//! `L(β_3, …, β_n, γ)`: construction and verification of structure tables,
//! the adapted base-change action, orbit invariants, and certified
//! classification in dimensions 5 and 6.
//!
//! All arithmetic is exact over the Gaussian rationals `Q(i)`.

pub mod algebra;
pub mod classify;
pub mod error;
pub mod exactnum;
pub mod exec;
pub mod invariants;
pub mod transform;

pub use error::{Error, Result};
pub use exactnum::{MultiPoly, QiScalar};
