//! Linear extremal problems in Bergman spaces `A^p` for even `p`.
//!
//! The crate solves `sup { Re φ(f) : ‖f‖_{A^p} = 1 }` for functionals
//! `φ(f) = ∫_D f k̄ dσ` over polynomial subspaces, certifies the answer with
//! the integral characterization of extremal functions, and checks the
//! Hardy-space identities and bounds satisfied by the extremal function.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod error;
pub mod kernels;
pub mod oracle;
pub mod polycore;
pub mod report;
pub mod solver;
pub mod spaces;
pub mod theorems;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use polycore::{AnalyticPoly, TrigPoly};
