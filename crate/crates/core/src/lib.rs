//! Exact generalized Pascal matrices.
//!
//! A generalized Pascal matrix is the lower triangle with entries
//! `c_m c_{n-m} / c_n` for a series `c` with `c_0 = c_1 = 1`. This crate
//! builds finite truncations of such matrices with exact rational entries,
//! evaluates single coefficients lazily, and checks the algebraic identities
//! they satisfy: the Hadamard group, the special system `phi,q P`, fractal
//! matrices, zero (Sierpinski) matrices and the digit calculus around them.

pub mod digits;
pub mod error;
pub mod exec;
pub mod fractal;
pub mod gpspec;
pub mod io;
pub mod matrix;
pub mod pascal;
pub mod poly;
pub mod rational;
pub mod report;
pub mod sequence;
pub mod special;
pub mod verify;
pub mod zero;

pub use error::{Error, Result};
pub use exec::Strategy;
pub use gpspec::GPSpec;
pub use matrix::TriangularMatrix;
pub use poly::Polynomial;
pub use rational::ExactRational;
pub use report::Report;
pub use sequence::{BSequence, CSequence};
