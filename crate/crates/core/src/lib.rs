//! Discrete fractional Laplacian on linear chains and its continuum-limit
//! Riesz kernels.
//!
//! The crate is `no_std` (it needs `alloc`). Every routine is a pure
//! function of its arguments.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod chain;
pub mod continuum;
pub mod error;
pub mod quad;
pub mod specfun;
pub mod zeta;

pub use error::{Error, Result};
pub use specfun::FracOrder;
