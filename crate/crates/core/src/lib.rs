//! Exact arithmetic on truncated `(a, q)`-series, the standard multiparameter
//! Bailey pair at `b = 0`, the `Q^{(d,e,k)}_i` family with its q-difference
//! system, and a small language for writing q-series identities.
//!
//! The crate is `no_std` and only needs an allocator.

#![no_std]

extern crate alloc;

pub mod coeff;
pub mod error;
pub mod bailey;
pub mod dsl;
pub mod series;

pub use coeff::Coefficient;
pub use error::{Error, Result};
pub use series::{BiSeries, Order};
