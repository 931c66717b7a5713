//! Strassen's matrix multiplication for arbitrary orders via zero padding,
//! with parameter strategies for the embedding order `m * 2^k` and an exact
//! flop and memory model.
//!
//! The crate is `no_std` (it needs `alloc`). The `std` feature, on by
//! default, lets the engine run the seven top-level products on threads.

#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod engine;
pub mod error;
pub mod exact;
pub mod flopmodel;
pub mod params;
pub mod report;
pub mod rng;

pub use engine::{FlopCounter, Matrix};
pub use error::{Error, Result};
pub use exact::{ExactInt, ExactRatio};
pub use params::{ParamChoice, Strategy};
