//! Dense matrices, the naive product, and Strassen's recursion with
//! zero padding and flop instrumentation.

mod counter;
mod matrix;
mod ops;
mod strassen;

pub use counter::{FlopCounter, MemoryProbe};
pub use matrix::Matrix;
pub use ops::{block_join, block_split, mat_add, mat_sub, naive_multiply, pad, unpad};
pub use strassen::{strassen_multiply, strassen_multiply_with, Options};
