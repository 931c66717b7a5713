//! SplitMix64 and seeded test matrices.
//!
//! The generator and the mapping to `[-1, 1)` are fixed so that fixtures
//! are identical on every platform and in other implementations:
//! each entry is `2 * (x >> 11) * 2^-53 - 1` for the next SplitMix64
//! output `x`, filled in row-major order.

use alloc::vec::Vec;

use crate::engine::Matrix;

/// SplitMix64 (Steele, Lea and Flood), 64-bit state.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `[-1, 1)`.
    pub fn next_symmetric(&mut self) -> f64 {
        2.0 * self.next_unit() - 1.0
    }
}

/// `rows x cols` matrix with entries uniform in `[-1, 1)`.
pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut rng = SplitMix64::new(seed);
    let data: Vec<f64> = (0..rows * cols).map(|_| rng.next_symmetric()).collect();
    Matrix::from_vec(rows, cols, data).expect("positive dimensions")
}
