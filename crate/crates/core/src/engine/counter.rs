use core::ops::AddAssign;
use core::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;

/// Tally of scalar flops: additions/subtractions and multiplications.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FlopCounter {
    pub adds: u64,
    pub muls: u64,
}

impl FlopCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn total(&self) -> u64 {
        self.adds + self.muls
    }

    pub fn total_exact(&self) -> BigInt {
        BigInt::from(self.adds) + BigInt::from(self.muls)
    }
}

impl AddAssign for FlopCounter {
    fn add_assign(&mut self, rhs: Self) {
        self.adds += rhs.adds;
        self.muls += rhs.muls;
    }
}

/// Tracks live and peak element counts of the temporaries the Strassen
/// recursion allocates (quadrant copies, operand sums, products). Inputs and
/// the returned product are not counted.
#[derive(Debug, Default)]
pub struct MemoryProbe {
    live: AtomicUsize,
    peak: AtomicUsize,
}

impl MemoryProbe {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn peak_elements(&self) -> usize {
        self.peak.load(Ordering::Relaxed)
    }

    pub fn live_elements(&self) -> usize {
        self.live.load(Ordering::Relaxed)
    }

    pub(crate) fn hold(&self, elements: usize) -> Hold<'_> {
        let live = self.live.fetch_add(elements, Ordering::Relaxed) + elements;
        self.peak.fetch_max(live, Ordering::Relaxed);
        Hold {
            probe: self,
            elements,
        }
    }
}

/// Releases its elements from the probe on drop.
pub(crate) struct Hold<'a> {
    probe: &'a MemoryProbe,
    elements: usize,
}

impl Drop for Hold<'_> {
    fn drop(&mut self) {
        self.probe.live.fetch_sub(self.elements, Ordering::Relaxed);
    }
}
