use std::fmt;

use crate::error::{Error, Result};

/// One computational basis state of `n` spins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinBasisState {
    bits: u64,
    n: usize,
}

impl SpinBasisState {
    pub fn new(bits: u64, n: usize) -> Result<Self> {
        if n == 0 || n > 63 {
            return Err(Error::invalid(format!(
                "spin count {n} out of range 1..=63"
            )));
        }
        if bits >> n != 0 {
            return Err(Error::invalid(format!(
                "basis index {bits} does not fit in {n} spins"
            )));
        }
        Ok(SpinBasisState { bits, n })
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn index(&self) -> usize {
        self.bits as usize
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_up(&self, k: usize) -> bool {
        self.bits >> k & 1 == 1
    }

    pub fn up_count(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Twice the total S_z, an integer in `-n..=n`.
    pub fn twice_sz(&self) -> i32 {
        twice_sz(self.bits, self.n)
    }
}

/// Arrows, spin 0 first.
impl fmt::Display for SpinBasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.n {
            f.write_str(if self.is_up(k) { "↑" } else { "↓" })?;
        }
        Ok(())
    }
}

/// Twice the S_z of `bits` restricted to `n` spins.
#[inline]
pub fn twice_sz(bits: u64, n: usize) -> i32 {
    2 * bits.count_ones() as i32 - n as i32
}

/// All basis indices with exactly `n/2` up spins, ascending.
pub fn sz_zero_states(n: usize) -> Vec<u64> {
    assert!(n.is_multiple_of(2) && n <= 63);
    (0u64..1 << n)
        .filter(|b| b.count_ones() as usize == n / 2)
        .collect()
}
