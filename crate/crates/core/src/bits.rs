//! Single-word bitset helpers shared by the search routines.

/// Largest vertex count representable in one adjacency word.
pub const WORD: usize = 64;

#[inline]
pub fn bit(i: usize) -> u64 {
    1u64 << i
}

/// Bits `lo..=hi`; empty when `lo > hi`.
#[inline]
pub fn range_mask(lo: usize, hi: usize) -> u64 {
    if lo > hi || lo >= WORD {
        return 0;
    }
    let upper = if hi >= WORD - 1 {
        u64::MAX
    } else {
        (1u64 << (hi + 1)) - 1
    };
    upper & !((1u64 << lo) - 1)
}

/// Bits `0..len`.
#[inline]
pub fn low_mask(len: usize) -> u64 {
    if len == 0 {
        0
    } else {
        range_mask(0, len - 1)
    }
}

/// Iterates the set bits of a word in increasing order.
pub struct Ones(u64);

impl Iterator for Ones {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

#[inline]
pub fn ones(word: u64) -> Ones {
    Ones(word)
}
