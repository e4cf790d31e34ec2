use super::{BitMatrix, BitVector};
use crate::error::{domain, Result};

/// `binom(j-1, i-1) mod 2` by Lucas's theorem: one iff the binary digits of
/// `i-1` are a subset of those of `j-1`.
///
/// Panics when `i` or `j` is zero.
pub fn pascal_entry(i: usize, j: usize) -> bool {
    assert!(i >= 1 && j >= 1, "pascal_entry is 1-based");
    (i - 1) & !(j - 1) == 0
}

/// The upper-triangular `m × m` Pascal matrix mod 2.
pub fn pascal_matrix(m: usize) -> Result<BitMatrix> {
    if m == 0 {
        return domain("pascal_matrix needs m >= 1");
    }
    Ok(BitMatrix::from_fn(m, m, pascal_entry))
}

/// `P_m · 1_m`, computed directly: entry `i` is `binom(m, i) mod 2`.
pub fn pascal_times_ones(m: usize) -> Result<BitVector> {
    if m == 0 {
        return domain("pascal_times_ones needs m >= 1");
    }
    Ok(BitVector::from_bits((1..=m).map(|i| i & !m == 0)))
}
