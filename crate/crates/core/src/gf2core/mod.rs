//! Linear algebra over GF(2) with 1-based indexing.
//!
//! All types are immutable once built (apart from explicit in-place XOR on
//! owned vectors) and are `Send + Sync`.

mod bitmatrix;
mod bitvec;
mod pascal;

pub use bitmatrix::BitMatrix;
pub use bitvec::BitVector;
pub use pascal::{pascal_entry, pascal_matrix, pascal_times_ones};

/// See [`BitVector::binary_expand`].
pub fn binary_expand(n: u64, m: usize) -> crate::Result<BitVector> {
    BitVector::binary_expand(n, m)
}

/// See [`BitMatrix::matvec`].
pub fn matvec(m: &BitMatrix, v: &BitVector) -> crate::Result<BitVector> {
    m.matvec(v)
}
