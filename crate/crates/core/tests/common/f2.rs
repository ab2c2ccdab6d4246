//! Brute force over F2 with bitmask vectors: subspaces are enumerated
//! element by element, so only tiny dimensions are usable.

use std::collections::BTreeSet;

use contra_core::field::PrimeField;
use contra_core::linalg::Mat;

/// Column-major dense F2 matrix; column `j` is a bitmask over rows.
#[derive(Clone, Debug)]
pub struct Bits {
    pub rows: usize,
    pub cols: Vec<u64>,
}

impl Bits {
    pub fn from_mat(m: &Mat<PrimeField>) -> Self {
        assert_eq!(m.field().p(), 2);
        assert!(m.rows() <= 63);
        let mut cols = vec![0u64; m.cols()];
        for (i, j, v) in m.triplets() {
            if v % 2 == 1 {
                cols[j] |= 1 << i;
            }
        }
        Bits { rows: m.rows(), cols }
    }

    pub fn identity(n: usize) -> Self {
        Bits {
            rows: n,
            cols: (0..n).map(|i| 1 << i).collect(),
        }
    }

    pub fn apply(&self, x: u64) -> u64 {
        let mut y = 0;
        for (j, c) in self.cols.iter().enumerate() {
            if x >> j & 1 == 1 {
                y ^= c;
            }
        }
        y
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &Bits) -> Bits {
        Bits {
            rows: self.rows,
            cols: other.cols.iter().map(|&c| self.apply(c)).collect(),
        }
    }

    /// Every vector of the image, by enumerating the domain.
    pub fn image(&self) -> BTreeSet<u64> {
        let n = self.cols.len();
        assert!(n <= 16);
        (0..1u64 << n).map(|x| self.apply(x)).collect()
    }
}

/// Dimension of an enumerated subspace.
pub fn dim(set: &BTreeSet<u64>) -> usize {
    set.len().trailing_zeros() as usize
}

/// Image of an enumerated subspace.
pub fn map_set(f: &Bits, s: &BTreeSet<u64>) -> BTreeSet<u64> {
    s.iter().map(|&x| f.apply(x)).collect()
}

/// Kernel of `f` restricted to an enumerated subspace.
pub fn kernel_in(f: &Bits, s: &BTreeSet<u64>) -> BTreeSet<u64> {
    s.iter().copied().filter(|&x| f.apply(x) == 0).collect()
}
