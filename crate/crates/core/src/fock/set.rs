use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Sub};

use crate::error::{FockError, Result};
use crate::MAX_ORBITALS;

/// A subset of `{1, …, m}` stored as a bitmask; orbital `i` is bit `i - 1`.
///
/// The same type indexes Majorana products, where `m = 2n ≤ 32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OrbitalSet(u32);

impl OrbitalSet {
    pub const EMPTY: OrbitalSet = OrbitalSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        OrbitalSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// `{1, …, n}`.
    pub const fn full(n: usize) -> Self {
        if n >= 32 {
            OrbitalSet(u32::MAX)
        } else {
            OrbitalSet((1u32 << n) - 1)
        }
    }

    /// `{i}` for a 1-based index.
    pub fn singleton(i: usize) -> Self {
        debug_assert!((1..=32).contains(&i));
        OrbitalSet(1 << (i - 1))
    }

    /// Build from 1-based indices, rejecting anything above `n`.
    pub fn from_indices(indices: &[usize], n: usize) -> Result<Self> {
        let mut bits = 0u32;
        for &i in indices {
            if i == 0 || i > n || i > 32 {
                return Err(FockError::OrbitalIndex { index: i, n });
            }
            bits |= 1 << (i - 1);
        }
        Ok(OrbitalSet(bits))
    }

    /// 1-based indices in ascending order.
    pub fn indices(self) -> Vec<usize> {
        self.positions().map(|p| p as usize + 1).collect()
    }

    /// 0-based bit positions in ascending order.
    pub fn positions(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let p = bits.trailing_zeros();
                bits &= bits - 1;
                Some(p)
            }
        })
    }

    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Membership of a 1-based index.
    pub fn contains(self, i: usize) -> bool {
        (1..=32).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub const fn contains_bit(self, pos: u32) -> bool {
        self.0 & (1 << pos) != 0
    }

    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Only the low `n` bits may be set.
    pub const fn fits(self, n: usize) -> bool {
        self.is_subset(OrbitalSet::full(n))
    }

    pub fn check_fits(self, n: usize) -> Result<()> {
        if self.fits(n) {
            Ok(())
        } else {
            Err(FockError::SetOutOfRange {
                set: self.to_string(),
                n,
            })
        }
    }

    /// Complement within `{1, …, n}`.
    pub const fn complement(self, n: usize) -> Self {
        OrbitalSet(!self.0 & OrbitalSet::full(n).0)
    }

    /// Number of elements strictly below bit position `pos`.
    pub const fn count_below(self, pos: u32) -> u32 {
        (self.0 & ((1u32 << pos) - 1)).count_ones()
    }

    /// Number of elements strictly above bit position `pos`.
    pub const fn count_above(self, pos: u32) -> u32 {
        if pos >= 31 {
            0
        } else {
            (self.0 & !((1u32 << (pos + 1)) - 1)).count_ones()
        }
    }

    /// All subsets of `self` in ascending bitmask order, starting with `∅`.
    pub fn subsets(self) -> Submasks {
        Submasks {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Enumerate all subsets of `{1, …, n}` in bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = OrbitalSet> {
        (0..(1u64 << n)).map(|b| OrbitalSet(b as u32))
    }
}

/// Ascending submask iterator.
#[derive(Clone, Debug)]
pub struct Submasks {
    mask: u32,
    next: Option<u32>,
}

impl Iterator for Submasks {
    type Item = OrbitalSet;

    fn next(&mut self) -> Option<OrbitalSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some(cur.wrapping_sub(self.mask) & self.mask)
        };
        Some(OrbitalSet(cur))
    }
}

impl BitOr for OrbitalSet {
    type Output = OrbitalSet;
    fn bitor(self, rhs: Self) -> Self {
        OrbitalSet(self.0 | rhs.0)
    }
}

impl BitAnd for OrbitalSet {
    type Output = OrbitalSet;
    fn bitand(self, rhs: Self) -> Self {
        OrbitalSet(self.0 & rhs.0)
    }
}

impl BitXor for OrbitalSet {
    type Output = OrbitalSet;
    fn bitxor(self, rhs: Self) -> Self {
        OrbitalSet(self.0 ^ rhs.0)
    }
}

impl Sub for OrbitalSet {
    type Output = OrbitalSet;
    fn sub(self, rhs: Self) -> Self {
        OrbitalSet(self.0 & !rhs.0)
    }
}

impl fmt::Display for OrbitalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, i) in self.indices().into_iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for OrbitalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrbitalSet{self}")
    }
}

/// Validate `1 ≤ n ≤ max`.
pub fn check_orbital_count(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max || n > MAX_ORBITALS {
        Err(FockError::OrbitalCount {
            n,
            max: max.min(MAX_ORBITALS),
        })
    } else {
        Ok(())
    }
}
