use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::Zero;

use super::set::{check_orbital_count, OrbitalSet};
use crate::error::{FockError, Result};
use crate::scalar::{abs_f64, Scalar};
use crate::MAX_ORBITALS;

/// Amplitude storage: sparse map keyed by Slater index, or a dense array of
/// length `2ⁿ` indexed by bitmask value.
#[derive(Clone, Debug, PartialEq)]
pub enum Storage<T> {
    Sparse(BTreeMap<OrbitalSet, Complex<T>>),
    Dense(Vec<Complex<T>>),
}

/// A vector in the `2ⁿ`-dimensional Fock space, expanded in the Slater basis `φ_A`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector<T> {
    n: usize,
    storage: Storage<T>,
}

impl<T: Scalar> FockVector<T> {
    /// `φ_A`, sparse.
    pub fn basis(n: usize, a: OrbitalSet) -> Result<Self> {
        check_orbital_count(n, MAX_ORBITALS)?;
        a.check_fits(n)?;
        let mut map = BTreeMap::new();
        map.insert(a, Complex::new(T::one(), T::zero()));
        Ok(FockVector {
            n,
            storage: Storage::Sparse(map),
        })
    }

    /// The vacuum `Ω = φ_∅`.
    pub fn vacuum(n: usize) -> Result<Self> {
        Self::basis(n, OrbitalSet::EMPTY)
    }

    pub fn zero_sparse(n: usize) -> Result<Self> {
        check_orbital_count(n, MAX_ORBITALS)?;
        Ok(FockVector {
            n,
            storage: Storage::Sparse(BTreeMap::new()),
        })
    }

    pub fn from_dense(n: usize, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        check_orbital_count(n, MAX_ORBITALS)?;
        if amplitudes.len() != 1 << n {
            return Err(FockError::DimensionMismatch {
                expected: n,
                found: amplitudes.len().trailing_zeros() as usize,
            });
        }
        Ok(FockVector {
            n,
            storage: Storage::Dense(amplitudes),
        })
    }

    pub fn from_sparse<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (OrbitalSet, Complex<T>)>,
    {
        check_orbital_count(n, MAX_ORBITALS)?;
        let mut map = BTreeMap::new();
        for (a, c) in entries {
            a.check_fits(n)?;
            let slot = map.entry(a).or_insert_with(Complex::zero);
            *slot = *slot + c;
        }
        map.retain(|_, c: &mut Complex<T>| !c.is_zero());
        Ok(FockVector {
            n,
            storage: Storage::Sparse(map),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn storage(&self) -> &Storage<T> {
        &self.storage
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense(_))
    }

    pub fn amplitude(&self, a: OrbitalSet) -> Complex<T> {
        match &self.storage {
            Storage::Sparse(m) => m.get(&a).copied().unwrap_or_else(Complex::zero),
            Storage::Dense(v) => v
                .get(a.bits() as usize)
                .copied()
                .unwrap_or_else(Complex::zero),
        }
    }

    /// Nonzero amplitudes in ascending Slater-index order.
    pub fn nonzero(&self) -> Vec<(OrbitalSet, Complex<T>)> {
        match &self.storage {
            Storage::Sparse(m) => m.iter().map(|(a, c)| (*a, *c)).collect(),
            Storage::Dense(v) => v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (OrbitalSet::from_bits(i as u32), *c))
                .collect(),
        }
    }

    pub fn to_dense_vec(&self) -> Vec<Complex<T>> {
        match &self.storage {
            Storage::Dense(v) => v.clone(),
            Storage::Sparse(m) => {
                let mut v = vec![Complex::zero(); 1 << self.n];
                for (a, c) in m {
                    v[a.bits() as usize] = *c;
                }
                v
            }
        }
    }

    /// A vector over the same `n` in the same storage kind as `self`.
    pub(crate) fn same_kind(&self, entries: BTreeMap<OrbitalSet, Complex<T>>) -> Self {
        let storage = match &self.storage {
            Storage::Sparse(_) => Storage::Sparse(entries),
            Storage::Dense(_) => {
                let mut v = vec![Complex::zero(); 1 << self.n];
                for (a, c) in entries {
                    v[a.bits() as usize] = c;
                }
                Storage::Dense(v)
            }
        };
        FockVector { n: self.n, storage }
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero().is_empty()
    }

    /// `max_A |self_A − other_A|`, independent of storage kind.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let a = self.to_dense_vec();
        let b = other.to_dense_vec();
        if a.len() != b.len() {
            return f64::INFINITY;
        }
        a.iter()
            .zip(&b)
            .map(|(x, y)| abs_f64(*x - *y))
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_vector_has_single_unit_amplitude() {
        let a = OrbitalSet::from_indices(&[1, 3], 3).unwrap();
        let v = FockVector::<i64>::basis(3, a).unwrap();
        assert_eq!(v.nonzero(), vec![(a, Complex::new(1, 0))]);
        let d = v.to_dense_vec();
        assert_eq!(d.len(), 8);
        assert_eq!(d[5], Complex::new(1, 0));
        let dv = FockVector::from_dense(3, d).unwrap();
        assert_eq!(dv.max_abs_diff(&v), 0.0);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(FockVector::<i64>::basis(2, OrbitalSet::from_bits(0b100)).is_err());
        assert!(FockVector::<f64>::from_dense(2, vec![Complex::new(0.0, 0.0); 3]).is_err());
    }
}
