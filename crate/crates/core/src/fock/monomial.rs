use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::Zero;

use super::set::OrbitalSet;
use super::sign::multi_sign;
use super::vector::FockVector;
use crate::error::{FockError, Result};
use crate::scalar::{signed, Scalar};

/// `coeff · c*_A c_B`; `A` and `B` may overlap.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CanonicalMonomial<T> {
    pub creators: OrbitalSet,
    pub annihilators: OrbitalSet,
    pub coeff: Complex<T>,
}

impl<T: Scalar> CanonicalMonomial<T> {
    pub fn new(creators: OrbitalSet, annihilators: OrbitalSet, coeff: Complex<T>) -> Self {
        CanonicalMonomial {
            creators,
            annihilators,
            coeff,
        }
    }

    pub fn unit(creators: OrbitalSet, annihilators: OrbitalSet) -> Self {
        Self::new(creators, annihilators, Complex::new(T::one(), T::zero()))
    }
}

fn check_disjoint(k: OrbitalSet, a: OrbitalSet, b: OrbitalSet) -> Result<()> {
    if k.is_disjoint(a) && k.is_disjoint(b) && a.is_disjoint(b) {
        Ok(())
    } else {
        Err(FockError::Overlap(format!("K={k} A={a} B={b}")))
    }
}

/// `n_K c*_A c_B v` for pairwise disjoint `K, A, B`.
///
/// On a Slater vector: `n_K c_{A,B} φ_I = 𝟙(K ⊆ A ∪ (I∖B)) 𝟙(B ⊆ I) 𝟙(A ∩ (I∖B) = ∅)
/// [I ; B I∖B] φ_A ∧ φ_{I∖B}`, extended linearly. The result keeps the
/// storage kind of `v`.
pub fn apply_monomial<T: Scalar>(
    k: OrbitalSet,
    a: OrbitalSet,
    b: OrbitalSet,
    v: &FockVector<T>,
) -> Result<FockVector<T>> {
    let n = v.n();
    for s in [k, a, b] {
        if !s.fits(n) {
            return Err(FockError::DimensionMismatch {
                expected: n,
                found: 32 - s.bits().leading_zeros() as usize,
            });
        }
    }
    check_disjoint(k, a, b)?;
    let mut out: BTreeMap<OrbitalSet, Complex<T>> = BTreeMap::new();
    for (i, amp) in v.nonzero() {
        if !b.is_subset(i) {
            continue;
        }
        let rest = i - b;
        if !a.is_disjoint(rest) {
            continue;
        }
        let target = a | rest;
        if !k.is_subset(target) {
            continue;
        }
        let sign = multi_sign(&[i], &[b, rest]) * multi_sign(&[a, rest], &[target]);
        let slot = out.entry(target).or_insert_with(Complex::zero);
        *slot = *slot + signed(amp, sign);
    }
    out.retain(|_, c| !c.is_zero());
    Ok(v.same_kind(out))
}

/// Sign `s` with `n_K c*_A c_B = s · c*_{A∪K} c_{B∪K}`.
///
/// `n_K` commutes with `c*_A` when `K ∩ A = ∅`, so `n_K c*_A c_B = c*_A c*_K c_K c_B`,
/// and `c*_A c*_K = [A K ; A∪K] c*_{A∪K}`, `c_K c_B = [B K ; B∪K] c_{B∪K}`.
fn canonical_sign(k: OrbitalSet, a: OrbitalSet, b: OrbitalSet) -> i32 {
    multi_sign(&[a, k], &[a | k]) * multi_sign(&[b, k], &[b | k])
}

/// Rewrite `n_K c*_A c_B` as the single canonical monomial `± c*_{A∪K} c_{B∪K}`.
pub fn monomial_to_canonical(
    k: OrbitalSet,
    a: OrbitalSet,
    b: OrbitalSet,
) -> Result<CanonicalMonomial<i64>> {
    check_disjoint(k, a, b)?;
    let s = canonical_sign(k, a, b);
    Ok(CanonicalMonomial::new(
        a | k,
        b | k,
        Complex::new(s as i64, 0),
    ))
}

/// Inverse of [`monomial_to_canonical`]: `c*_A c_B = s · n_K c*_{A'} c_{B'}` with
/// `K = A ∩ B`, `A' = A ∖ B`, `B' = B ∖ A`. Returns `(K, A', B', s)`.
pub fn canonical_to_triple(
    a: OrbitalSet,
    b: OrbitalSet,
) -> (OrbitalSet, OrbitalSet, OrbitalSet, i32) {
    let k = a & b;
    let a1 = a - b;
    let b1 = b - a;
    (k, a1, b1, canonical_sign(k, a1, b1))
}
