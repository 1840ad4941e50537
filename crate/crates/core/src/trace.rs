//! Closed-form Hilbert-Schmidt inner products between normal-ordered
//! monomials, evaluated in exact integer arithmetic.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{FockError, Result};
use crate::fock::{canonical_to_triple, multi_sign, OperatorPoly, OrbitalSet};
use crate::scalar::{conj, Scalar};

/// Signature of the multi-sign used by the trace sums; swappable for fault injection.
pub type SignFn = fn(&[OrbitalSet], &[OrbitalSet]) -> i32;

/// Index family `𝔐(A,B,C,D)` of Slater vectors contributing to `tr{(c*_A c_B)* c*_C c_D}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MFamily {
    pub a: OrbitalSet,
    pub b: OrbitalSet,
    pub c: OrbitalSet,
    pub d: OrbitalSet,
    pub n: usize,
    pub nonempty: bool,
    /// `B ∪ D`.
    pub base: OrbitalSet,
    /// `ℕ_n ∖ (A ∪ B ∪ C ∪ D)`.
    pub free_mask: OrbitalSet,
}

impl MFamily {
    /// `{base ∪ N : N ⊆ free_mask}` in ascending `N`, or nothing.
    pub fn members(&self) -> impl Iterator<Item = OrbitalSet> + '_ {
        let base = self.base;
        self.free_mask
            .subsets()
            .take(if self.nonempty { usize::MAX } else { 0 })
            .map(move |m| base | m)
    }

    pub fn len(&self) -> u64 {
        if self.nonempty {
            1u64 << self.free_mask.len()
        } else {
            0
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.nonempty
    }

    /// Membership by the defining conditions: `B ∪ D ⊆ I` and
    /// `A ∪̇ (I∖B) = C ∪̇ (I∖D)` with both unions disjoint.
    pub fn satisfies_definition(&self, i: OrbitalSet) -> bool {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        b.is_subset(i)
            && d.is_subset(i)
            && a.is_disjoint(i - b)
            && c.is_disjoint(i - d)
            && (a | (i - b)) == (c | (i - d))
    }
}

pub fn m_family(a: OrbitalSet, b: OrbitalSet, c: OrbitalSet, d: OrbitalSet, n: usize) -> MFamily {
    MFamily {
        a,
        b,
        c,
        d,
        n,
        nonempty: difference_condition(a, b, c, d),
        base: b | d,
        free_mask: OrbitalSet::full(n) - (a | b | c | d),
    }
}

/// `A ∪̇ (D∖B) = C ∪̇ (B∖D)`, both unions disjoint.
pub fn union_condition(a: OrbitalSet, b: OrbitalSet, c: OrbitalSet, d: OrbitalSet) -> bool {
    a.is_disjoint(d - b) && c.is_disjoint(b - d) && (a | (d - b)) == (c | (b - d))
}

/// `A∖B = C∖D` and `B∖A = D∖C`.
pub fn difference_condition(a: OrbitalSet, b: OrbitalSet, c: OrbitalSet, d: OrbitalSet) -> bool {
    a - b == c - d && b - a == d - c
}

/// `B∖D = A∖C` and `D∖B = C∖A`.
pub fn cross_difference_condition(
    a: OrbitalSet,
    b: OrbitalSet,
    c: OrbitalSet,
    d: OrbitalSet,
) -> bool {
    b - d == a - c && d - b == c - a
}

/// Truth of [`union_condition`]; equal to [`difference_condition`] for all inputs.
pub fn set_equiv_check(a: OrbitalSet, b: OrbitalSet, c: OrbitalSet, d: OrbitalSet) -> bool {
    union_condition(a, b, c, d)
}

/// `⟨c_{A,B}, c_{C,D}⟩` for arbitrary (possibly overlapping) pairs.
pub fn hs_inner_general(
    a: OrbitalSet,
    b: OrbitalSet,
    c: OrbitalSet,
    d: OrbitalSet,
    n: usize,
) -> i64 {
    hs_inner_general_with(multi_sign, a, b, c, d, n)
}

/// [`hs_inner_general`] with an injected multi-sign.
pub fn hs_inner_general_with(
    sign: SignFn,
    a: OrbitalSet,
    b: OrbitalSet,
    c: OrbitalSet,
    d: OrbitalSet,
    n: usize,
) -> i64 {
    m_family(a, b, c, d, n)
        .members()
        .map(|i| {
            let (ib, id) = (i - b, i - d);
            (sign(&[a, ib], &[c, id]) * sign(&[i], &[b, ib]) * sign(&[i], &[d, id])) as i64
        })
        .sum()
}

/// `⟨n_K c_{A,B}, n_L c_{C,D}⟩ = δ_{AC} δ_{BD} 2^{n − |A∪B∪K∪L|}` for
/// pairwise disjoint `(K,A,B)` and `(L,C,D)`.
pub fn hs_inner_disjoint(
    k: OrbitalSet,
    a: OrbitalSet,
    b: OrbitalSet,
    l: OrbitalSet,
    c: OrbitalSet,
    d: OrbitalSet,
    n: usize,
) -> Result<u64> {
    for (x, y, z) in [(k, a, b), (l, c, d)] {
        if !(x.is_disjoint(y) && x.is_disjoint(z) && y.is_disjoint(z)) {
            return Err(FockError::Overlap(format!("K={x} A={y} B={z}")));
        }
    }
    if a != c || b != d {
        return Ok(0);
    }
    let used = (a | b | k | l).len() as usize;
    Ok(1u64 << (n.max(used) - used))
}

/// `Σ_{I⊆K} Σ_{J⊆L} (−2)^{|I|+|J|} 2^{−|I∪J|}`, evaluated over the common
/// denominator `2^{|K∪L|}`.
pub fn binomial_orthogonality(k: OrbitalSet, l: OrbitalSet) -> i64 {
    let top = (k | l).len();
    let mut numerator: i128 = 0;
    for i in k.subsets() {
        for j in l.subsets() {
            let deg = i.len() + j.len();
            let mag = 1i128 << (deg + top - (i | j).len());
            numerator += if deg % 2 == 0 { mag } else { -mag };
        }
    }
    let denom = 1i128 << top;
    assert_eq!(numerator % denom, 0, "binomial sum is not an integer");
    (numerator / denom) as i64
}

type Key = (OrbitalSet, OrbitalSet);
/// `(M, signed coefficient)` entries of one `(A', B')` key.
type Entries<T> = Vec<(OrbitalSet, Complex<T>)>;

/// A polynomial rewritten term by term as `± n_M c_{A',B'}` with `M = A∩B`,
/// grouped by `(A', B')`; cross terms vanish unless these pairs agree.
#[derive(Clone, Debug)]
pub struct TripleForm<T> {
    n: usize,
    /// Sorted by key; each group lists `(M, signed coefficient)`.
    groups: Vec<(Key, Entries<T>)>,
}

impl<T: Scalar> TripleForm<T> {
    pub fn new(p: &OperatorPoly<T>) -> Self {
        let mut map: BTreeMap<Key, Entries<T>> = BTreeMap::new();
        for (a, b, coeff) in p.terms() {
            let (m, a1, b1, s) = canonical_to_triple(a, b);
            map.entry((a1, b1))
                .or_default()
                .push((m, if s < 0 { -coeff } else { coeff }));
        }
        TripleForm {
            n: p.n(),
            groups: map.into_iter().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `⟨X, Y⟩` by a merge over the sorted groups.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.n != other.n {
            return Err(FockError::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let n = self.n as u32;
        let (mut x, mut y) = (0, 0);
        let mut acc = Complex::zero();
        while x < self.groups.len() && y < other.groups.len() {
            let (kx, gx) = &self.groups[x];
            let (ky, gy) = &other.groups[y];
            match kx.cmp(ky) {
                Ordering::Less => x += 1,
                Ordering::Greater => y += 1,
                Ordering::Equal => {
                    let used = kx.0 | kx.1;
                    for (k, xc) in gx {
                        let xc = conj(*xc);
                        for (l, yc) in gy {
                            let e = n - (used | *k | *l).len();
                            acc = acc + xc * *yc * Complex::new(T::pow2(e), T::zero());
                        }
                    }
                    x += 1;
                    y += 1;
                }
            }
        }
        Ok(acc)
    }
}

/// `⟨X, Y⟩ = tr(X* Y)` for two polynomials, without a dense realization.
pub fn hs_inner_poly<T: Scalar>(x: &OperatorPoly<T>, y: &OperatorPoly<T>) -> Result<Complex<T>> {
    TripleForm::new(x).inner(&TripleForm::new(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ix: &[usize]) -> OrbitalSet {
        OrbitalSet::from_indices(ix, 8).unwrap()
    }

    const E: OrbitalSet = OrbitalSet::EMPTY;

    #[test]
    fn family_examples() {
        let f = m_family(E, E, E, E, 3);
        assert!(f.nonempty);
        assert_eq!(f.members().count(), 8);
        assert!(m_family(set(&[1]), E, set(&[2]), E, 3).is_empty());
        let f = m_family(set(&[1]), E, set(&[1]), E, 2);
        assert_eq!(f.members().collect::<Vec<_>>(), vec![E, set(&[2])]);
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn set_condition_examples() {
        let a = set(&[1, 2]);
        assert!(set_equiv_check(a, a, a, a));
        assert!(set_equiv_check(
            set(&[1, 2]),
            set(&[2]),
            set(&[1, 3]),
            set(&[3])
        ));
        assert!(!set_equiv_check(set(&[1]), E, set(&[2]), E));
    }

    #[test]
    fn general_examples() {
        for n in 0..=5 {
            assert_eq!(hs_inner_general(E, E, E, E, n), 1 << n);
        }
        assert_eq!(hs_inner_general(set(&[1]), E, set(&[2]), E, 3), 0);
        let one = set(&[1]);
        assert_eq!(hs_inner_general(one, one, one, one, 2), 2);
    }

    #[test]
    fn disjoint_examples() {
        let (one, two) = (set(&[1]), set(&[2]));
        assert_eq!(hs_inner_disjoint(E, one, two, E, one, two, 3).unwrap(), 2);
        for n in 1..=6 {
            assert_eq!(
                hs_inner_disjoint(one, E, E, E, E, E, n).unwrap(),
                1 << (n - 1)
            );
        }
        assert_eq!(hs_inner_disjoint(E, one, E, E, two, E, 3).unwrap(), 0);
        assert!(hs_inner_disjoint(one, one, E, E, E, E, 3).is_err());
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_orthogonality(E, E), 1);
        assert_eq!(binomial_orthogonality(set(&[1]), E), 0);
        assert_eq!(binomial_orthogonality(set(&[1, 2]), set(&[1, 2])), 1);
        assert_eq!(binomial_orthogonality(set(&[1, 2]), set(&[2, 3])), 0);
    }

    #[test]
    fn poly_inner_matches_general_on_monomials() {
        let n = 3;
        for a in OrbitalSet::all(n) {
            for b in OrbitalSet::all(n) {
                let x = OperatorPoly::<i64>::monomial(n, a, b, Complex::new(1, 0)).unwrap();
                for c in OrbitalSet::all(n) {
                    for d in OrbitalSet::all(n) {
                        let y = OperatorPoly::<i64>::monomial(n, c, d, Complex::new(1, 0)).unwrap();
                        let v = hs_inner_poly(&x, &y).unwrap();
                        assert_eq!(v, Complex::new(hs_inner_general(a, b, c, d, n), 0));
                    }
                }
            }
        }
    }
}
