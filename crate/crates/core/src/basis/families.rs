use num_complex::Complex;
use rayon::prelude::*;

use super::{check_k, BasisElement, BasisIndex, Family, Normalization, Parity};
use crate::basis::majorana::{enumerate_basis_majorana, majorana_element};
use crate::error::Result;
use crate::fock::{check_orbital_count, monomial_to_canonical, OperatorPoly, OrbitalSet};
use crate::MAX_ORBITALS;

/// `b_K = Σ_{I⊆K} (−2)^{|I|} n_I`.
pub fn build_bk(k: OrbitalSet, n: usize) -> Result<OperatorPoly<i64>> {
    k.check_fits(n)?;
    raw_b(n, k, OrbitalSet::EMPTY, OrbitalSet::EMPTY)
}

/// `b_K c_{I,J} = Σ_{S⊆K} (−2)^{|S|} n_S c*_I c_J`, each summand canonicalized.
fn raw_b(n: usize, k: OrbitalSet, i: OrbitalSet, j: OrbitalSet) -> Result<OperatorPoly<i64>> {
    let mut p = OperatorPoly::zero(n)?;
    for s in k.subsets() {
        let m = monomial_to_canonical(s, i, j)?;
        let c = m.coeff * Complex::new((-2i64).pow(s.len()), 0);
        p.add_term(m.creators, m.annihilators, c);
    }
    Ok(p)
}

/// `b_K c_{I,J} / √(2^{n−|I∪J|})`.
pub fn element_b(n: usize, k: OrbitalSet, i: OrbitalSet, j: OrbitalSet) -> Result<BasisElement> {
    build_element(n, BasisIndex::B { k, i, j })
}

/// Materialize the element named by `index`.
pub fn build_element(n: usize, index: BasisIndex) -> Result<BasisElement> {
    index.validate(n)?;
    let (raw, half_exponent) = match index {
        BasisIndex::B { k, i, j } => (raw_b(n, k, i, j)?, n as u32 - (i | j).len()),
        BasisIndex::BReal {
            k, parity: None, ..
        } => (build_bk(k, n)?, n as u32),
        BasisIndex::BReal {
            k,
            i,
            j,
            parity: Some(p),
        } => {
            let fwd = raw_b(n, k, i, j)?;
            let bwd = raw_b(n, k, j, i)?;
            let raw = match p {
                Parity::Plus => &fwd + &bwd,
                Parity::Minus => (&fwd - &bwd).scale(Complex::new(0, -1)),
            };
            (raw, n as u32 + 1 - (i | j).len())
        }
        BasisIndex::Majorana { .. } => return majorana_element(n, index),
    };
    Ok(BasisElement {
        n,
        index,
        normalization: Normalization::new(half_exponent),
        raw,
    })
}

/// All pairwise disjoint `(K, I, J)` in lexicographic bitmask order.
pub fn b_indices(n: usize) -> Result<Vec<BasisIndex>> {
    check_orbital_count(n, MAX_ORBITALS)?;
    let full = OrbitalSet::full(n);
    let mut out = Vec::with_capacity(1 << (2 * n));
    for k in OrbitalSet::all(n) {
        for i in (full - k).subsets() {
            for j in (full - k - i).subsets() {
                out.push(BasisIndex::B { k, i, j });
            }
        }
    }
    Ok(out)
}

/// Indices of the `k`-body truncation, in the order of [`b_indices`].
pub fn bk_indices(n: usize, k: usize) -> Result<Vec<BasisIndex>> {
    check_k(n, k)?;
    Ok(b_indices(n)?
        .into_iter()
        .filter(|x| x.in_kbody(k))
        .collect())
}

/// Real-basis indices: every `b_K` in ascending `K`, then for each `(K, I, J)`
/// with `I < J` in tuple order the `+` element followed by the `−` element.
pub fn breal_indices(n: usize, k: Option<usize>) -> Result<Vec<BasisIndex>> {
    if let Some(k) = k {
        check_k(n, k)?;
    }
    let keep = |x: &BasisIndex| k.is_none_or(|k| x.in_kbody(k));
    let mut out: Vec<BasisIndex> = OrbitalSet::all(n)
        .map(|kk| BasisIndex::BReal {
            k: kk,
            i: OrbitalSet::EMPTY,
            j: OrbitalSet::EMPTY,
            parity: None,
        })
        .filter(keep)
        .collect();
    for idx in b_indices(n)? {
        let BasisIndex::B { k: kk, i, j } = idx else {
            unreachable!()
        };
        if i.bits() >= j.bits() {
            continue;
        }
        for parity in [Parity::Plus, Parity::Minus] {
            let e = BasisIndex::BReal {
                k: kk,
                i,
                j,
                parity: Some(parity),
            };
            if keep(&e) {
                out.push(e);
            }
        }
    }
    Ok(out)
}

fn materialize(n: usize, indices: Vec<BasisIndex>) -> Result<Vec<BasisElement>> {
    indices
        .into_par_iter()
        .map(|ix| build_element(n, ix))
        .collect()
}

/// `𝔅`: `4ⁿ` elements.
pub fn enumerate_basis_b(n: usize) -> Result<Vec<BasisElement>> {
    materialize(n, b_indices(n)?)
}

/// `𝔅_k`.
pub fn enumerate_basis_bk(n: usize, k: usize) -> Result<Vec<BasisElement>> {
    materialize(n, bk_indices(n, k)?)
}

/// `𝔅ᴿ`, optionally truncated to `k` bodies.
pub fn enumerate_basis_breal(n: usize, k: Option<usize>) -> Result<Vec<BasisElement>> {
    materialize(n, breal_indices(n, k)?)
}

/// Any family, optionally truncated.
pub fn enumerate_basis(family: Family, n: usize, k: Option<usize>) -> Result<Vec<BasisElement>> {
    match (family, k) {
        (Family::B, None) => enumerate_basis_b(n),
        (Family::B, Some(k)) => enumerate_basis_bk(n, k),
        (Family::BReal, k) => enumerate_basis_breal(n, k),
        (Family::Majorana, k) => enumerate_basis_majorana(n, k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{poly_to_dense, DenseOperator};
    use crate::trace::hs_inner_poly;

    #[test]
    fn bk_examples() {
        assert_eq!(
            build_bk(OrbitalSet::EMPTY, 3).unwrap(),
            OperatorPoly::identity(3).unwrap()
        );
        let one = OrbitalSet::singleton(1);
        let b1 = build_bk(one, 2).unwrap();
        assert_eq!(b1.len(), 2);
        assert_eq!(
            b1.coeff(OrbitalSet::EMPTY, OrbitalSet::EMPTY),
            Complex::new(1, 0)
        );
        assert_eq!(b1.coeff(one, one), Complex::new(-2, 0));
        // b_K is diagonal with entries (−1)^{|K∩I|}.
        let k = OrbitalSet::from_indices(&[1, 3], 3).unwrap();
        let d: DenseOperator<i64> = poly_to_dense(&build_bk(k, 3).unwrap()).unwrap();
        for i in OrbitalSet::all(3) {
            let s = if (k & i).len().is_multiple_of(2) {
                1
            } else {
                -1
            };
            assert_eq!(
                d.get(i.bits() as usize, i.bits() as usize),
                Complex::new(s, 0)
            );
        }
    }

    #[test]
    fn n1_family_and_counts() {
        let b = enumerate_basis_b(1).unwrap();
        let ids: Vec<String> = b.iter().map(|e| e.id()).collect();
        assert_eq!(
            ids,
            [
                "B:K=[];I=[];J=[]",
                "B:K=[];I=[];J=[1]",
                "B:K=[];I=[1];J=[]",
                "B:K=[1];I=[];J=[]"
            ]
        );
        assert_eq!(b[0].normalization.half_exponent, 1);
        assert_eq!(b[1].normalization.half_exponent, 0);
        for n in 1..=6 {
            assert_eq!(b_indices(n).unwrap().len(), 1 << (2 * n));
        }
        assert_eq!(bk_indices(3, 1).unwrap().len(), 16);
        assert_eq!(bk_indices(3, 0).unwrap().len(), 1);
        assert_eq!(breal_indices(2, None).unwrap().len(), 16);
    }

    #[test]
    fn raw_norms_match_normalization_exactly() {
        for n in 1..=3 {
            for fam in [Family::B, Family::BReal] {
                for e in enumerate_basis(fam, n, None).unwrap() {
                    let nn = hs_inner_poly(&e.raw, &e.raw).unwrap();
                    assert_eq!(nn, Complex::new(e.normalization.inverse_square() as i64, 0));
                }
            }
        }
    }

    #[test]
    fn adjoint_maps_element_to_swapped_element() {
        for e in enumerate_basis_b(3).unwrap() {
            let BasisIndex::B { k, i, j } = e.index else {
                unreachable!()
            };
            let partner = element_b(3, k, j, i).unwrap();
            assert_eq!(e.raw.adjoint(), partner.raw);
        }
    }

    #[test]
    fn real_elements_are_self_adjoint() {
        for e in enumerate_basis_breal(3, None).unwrap() {
            assert_eq!(e.raw.adjoint(), e.raw, "{}", e.id());
        }
    }
}
