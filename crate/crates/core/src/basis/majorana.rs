use std::fmt;

use num_complex::Complex;
use rayon::prelude::*;

use super::{check_k, BasisElement, BasisIndex, Normalization};
use crate::basis::families::enumerate_basis_b;
use crate::error::{FockError, Result};
use crate::fock::{check_orbital_count, OperatorPoly, OrbitalSet};
use crate::MAX_ORBITALS;

/// Subset of the Majorana indices `{1..2n}`; bit `j−1` is index `j`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MajoranaSet(u32);

impl MajoranaSet {
    pub const EMPTY: MajoranaSet = MajoranaSet(0);

    pub fn from_bits(bits: u32) -> Self {
        MajoranaSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn from_indices(indices: &[usize], n: usize) -> Result<Self> {
        let mut bits = 0u32;
        for &j in indices {
            if j == 0 || j > 2 * n {
                return Err(FockError::MajoranaIndex { j, max: 2 * n });
            }
            bits |= 1 << (j - 1);
        }
        Ok(MajoranaSet(bits))
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32)
            .filter(|p| self.0 >> p & 1 == 1)
            .map(|p| p + 1)
            .collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, j: usize) -> bool {
        (1..=32).contains(&j) && self.0 >> (j - 1) & 1 == 1
    }

    pub fn check_fits(self, n: usize) -> Result<()> {
        match self.indices().last() {
            Some(&j) if j > 2 * n => Err(FockError::MajoranaIndex { j, max: 2 * n }),
            _ => Ok(()),
        }
    }

    /// All `4ⁿ` subsets in ascending bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = MajoranaSet> {
        (0..1u64 << (2 * n)).map(|b| MajoranaSet(b as u32))
    }

    fn count_above(self, j: usize) -> u32 {
        if j >= 32 {
            0
        } else {
            (self.0 >> j).count_ones()
        }
    }
}

impl fmt::Display for MajoranaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(|j| j.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for MajoranaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MajoranaSet{self}")
    }
}

/// `a_{2k−1} = i(c*_k − c_k)`, `a_{2k} = c*_k + c_k`.
pub fn build_majorana(j: usize, n: usize) -> Result<OperatorPoly<i64>> {
    check_orbital_count(n, MAX_ORBITALS)?;
    if j == 0 || j > 2 * n {
        return Err(FockError::MajoranaIndex { j, max: 2 * n });
    }
    let k = OrbitalSet::singleton(j.div_ceil(2));
    let e = OrbitalSet::EMPTY;
    let (up, down) = if j.is_multiple_of(2) {
        (Complex::new(1, 0), Complex::new(1, 0))
    } else {
        (Complex::new(0, 1), Complex::new(0, -1))
    };
    OperatorPoly::from_terms(n, [(k, e, up), (e, k, down)])
}

/// `a_J = a_{j₁} ⋯ a_{j_l}` with ascending factors; `a_∅ = 𝟙`.
pub fn build_majorana_product(j: MajoranaSet, n: usize) -> Result<OperatorPoly<i64>> {
    j.check_fits(n)?;
    let mut p = OperatorPoly::identity(n)?;
    for idx in j.indices() {
        p = p.product(&build_majorana(idx, n)?)?;
    }
    Ok(p)
}

pub(crate) fn majorana_element(n: usize, index: BasisIndex) -> Result<BasisElement> {
    let BasisIndex::Majorana { j } = index else {
        unreachable!("dispatched on family")
    };
    Ok(BasisElement {
        n,
        index,
        normalization: Normalization::new(n as u32),
        raw: build_majorana_product(j, n)?,
    })
}

/// All `J ⊆ {1..2n}` in ascending bitmask order, optionally restricted to `|J| = 2l ≤ 2k`.
pub fn majorana_indices(n: usize, k: Option<usize>) -> Result<Vec<BasisIndex>> {
    check_orbital_count(n, MAX_ORBITALS)?;
    if let Some(k) = k {
        check_k(n, k)?;
    }
    Ok(MajoranaSet::all(n)
        .map(|j| BasisIndex::Majorana { j })
        .filter(|x| k.is_none_or(|k| x.in_kbody(k)))
        .collect())
}

/// `{2^{−n/2} a_J}`, optionally truncated to `k` bodies.
pub fn enumerate_basis_majorana(n: usize, k: Option<usize>) -> Result<Vec<BasisElement>> {
    majorana_indices(n, k)?
        .into_par_iter()
        .map(|ix| majorana_element(n, ix))
        .collect()
}

/// `a_J a_K = s · a_{J△K}`: each factor of `a_K` moves left past the larger
/// indices of `J`, then equal pairs square to `𝟙`.
pub fn majorana_mul(j: MajoranaSet, k: MajoranaSet) -> (i32, MajoranaSet) {
    let mut swaps = 0u32;
    let mut rest = k.0;
    while rest != 0 {
        let p = rest.trailing_zeros();
        swaps += j.count_above(p as usize + 1);
        rest &= rest - 1;
    }
    (
        if swaps.is_multiple_of(2) { 1 } else { -1 },
        MajoranaSet(j.0 ^ k.0),
    )
}

/// `a_J* = (−1)^{l(l−1)/2} a_J` for `l = |J|`.
pub fn majorana_adjoint_sign(j: MajoranaSet) -> i32 {
    let l = j.len();
    if (l * l.saturating_sub(1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `tr a_J` from the relations alone. For `J ≠ ∅` some `a_j` satisfies
/// `a_j a_J a_j = −a_J` (`j ∈ J` if `|J|` is even, `j ∉ J` otherwise), and
/// cyclicity with `a_j² = 𝟙` forces the trace to vanish.
pub fn majorana_trace_algebraic(j: MajoranaSet, n: usize) -> i64 {
    if j.is_empty() {
        return 1 << n;
    }
    let witness = (1..=2 * n).find(|&x| j.contains(x) == j.len().is_multiple_of(2));
    let Some(w) = witness else {
        // |J| = 2n is even, so this branch is unreachable for J ⊆ {1..2n}.
        unreachable!("no witness index")
    };
    let a = MajoranaSet(1 << (w - 1));
    let (s1, left) = majorana_mul(a, j);
    let (s2, back) = majorana_mul(left, a);
    assert_eq!(back, j);
    assert_eq!(s1 * s2, -1, "conjugation by a witness must flip the sign");
    0
}

/// `⟨a_J, a_K⟩ = tr(a_J* a_K)` by algebraic reduction.
pub fn majorana_gram_algebraic(j: MajoranaSet, k: MajoranaSet, n: usize) -> i64 {
    let (s, l) = majorana_mul(j, k);
    (majorana_adjoint_sign(j) * s) as i64 * majorana_trace_algebraic(l, n)
}

/// Elements common to `𝔅` and `𝔅̃` by exact operator equality.
///
/// Always contains `2^{−n/2}𝟙`. Since `a_{2k−1} a_{2k} = −i(1 − 2n_k)`, the full
/// product is `a_{{1..2n}} = (−i)ⁿ b_{ℕ_n}`, so the parity element
/// `2^{−n/2} b_{ℕ_n}` is common as well exactly when `4 | n`.
pub fn basis_intersection_check(n: usize) -> Result<Vec<BasisElement>> {
    let b = enumerate_basis_b(n)?;
    let m = enumerate_basis_majorana(n, None)?;
    Ok(b.into_par_iter()
        .filter(|e| m.iter().any(|f| e.value_eq(f)))
        .collect())
}

/// Identifiers the intersection is characterized to contain, in basis order.
pub fn expected_intersection_ids(n: usize) -> Vec<String> {
    let mut ids = vec!["B:K=[];I=[];J=[]".to_string()];
    if n > 0 && n.is_multiple_of(4) {
        let all: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        ids.push(format!("B:K=[{}];I=[];J=[]", all.join(",")));
    }
    ids
}
