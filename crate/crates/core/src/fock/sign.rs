use super::set::OrbitalSet;

#[inline]
fn parity_sign(p: u32) -> i32 {
    if p.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `(-1)^{|{s ∈ set : s < pos}|}`: the sign of `φ_i ∧ φ_S` relative to `φ_{S ∪ {i}}`
/// for the orbital at bit position `pos`.
#[inline]
pub fn insertion_sign(pos: u32, set: OrbitalSet) -> i32 {
    parity_sign(set.count_below(pos))
}

/// Sign taking the concatenation of ascending blocks to ascending order,
/// together with their union; `None` if any two blocks overlap.
fn concatenation_sign(blocks: &[OrbitalSet]) -> Option<(i32, OrbitalSet)> {
    let mut seen = OrbitalSet::EMPTY;
    let mut inversions = 0u32;
    for &block in blocks {
        if !seen.is_disjoint(block) {
            return None;
        }
        for p in block.positions() {
            inversions += seen.count_above(p);
        }
        seen = seen | block;
    }
    Some((parity_sign(inversions), seen))
}

/// `⟨φ_{A₁} ∧ ⋯ ∧ φ_{A_k}, φ_{B₁} ∧ ⋯ ∧ φ_{B_l}⟩` for ascending Slater factors.
///
/// Zero unless the tops are pairwise disjoint, the bottoms are pairwise
/// disjoint and both unions coincide; otherwise the relative permutation sign.
pub fn multi_sign(tops: &[OrbitalSet], bottoms: &[OrbitalSet]) -> i32 {
    match (concatenation_sign(tops), concatenation_sign(bottoms)) {
        (Some((s, a)), Some((t, b))) if a == b => s * t,
        _ => 0,
    }
}

/// `c*_A φ_I = 𝟙(A ∩ I = ∅) · [A I ; A∪I] · φ_{A∪I}`.
pub fn apply_creation(a: OrbitalSet, i: OrbitalSet) -> Option<(i32, OrbitalSet)> {
    if !a.is_disjoint(i) {
        return None;
    }
    let u = a | i;
    Some((multi_sign(&[a, i], &[u]), u))
}

/// `c_A φ_I = 𝟙(A ⊆ I) · [A I∖A ; I] · φ_{I∖A}`.
pub fn apply_annihilation(a: OrbitalSet, i: OrbitalSet) -> Option<(i32, OrbitalSet)> {
    if !a.is_subset(i) {
        return None;
    }
    let rest = i - a;
    Some((multi_sign(&[a, rest], &[i]), rest))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ix: &[usize]) -> OrbitalSet {
        OrbitalSet::from_indices(ix, 8).unwrap()
    }

    /// Flattened orbital sequence of ascending blocks.
    fn sequence(blocks: &[OrbitalSet]) -> Vec<usize> {
        blocks.iter().flat_map(|b| b.indices()).collect()
    }

    fn permutations(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(k - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }

    fn perm_sign(p: &[usize]) -> i32 {
        let mut inv = 0;
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                if p[a] > p[b] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Leibniz determinant of the orbital overlap matrix `⟨φ_{s_i}, φ_{t_j}⟩ = δ`.
    fn overlap_det(tops: &[OrbitalSet], bottoms: &[OrbitalSet]) -> i32 {
        let s = sequence(tops);
        let t = sequence(bottoms);
        if s.len() != t.len() {
            return 0;
        }
        permutations(s.len())
            .iter()
            .map(|p| {
                if (0..s.len()).all(|i| s[i] == t[p[i]]) {
                    perm_sign(p)
                } else {
                    0
                }
            })
            .sum()
    }

    #[test]
    fn documented_examples() {
        assert_eq!(multi_sign(&[set(&[1]), set(&[2])], &[set(&[1, 2])]), 1);
        assert_eq!(multi_sign(&[set(&[2]), set(&[1])], &[set(&[1, 2])]), -1);
        assert_eq!(overlap_det(&[set(&[2]), set(&[1])], &[set(&[1, 2])]), -1);
        assert_eq!(multi_sign(&[set(&[1]), set(&[1])], &[set(&[1])]), 0);
        assert_eq!(multi_sign(&[OrbitalSet::EMPTY], &[OrbitalSet::EMPTY]), 1);
        assert_eq!(multi_sign(&[], &[]), 1);
    }

    #[test]
    fn agrees_with_overlap_determinant_n3() {
        let all: Vec<_> = OrbitalSet::all(3).collect();
        for &a in &all {
            for &b in &all {
                for &c in &all {
                    for &d in &all {
                        let tops = [a, b];
                        let bottoms = [c, d];
                        assert_eq!(
                            multi_sign(&tops, &bottoms),
                            overlap_det(&tops, &bottoms),
                            "{a} {b} ; {c} {d}"
                        );
                        let three = [a, b, c];
                        assert_eq!(multi_sign(&three, &[d]), overlap_det(&three, &[d]));
                    }
                }
            }
        }
    }

    #[test]
    fn identity_and_union_mismatch_n4() {
        for a in OrbitalSet::all(4) {
            assert_eq!(multi_sign(&[a], &[a]), 1);
            for b in OrbitalSet::all(4) {
                if a != b {
                    assert_eq!(multi_sign(&[a], &[b]), 0);
                }
                for c in OrbitalSet::all(4) {
                    if a | b != c && a.is_disjoint(b) {
                        assert_eq!(multi_sign(&[a, b], &[c]), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn creation_and_annihilation_examples() {
        assert_eq!(
            apply_creation(set(&[1]), set(&[2])),
            Some((1, set(&[1, 2])))
        );
        assert_eq!(
            apply_creation(set(&[2]), set(&[1])),
            Some((-1, set(&[1, 2])))
        );
        assert_eq!(apply_creation(set(&[1]), set(&[1])), None);
        assert_eq!(
            apply_annihilation(set(&[1]), set(&[1, 2])),
            Some((1, set(&[2])))
        );
        assert_eq!(
            apply_annihilation(set(&[1, 2]), set(&[1, 2])),
            Some((1, OrbitalSet::EMPTY))
        );
        assert_eq!(apply_annihilation(set(&[3]), set(&[1, 2])), None);
    }

    #[test]
    fn single_insertion_matches_multi_sign() {
        for s in OrbitalSet::all(5) {
            for p in 0..5u32 {
                let i = OrbitalSet::from_bits(1 << p);
                if s.is_disjoint(i) {
                    assert_eq!(insertion_sign(p, s), multi_sign(&[i, s], &[i | s]));
                }
            }
        }
    }
}
