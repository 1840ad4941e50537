mod common;

use common::{poly_mat, Mat};
use hsbasis::basis::{majorana_mul, MajoranaSet};
use hsbasis::dense::{dense_to_poly, poly_to_dense};
use hsbasis::fock::{apply_monomial, multi_sign};
use hsbasis::projection::KBodyProjector;
use hsbasis::trace::hs_inner_poly;
use hsbasis::{Complex, DenseOperator, Family, FockVector, OperatorPoly, OrbitalSet};
use proptest::prelude::*;

const N: usize = 3;

fn int_poly() -> impl Strategy<Value = OperatorPoly<i64>> {
    prop::collection::vec((0..8u32, 0..8u32, -3i64..=3, -3i64..=3), 0..10).prop_map(|terms| {
        let mut p = OperatorPoly::zero(N).unwrap();
        for (a, b, re, im) in terms {
            p.add_term(
                OrbitalSet::from_bits(a),
                OrbitalSet::from_bits(b),
                Complex::new(re, im),
            );
        }
        p
    })
}

fn float_poly() -> impl Strategy<Value = OperatorPoly<f64>> {
    prop::collection::vec((0..8u32, 0..8u32, -1.0f64..1.0, -1.0f64..1.0), 1..12).prop_map(|terms| {
        let mut p = OperatorPoly::zero(N).unwrap();
        for (a, b, re, im) in terms {
            p.add_term(
                OrbitalSet::from_bits(a),
                OrbitalSet::from_bits(b),
                Complex::new(re, im),
            );
        }
        p
    })
}

fn float_dense() -> impl Strategy<Value = DenseOperator<f64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 64).prop_map(|v| {
        DenseOperator::from_row_major(N, v.into_iter().map(|(r, i)| Complex::new(r, i)).collect())
            .unwrap()
    })
}

/// `⟨φ_{A_1}∧⋯, φ_{B_1}∧⋯⟩` by counting inversions of the concatenated lists.
fn inversion_sign(tops: &[u32], bottom: u32) -> i32 {
    let mut seq = Vec::new();
    for t in tops {
        seq.extend((0..8).filter(|i| t >> i & 1 == 1));
    }
    let union = tops.iter().fold(0, |acc, t| acc | t);
    if union != bottom || seq.len() != bottom.count_ones() as usize {
        return 0;
    }
    let inv = (0..seq.len())
        .flat_map(|i| (i + 1..seq.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| seq[i] > seq[j])
        .count();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn product_agrees_with_matrix_product(p in int_poly(), q in int_poly()) {
        prop_assert_eq!(poly_mat(&p.product(&q).unwrap()), poly_mat(&p).mul(&poly_mat(&q)));
    }

    #[test]
    fn exact_dense_round_trip(p in int_poly()) {
        let back = dense_to_poly(&poly_to_dense(&p).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn float_dense_round_trip(x in float_dense()) {
        let p = dense_to_poly(&x).unwrap();
        prop_assert!(poly_to_dense(&p).unwrap().max_abs_diff(&x) <= 1e-12);
    }

    #[test]
    fn adjoint_matches_matrix_adjoint(p in int_poly()) {
        prop_assert_eq!(poly_mat(&p.adjoint()), poly_mat(&p).adjoint());
    }

    #[test]
    fn inner_product_matches_oracle(p in int_poly(), q in int_poly()) {
        prop_assert_eq!(hs_inner_poly(&p, &q).unwrap(), poly_mat(&p).hs(&poly_mat(&q)));
    }

    #[test]
    fn inner_product_is_positive_and_conjugate_symmetric(p in int_poly(), q in int_poly()) {
        let pp = hs_inner_poly(&p, &p).unwrap();
        prop_assert_eq!(pp.im, 0);
        prop_assert!(pp.re >= 0);
        prop_assert_eq!(pp.re == 0, p.is_empty());
        prop_assert_eq!(hs_inner_poly(&p, &q).unwrap(), hs_inner_poly(&q, &p).unwrap().conj());
    }

    #[test]
    fn multi_sign_matches_inversion_count(a in 0..256u32, b in 0..256u32, c in 0..256u32, bottom in 0..256u32) {
        let sets = [a, b, c].map(OrbitalSet::from_bits);
        let got = multi_sign(&sets, &[OrbitalSet::from_bits(bottom)]);
        prop_assert_eq!(got, inversion_sign(&[a, b, c], bottom));
    }

    #[test]
    fn sparse_and_dense_vectors_evolve_alike(
        amps in prop::collection::vec((-2i64..=2, -2i64..=2), 8),
        k in 0..8u32, a in 0..8u32, b in 0..8u32,
    ) {
        prop_assume!(k & a == 0 && k & b == 0 && a & b == 0);
        let amps: Vec<Complex<i64>> = amps.into_iter().map(|(r, i)| Complex::new(r, i)).collect();
        let dense = FockVector::from_dense(N, amps.clone()).unwrap();
        let sparse = FockVector::from_sparse(
            N,
            amps.iter().enumerate().map(|(i, c)| (OrbitalSet::from_bits(i as u32), *c)),
        ).unwrap();
        let (k, a, b) = (OrbitalSet::from_bits(k), OrbitalSet::from_bits(a), OrbitalSet::from_bits(b));
        let x = apply_monomial(k, a, b, &dense).unwrap();
        let y = apply_monomial(k, a, b, &sparse).unwrap();
        prop_assert!(x.is_dense() && !y.is_dense());
        prop_assert_eq!(x.to_dense_vec(), y.to_dense_vec());
    }

    #[test]
    fn majorana_multiplication_is_associative(x in 0..64u32, y in 0..64u32, z in 0..64u32) {
        let (x, y, z) = (MajoranaSet::from_bits(x), MajoranaSet::from_bits(y), MajoranaSet::from_bits(z));
        let (s1, xy) = majorana_mul(x, y);
        let (s2, l) = majorana_mul(xy, z);
        let (s3, yz) = majorana_mul(y, z);
        let (s4, r) = majorana_mul(x, yz);
        prop_assert_eq!(l, r);
        prop_assert_eq!(s1 * s2, s3 * s4);
    }

    #[test]
    fn orbital_set_index_round_trip(bits in 0..(1u32 << 16)) {
        let s = OrbitalSet::from_bits(bits);
        prop_assert_eq!(OrbitalSet::from_indices(&s.indices(), 16).unwrap(), s);
        prop_assert_eq!(s.indices().len() as u32, s.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn projection_residual_is_orthogonal_to_the_subspace(p in float_poly(), k in 0..=N, fam in 0..3usize) {
        let family = [Family::B, Family::BReal, Family::Majorana][fam];
        let proj = KBodyProjector::new(N, k, family).unwrap();
        let out = proj.project_poly(&p).unwrap();
        let residual = poly_mat(&p).sub(&poly_mat(&out.output));
        for e in proj.basis() {
            let g = poly_mat(&e.to_poly::<f64>()).hs(&residual);
            prop_assert!(g.norm() <= 1e-10, "residual not orthogonal to {}", e.id());
        }
        prop_assert!(out.report.pythagoras_defect <= 1e-10);
        prop_assert!(out.output.is_kbody(k));
    }

    #[test]
    fn projection_of_a_poly_equals_projection_of_its_matrix(p in float_poly(), k in 0..=N) {
        let proj = KBodyProjector::new(N, k, Family::B).unwrap();
        let via_poly = poly_mat(&proj.project_poly(&p).unwrap().output);
        let via_dense = poly_mat(&proj.project_dense(&poly_to_dense(&p).unwrap()).unwrap().output);
        prop_assert!(via_poly.max_diff(&via_dense) <= 1e-12);
    }

    #[test]
    fn projection_is_linear(p in float_poly(), q in float_poly(), s in -2.0f64..2.0) {
        let proj = KBodyProjector::new(N, 1, Family::B).unwrap();
        let comb = &p + &q.scale(Complex::new(s, 0.0));
        let lhs: Mat<f64> = poly_mat(&proj.project_poly(&comb).unwrap().output);
        let rhs = poly_mat(&proj.project_poly(&p).unwrap().output)
            .add(&poly_mat(&proj.project_poly(&q).unwrap().output).scale(Complex::new(s, 0.0)));
        prop_assert!(lhs.max_diff(&rhs) <= 1e-12);
    }
}
