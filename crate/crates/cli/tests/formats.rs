use hsbasis::{Complex, OrbitalSet, Poly};
use hsbasis_cli::io::{parse_input, to_json_pretty, InputFile, OperatorFile};
use proptest::prelude::*;

fn finite() -> impl Strategy<Value = f64> {
    any::<f64>().prop_filter("finite", |x| x.is_finite())
}

fn poly(n: usize) -> impl Strategy<Value = Poly> {
    let top = 1u32 << n;
    prop::collection::vec((0..top, 0..top, finite(), finite()), 0..12).prop_map(move |terms| {
        let mut p = Poly::zero(n).unwrap();
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

fn bits(p: &Poly) -> Vec<(OrbitalSet, OrbitalSet, u64, u64)> {
    p.terms()
        .map(|(a, b, c)| (a, b, c.re.to_bits(), c.im.to_bits()))
        .collect()
}

proptest! {
    #[test]
    fn operator_file_round_trips_bit_exactly(p in (1usize..=4).prop_flat_map(poly)) {
        let text = to_json_pretty(&OperatorFile::from_poly(&p));
        let InputFile::Operator(back) = parse_input(&text).unwrap() else {
            panic!("operator file parsed as another kind");
        };
        prop_assert_eq!(back.n(), p.n());
        prop_assert_eq!(bits(&back), bits(&p));
        prop_assert_eq!(to_json_pretty(&OperatorFile::from_poly(&back)), text);
    }
}

#[test]
fn indices_are_one_based_and_ascending() {
    let mut p = Poly::zero(3).unwrap();
    p.add_term(
        OrbitalSet::from_bits(0b101),
        OrbitalSet::from_bits(0b010),
        Complex::new(0.1, -2.5),
    );
    let file = OperatorFile::from_poly(&p);
    assert_eq!(file.terms.len(), 1);
    assert_eq!(file.terms[0].a, vec![1, 3]);
    assert_eq!(file.terms[0].b, vec![2]);
    assert_eq!(file.terms[0].coeff, [0.1, -2.5]);
}
