use proptest::prelude::*;

use fuscat_core::{FreeProductRing, Label, LaurentPoly, Letter, Var, Word};

fn poly(arity: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, arity), -5i64..=5), 0..5).prop_map(move |terms| {
        terms.into_iter().fold(LaurentPoly::zero(Var::T, arity), |acc, (exps, c)| {
            acc.checked_add(&LaurentPoly::monomial(Var::T, arity, exps, c)).unwrap()
        })
    })
}

fn word() -> impl Strategy<Value = Word> {
    (0usize..2, prop::collection::vec(1u32..=3, 0..4)).prop_map(|(start, labels)| {
        let letters = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| Letter::new((start + i) % 2, Label(l)))
            .collect();
        Word::new(letters).unwrap()
    })
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in poly(2), b in poly(2), c in poly(2)) {
        prop_assert_eq!(a.checked_mul(&b).unwrap(), b.checked_mul(&a).unwrap());
        prop_assert_eq!(
            a.checked_mul(&b).unwrap().checked_mul(&c).unwrap(),
            a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.checked_mul(&b.checked_add(&c).unwrap()).unwrap(),
            a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.checked_sub(&a).unwrap().is_zero());
    }

    #[test]
    fn laurent_display_parses_back(a in poly(1), b in poly(3)) {
        prop_assert_eq!(LaurentPoly::parse(&a.to_string(), Var::T, 1).unwrap(), a);
        prop_assert_eq!(LaurentPoly::parse(&b.to_string(), Var::T, 3).unwrap(), b);
    }

    #[test]
    fn fusion_is_associative(x in word(), y in word(), z in word()) {
        let fp = FreeProductRing::su2_power(2);
        let (fx, fy, fz) = (
            fp.decompose_tensor_words(&[x.clone()]),
            fp.decompose_tensor_words(&[y.clone()]),
            fp.decompose_tensor_words(&[z.clone()]),
        );
        let left = fp.tensor_object(&fp.tensor_object(&fx, &fy), &fz);
        let right = fp.tensor_object(&fx, &fp.tensor_object(&fy, &fz));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn triangle_dim_matches_fuse(x in word(), y in word()) {
        let fp = FreeProductRing::su2_power(2);
        let sum = fp.fuse_words(&x, &y);
        for z in fp.squeeze_candidates(&x, &y) {
            prop_assert_eq!(fp.triangle_dim(&x, &y, &z), sum.coefficient(&z));
        }
        prop_assert_eq!(fp.parse_word(&fp.format_word(&x)).unwrap(), x);
    }
}
