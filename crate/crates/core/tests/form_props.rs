mod common;

use common::*;
use fta_core::form::{form, form_recursion_depth, form_words_real, WeightSystem};
use fta_core::freealg::{Algebra, Element};
use fta_core::Rational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

#[test]
fn evaluator_matches_literal_recursion() {
    let alg = Algebra::new(2).unwrap();
    let words = alg.words(4);
    for ws in [
        WeightSystem::unit(2),
        WeightSystem::product_from_ints(&[2, 3]).unwrap(),
    ] {
        for f in &words {
            for g in &words {
                assert_eq!(
                    form_words_real(&ws, f, g).unwrap(),
                    form_oracle(&ws, f, g),
                    "<{f}, {g}>"
                );
            }
        }
    }
}

#[test]
fn orthogonality_on_holomorphic_words() {
    let ws = WeightSystem::product_from_ints(&[2, 3]).unwrap();
    let indices = Algebra::new(2).unwrap().multi_indices(5);
    for i in &indices {
        for k in &indices {
            let v = form_words_real(&ws, &i.theta_word(), &k.theta_word()).unwrap();
            let expected = if i == k {
                ws.weight(i).unwrap()
            } else {
                Rational::zero()
            };
            assert_eq!(v, expected, "{i} {k}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn complex_symmetric_on_words(ws in weights(), f in word(3, 8), g in word(3, 8)) {
        let fg = form_words_real(&ws, &f, &g).unwrap();
        prop_assert_eq!(&fg, &form_words_real(&ws, &g, &f).unwrap());
        prop_assert_eq!(fg, form_oracle(&ws, &f, &g));
    }
}

proptest! {
    #[test]
    fn complex_symmetric_on_elements(ws in weights(), a in element(3, 3, 6), b in element(3, 3, 6)) {
        prop_assert_eq!(form(&ws, &a, &b).unwrap().conj(), form(&ws, &b, &a).unwrap());
    }

    #[test]
    fn sesquilinear(ws in weights(), a in element(2, 3, 5), b in element(2, 3, 5), c in element(2, 2, 5), s in scalar()) {
        let lhs = form(&ws, &a, &(&b.scale(&s) + &c)).unwrap();
        let rhs = &(&form(&ws, &a, &b).unwrap() * &s) + &form(&ws, &a, &c).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = form(&ws, &(&b.scale(&s) + &c), &a).unwrap();
        let rhs = &(&form(&ws, &b, &a).unwrap() * &s.conj()) + &form(&ws, &c, &a).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn positive_definite_on_holomorphic(ws in weights(), p in holomorphic_element(3, 4, 5)) {
        prop_assume!(!p.is_zero());
        let v = form(&ws, &p, &p).unwrap();
        prop_assert!(v.is_real());
        prop_assert!(v.re.is_positive());
    }

    #[test]
    fn star_transfer_for_holomorphic_or_star_symbols(
        ws in weights(),
        f1 in holomorphic_element(3, 3, 4),
        f2 in holomorphic_element(3, 3, 4),
        g in holomorphic_or_star(3, 3, 4),
    ) {
        prop_assert_eq!(
            form(&ws, &f1, &(&f2 * &g)).unwrap(),
            form(&ws, &(&f1 * &g.star()), &f2).unwrap()
        );
    }

    #[test]
    fn recursion_depth_bounded(f in word(3, 10), g in word(3, 10)) {
        prop_assert!(form_recursion_depth(&f, &g) <= f.len() + g.len());
    }
}

#[test]
fn anti_linear_in_first_slot() {
    let ws = WeightSystem::product_from_ints(&[2, 3]).unwrap();
    let t1 = Element::from(w("t1"));
    let v = form(&ws, &t1.scale(&fta_core::Scalar::i()), &t1).unwrap();
    assert_eq!(v, fta_core::Scalar::from_ints(0, -2));
}
