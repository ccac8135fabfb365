mod common;

use common::*;
use fta_core::form::{form, WeightSystem};
use fta_core::freealg::Algebra;
use fta_core::projection::{nonzero_expansion_terms, project, project_oracle, project_word};
use proptest::prelude::*;

#[test]
fn closed_form_matches_oracle_on_all_short_words() {
    let alg = Algebra::new(2).unwrap();
    for ws in [
        WeightSystem::unit(2),
        WeightSystem::product_from_ints(&[2, 3]).unwrap(),
    ] {
        for g in alg.words(5) {
            assert_eq!(
                project_word(&ws, &g).unwrap(),
                project_oracle(&ws, &g).unwrap(),
                "g = {g}"
            );
        }
    }
}

#[test]
fn at_most_one_expansion_term() {
    let ws = WeightSystem::product_from_ints(&[2, 3]).unwrap();
    for g in Algebra::new(2).unwrap().words(5) {
        assert!(nonzero_expansion_terms(&ws, &g).unwrap() <= 1, "g = {g}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_form_matches_oracle_on_longer_words(ws in weights(), g in word(3, 10)) {
        prop_assert_eq!(project_word(&ws, &g).unwrap(), project_oracle(&ws, &g).unwrap());
    }
}

proptest! {
    #[test]
    fn idempotent_with_range_in_holomorphic(ws in weights(), a in element(3, 4, 7)) {
        let pa = project(&ws, &a).unwrap();
        prop_assert!(pa.is_holomorphic());
        prop_assert_eq!(project(&ws, &pa).unwrap(), pa);
    }

    #[test]
    fn identity_on_holomorphic(ws in weights(), p in holomorphic_element(3, 4, 7)) {
        prop_assert_eq!(project(&ws, &p).unwrap(), p);
    }

    #[test]
    fn symmetric_for_the_form(ws in weights(), a in element(3, 4, 6), b in element(3, 4, 6)) {
        prop_assert_eq!(
            form(&ws, &project(&ws, &a).unwrap(), &b).unwrap(),
            form(&ws, &a, &project(&ws, &b).unwrap()).unwrap()
        );
    }

    #[test]
    fn linear(ws in weights(), a in element(2, 3, 6), b in element(2, 3, 6), s in scalar()) {
        let lhs = project(&ws, &(&a.scale(&s) + &b)).unwrap();
        let rhs = &project(&ws, &a).unwrap().scale(&s) + &project(&ws, &b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
