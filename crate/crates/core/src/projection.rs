//! The projection `P : 𝒜 → 𝒫`, `P g = Σ_i ⟨φ_i, g⟩ φ_i`.
//!
//! Working in the unnormalized basis, `P g = Σ_i (⟨θ_i, g⟩ / w(i)) θ_i`,
//! and at most one multi-index `i` contributes for any word `g`.

use num_traits::Zero;

use crate::error::Result;
use crate::form::{form_words_real, WeightSystem};
use crate::freealg::{Algebra, BeginsWith, Element, MultiIndex, Word};
use crate::scalar::{Rational, Scalar};

/// Closed-form projection of a single word.
pub fn project_word(ws: &WeightSystem, g: &Word) -> Result<Element> {
    Ok(match project_word_term(ws, g)? {
        Some((i, c)) => Element::monomial(Scalar::real(c), i.theta_word()),
        None => Element::zero(),
    })
}

/// The single surviving `(i, coefficient)` of the expansion, if any.
pub fn project_word_term(ws: &WeightSystem, g: &Word) -> Result<Option<(MultiIndex, Rational)>> {
    let nonzero = |i: MultiIndex, c: Rational| (!c.is_zero()).then_some((i, c));
    match g.begins_with() {
        BeginsWith::Both => Ok(Some((
            MultiIndex::empty(),
            Rational::from_integer(1.into()),
        ))),
        BeginsWith::Bar => {
            let c = form_words_real(ws, &Word::one(), g)?;
            Ok(nonzero(MultiIndex::empty(), c))
        }
        BeginsWith::Theta => {
            let d = g.decompose()?;
            let (t, u) = (d.head.len(), d.mid.len());
            if t < u {
                return Ok(None);
            }
            let (prefix, suffix) = d.head.entries().split_at(t - u);
            if !suffix.iter().rev().eq(d.mid.entries().iter()) {
                return Ok(None);
            }
            let tail = form_words_real(ws, &Word::one(), &d.tail)?;
            if tail.is_zero() {
                return Ok(None);
            }
            let c = ws.weight(&d.head)? / ws.weight_of(prefix)? * tail;
            Ok(nonzero(MultiIndex::from(prefix), c))
        }
    }
}

/// Linear extension of [`project_word`].
pub fn project(ws: &WeightSystem, a: &Element) -> Result<Element> {
    let mut out = Element::zero();
    for (g, c) in a.terms() {
        if let Some((i, k)) = project_word_term(ws, g)? {
            out.add_term(i.theta_word(), c.scale(&k));
        }
    }
    Ok(out)
}

/// Brute-force evaluation of the defining sum over all `|i| ≤ len(g)`.
///
/// Exponential in `len(g)`. Multi-indices longer than `g` never contribute:
/// every recursion step of `⟨θ_i, g⟩` consumes at least as many letters
/// of `g` as of `θ_i`.
pub fn project_oracle(ws: &WeightSystem, g: &Word) -> Result<Element> {
    project_oracle_with_bound(ws, g, g.len())
}

pub fn project_oracle_with_bound(ws: &WeightSystem, g: &Word, max_len: usize) -> Result<Element> {
    let alg = Algebra::new(ws.n())?;
    let mut out = Element::zero();
    for i in alg.multi_indices(max_len) {
        let theta = i.theta_word();
        let v = form_words_real(ws, &theta, g)?;
        if !v.is_zero() {
            out.add_term(theta, Scalar::real(v / ws.weight(&i)?));
        }
    }
    Ok(out)
}

/// Number of multi-indices `i` with `⟨θ_i, g⟩ ≠ 0`, by enumeration.
pub fn nonzero_expansion_terms(ws: &WeightSystem, g: &Word) -> Result<usize> {
    let alg = Algebra::new(ws.n())?;
    let mut count = 0;
    for i in alg.multi_indices(g.len()) {
        if !form_words_real(ws, &i.theta_word(), g)?.is_zero() {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::form;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let unit = WeightSystem::unit(2);
        assert_eq!(
            project_word(&unit, &w("t1 t2 b2")).unwrap(),
            Element::from(w("t1"))
        );
        assert_eq!(project_word(&unit, &w("b1 t1")).unwrap(), Element::one());
        assert_eq!(project_word(&unit, &w("t1 b2")).unwrap(), Element::zero());
        assert_eq!(project_word(&unit, &Word::one()).unwrap(), Element::one());
        for p in ["t1", "t2 t1 t1", "t1 t2 t2 t1"] {
            assert_eq!(project_word(&unit, &w(p)).unwrap(), Element::from(w(p)));
        }
    }

    #[test]
    fn weighted_closed_form() {
        // k = (1,2), l = (2): i = (1), coefficient w(1,2)/w(1) = μ_2
        let ws = WeightSystem::product_from_ints(&[2, 3]).unwrap();
        assert_eq!(
            project_word(&ws, &w("t1 t2 b2")).unwrap(),
            Element::monomial(Scalar::from_ints(3, 0), w("t1"))
        );
    }

    #[test]
    fn element_examples() {
        let unit = WeightSystem::unit(2);
        let a = &Element::from(w("t1")) + &Element::from(w("t1 b1"));
        assert_eq!(
            project(&unit, &a).unwrap(),
            &Element::from(w("t1")) + &Element::one()
        );
        assert_eq!(project(&unit, &Element::zero()).unwrap(), Element::zero());
        let b = Element::monomial(Scalar::from_ints(0, 2), w("b1"));
        assert_eq!(project(&unit, &b).unwrap(), Element::zero());
    }

    #[test]
    fn oracle_examples() {
        let unit = WeightSystem::unit(2);
        assert_eq!(
            project_oracle(&unit, &w("t1 t2 b2")).unwrap(),
            Element::from(w("t1"))
        );
        assert_eq!(
            project_oracle(&unit, &w("b2 t1 b1")).unwrap(),
            Element::zero()
        );
        assert_eq!(project_oracle(&unit, &Word::one()).unwrap(), Element::one());
    }

    #[test]
    fn widening_the_oracle_bound_changes_nothing() {
        let ws = WeightSystem::product_from_ints(&[2, 3]).unwrap();
        let alg = Algebra::new(2).unwrap();
        for g in alg.words(3) {
            assert_eq!(
                project_oracle(&ws, &g).unwrap(),
                project_oracle_with_bound(&ws, &g, g.len() + 2).unwrap(),
                "g = {g}"
            );
        }
    }

    #[test]
    fn symmetric_on_small_words() {
        let ws = WeightSystem::product_from_ints(&[2, 3]).unwrap();
        let alg = Algebra::new(2).unwrap();
        let words = alg.words(3);
        for f in &words {
            let pf = project_word(&ws, f).unwrap();
            let f = Element::from(f.clone());
            for g in &words {
                let pg = project_word(&ws, g).unwrap();
                let g = Element::from(g.clone());
                assert_eq!(form(&ws, &pf, &g).unwrap(), form(&ws, &f, &pg).unwrap());
            }
        }
    }
}
