#![allow(dead_code)]

use fta_core::form::WeightSystem;
use fta_core::freealg::{BeginsWith, Element, Letter, LetterKind, MultiIndex, Word};
use fta_core::{Rational, Scalar};
use num_traits::{One, Zero};
use proptest::prelude::*;

pub fn w(s: &str) -> Word {
    s.parse().unwrap()
}

pub fn word(n: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((any::<bool>(), 1..=n), 0..=max_len).prop_map(|v| {
        Word::from_letters(v.into_iter().map(|(theta, index)| Letter {
            kind: if theta {
                LetterKind::Theta
            } else {
                LetterKind::Bar
            },
            index,
        }))
    })
}

pub fn holomorphic_word(n: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=n, 0..=max_len).prop_map(|v| Word::thetas(&v))
}

pub fn scalar() -> impl Strategy<Value = Scalar> {
    ((-4i64..=4, 1i64..=3), (-4i64..=4, 1i64..=3)).prop_map(|((a, b), (c, d))| {
        Scalar::new(
            Rational::new(a.into(), b.into()),
            Rational::new(c.into(), d.into()),
        )
    })
}

pub fn element_from(
    words: impl Strategy<Value = Word>,
    terms: usize,
) -> impl Strategy<Value = Element> {
    prop::collection::vec((words, scalar()), 1..=terms).prop_map(Element::from_terms)
}

pub fn element(n: u32, terms: usize, max_len: usize) -> impl Strategy<Value = Element> {
    element_from(word(n, max_len), terms)
}

pub fn holomorphic_element(n: u32, terms: usize, max_len: usize) -> impl Strategy<Value = Element> {
    element_from(holomorphic_word(n, max_len), terms)
}

/// Elements of 𝒫 ∪ 𝒫*.
pub fn holomorphic_or_star(n: u32, terms: usize, max_len: usize) -> impl Strategy<Value = Element> {
    (holomorphic_element(n, terms, max_len), any::<bool>())
        .prop_map(|(p, s)| if s { p.star() } else { p })
}

pub fn weights() -> impl Strategy<Value = WeightSystem> {
    prop::collection::vec((1i64..=5, 1i64..=3), 3).prop_map(|mu| {
        WeightSystem::product(
            mu.into_iter()
                .map(|(a, b)| Rational::new(a.into(), b.into()))
                .collect(),
        )
        .unwrap()
    })
}

/// Literal transcription of the recursive definition, written
/// independently of the library's evaluator: θ̄-initial cases go through
/// the letter-kind swap, one-sided and two-sided rules use `decompose`.
pub fn form_oracle(ws: &WeightSystem, f: &Word, g: &Word) -> Rational {
    let wt = |i: &MultiIndex| ws.weight(i).unwrap();
    match (f.is_one(), g.is_one()) {
        (true, true) => Rational::one(),
        (false, true) | (true, false) => {
            let h = if f.is_one() { g } else { f };
            if h.begins_with() == BeginsWith::Bar {
                let s = h.swap_alphabet();
                return if f.is_one() {
                    form_oracle(ws, &Word::one(), &s)
                } else {
                    form_oracle(ws, &s, &Word::one())
                };
            }
            let d = h.decompose().unwrap();
            if d.head.len() == d.mid.len() && d.head == d.mid.reversed() {
                let rest = if f.is_one() {
                    form_oracle(ws, &Word::one(), &d.tail)
                } else {
                    form_oracle(ws, &d.tail, &Word::one())
                };
                wt(&d.head) * rest
            } else {
                Rational::zero()
            }
        }
        (false, false) => match (f.begins_with(), g.begins_with()) {
            (BeginsWith::Bar, BeginsWith::Bar) => {
                form_oracle(ws, &f.swap_alphabet(), &g.swap_alphabet())
            }
            (BeginsWith::Theta, BeginsWith::Theta) => {
                let df = f.decompose().unwrap();
                let dg = g.decompose().unwrap();
                let left = df.head.concat(&dg.mid.reversed());
                let right = dg.head.concat(&df.mid.reversed());
                if left == right {
                    wt(&left) * form_oracle(ws, &df.tail, &dg.tail)
                } else {
                    Rational::zero()
                }
            }
            _ => Rational::zero(),
        },
    }
}
