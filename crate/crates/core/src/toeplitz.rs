//! Toeplitz operators `T_g φ = P(φ g)` and the creation/annihilation
//! operators `A_j† = T_{θ_j}`, `A_j = T_{θ̄_j}`.

use std::fmt;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::form::{form, form_words_real, WeightSystem};
use crate::freealg::{Algebra, Element, Letter, MultiIndex, Word};
use crate::projection::project;
use crate::sample::random_element;
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug)]
pub struct ToeplitzOperator<'w> {
    symbol: Element,
    weights: &'w WeightSystem,
}

impl<'w> ToeplitzOperator<'w> {
    pub fn new(symbol: Element, weights: &'w WeightSystem) -> Self {
        ToeplitzOperator { symbol, weights }
    }

    pub fn creation(weights: &'w WeightSystem, j: u32) -> Result<Self> {
        let l = Algebra::new(weights.n())?.theta(j)?;
        Ok(ToeplitzOperator::new(
            Word::from_letters([l]).into(),
            weights,
        ))
    }

    pub fn annihilation(weights: &'w WeightSystem, j: u32) -> Result<Self> {
        let l = Algebra::new(weights.n())?.bar(j)?;
        Ok(ToeplitzOperator::new(
            Word::from_letters([l]).into(),
            weights,
        ))
    }

    pub fn symbol(&self) -> &Element {
        &self.symbol
    }

    pub fn weights(&self) -> &'w WeightSystem {
        self.weights
    }

    /// `T_{g*}`, the adjoint on 𝒫 when `g ∈ 𝒫 ∪ 𝒫*`.
    pub fn star(&self) -> Self {
        ToeplitzOperator::new(self.symbol.star(), self.weights)
    }

    pub fn apply(&self, phi: &Element) -> Result<Element> {
        if !phi.is_holomorphic() {
            return Err(Error::NotHolomorphic);
        }
        project(self.weights, &(phi * &self.symbol))
    }
}

pub fn apply(ws: &WeightSystem, g: &Element, phi: &Element) -> Result<Element> {
    ToeplitzOperator::new(g.clone(), ws).apply(phi)
}

/// `A_j† φ = φ θ_j`.
pub fn creation(ws: &WeightSystem, j: u32, phi: &Element) -> Result<Element> {
    ToeplitzOperator::creation(ws, j)?.apply(phi)
}

/// `A_j θ_{(i,j)} = (w(i,j)/w(i)) θ_i`, and `A_j θ_k = 0` when `k` does not end in `j`.
pub fn annihilation(ws: &WeightSystem, j: u32, phi: &Element) -> Result<Element> {
    ToeplitzOperator::annihilation(ws, j)?.apply(phi)
}

/// The ladder ratio `w(i,j) / w(i)`.
pub fn ladder_ratio(ws: &WeightSystem, i: &MultiIndex, j: u32) -> Result<Rational> {
    Ok(ws.weight(&i.push(j))? / ws.weight(i)?)
}

/// `T_g T_h φ − T_h T_g φ`.
pub fn commutator_apply(
    ws: &WeightSystem,
    g: &Element,
    h: &Element,
    phi: &Element,
) -> Result<Element> {
    let gh = apply(ws, g, &apply(ws, h, phi)?)?;
    let hg = apply(ws, h, &apply(ws, g, phi)?)?;
    Ok(&gh - &hg)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointViolation {
    pub f1: Element,
    pub f2: Element,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

/// `f1 <TAB> f2 <TAB> lhs <TAB> rhs` in expression syntax.
impl fmt::Display for AdjointViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}\t{}", self.f1, self.f2, self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointReport {
    pub seed: u64,
    pub trials: usize,
    pub violations: Vec<AdjointViolation>,
}

/// Compares `⟨f1, T_g f2⟩` with `⟨T_{g*} f1, f2⟩`.
pub fn adjoint_violation(
    ws: &WeightSystem,
    g: &Element,
    f1: &Element,
    f2: &Element,
) -> Result<Option<AdjointViolation>> {
    let lhs = form(ws, f1, &apply(ws, g, f2)?)?;
    let rhs = form(ws, &apply(ws, &g.star(), f1)?, f2)?;
    Ok((lhs != rhs).then(|| AdjointViolation {
        f1: f1.clone(),
        f2: f2.clone(),
        lhs,
        rhs,
    }))
}

/// Samples `trials` pairs `f1, f2 ∈ 𝒫` (at most 4 terms, words of length
/// at most 6) and records every failure of the weak adjoint identity.
pub fn check_adjoint(
    ws: &WeightSystem,
    g: &Element,
    trials: usize,
    seed: u64,
) -> Result<AdjointReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for _ in 0..trials {
        let f1 = random_element(&mut rng, ws.n(), 4, 6, true);
        let f2 = random_element(&mut rng, ws.n(), 4, 6, true);
        violations.extend(adjoint_violation(ws, g, &f1, &f2)?);
    }
    Ok(AdjointReport {
        seed,
        trials,
        violations,
    })
}

/// Exhaustive weak-adjoint check over all holomorphic `f1, f2` and all
/// symbols `g ∈ 𝒫 ∪ 𝒫*` given by words of length `≤ max_len`.
pub fn check_adjoint_exhaustive(
    ws: &WeightSystem,
    max_len: usize,
) -> Result<Vec<(Word, AdjointViolation)>> {
    let alg = Algebra::new(ws.n())?;
    let holo = alg.holomorphic_words(max_len);
    let symbols: Vec<Word> = holo
        .iter()
        .cloned()
        .chain(holo.iter().filter(|w| !w.is_one()).map(Word::star))
        .collect();
    let per_symbol = symbols
        .par_iter()
        .map(|g| {
            let ge = Element::from(g.clone());
            let mut found = Vec::new();
            for f1 in &holo {
                let f1 = Element::from(f1.clone());
                for f2 in &holo {
                    let f2 = Element::from(f2.clone());
                    if let Some(v) = adjoint_violation(ws, &ge, &f1, &f2)? {
                        found.push((g.clone(), v));
                    }
                }
            }
            Ok(found)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_symbol.into_iter().flatten().collect())
}

/// The four values of the two known counterexamples to the compatibility
/// identities, computed from the form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexamples {
    /// `⟨θ_1, θ_1θ_2 · θ̄_2θ_1θ̄_1⟩ = w(1,2) w(1)`
    pub ce1_lhs: Rational,
    /// `⟨θ_1 (θ̄_2θ_1θ̄_1)*, θ_1θ_2⟩ = 0`
    pub ce1_rhs: Rational,
    /// `⟨θ_1, θ_1 · θ_2θ̄_2⟩ = w(1,2)`
    pub ce2_lhs: Rational,
    /// `⟨θ_1 θ_1*, θ_2θ̄_2⟩ = 0`
    pub ce2_rhs: Rational,
}

impl Counterexamples {
    /// The values the counterexamples must take for the given weights.
    pub fn expected(ws: &WeightSystem) -> Result<Self> {
        let w12 = ws.weight_of(&[1, 2])?;
        let w1 = ws.weight_of(&[1])?;
        Ok(Counterexamples {
            ce1_lhs: &w12 * &w1,
            ce1_rhs: Rational::zero(),
            ce2_lhs: w12,
            ce2_rhs: Rational::zero(),
        })
    }
}

impl fmt::Display for Counterexamples {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.ce1_lhs, self.ce1_rhs, self.ce2_lhs, self.ce2_rhs
        )
    }
}

fn word_of(letters: &[Letter]) -> Word {
    Word::from_letters(letters.iter().copied())
}

pub fn reproduce_counterexamples(ws: &WeightSystem) -> Result<Counterexamples> {
    if ws.n() < 2 {
        return Err(Error::CounterexamplesNeedTwoGenerators);
    }
    let (t1, t2, b1, b2) = (
        Letter::theta(1),
        Letter::theta(2),
        Letter::bar(1),
        Letter::bar(2),
    );

    let f1 = word_of(&[t1]);
    let f2 = word_of(&[t1, t2]);
    let g = word_of(&[b2, t1, b1]);
    let ce1_lhs = form_words_real(ws, &f1, &f2.concat(&g))?;
    let ce1_rhs = form_words_real(ws, &f1.concat(&g.star()), &f2)?;

    let f = word_of(&[t1]);
    let g = word_of(&[t2, b2]);
    let ce2_lhs = form_words_real(ws, &f, &f.concat(&g))?;
    let ce2_rhs = form_words_real(ws, &f.concat(&f.star()), &g)?;

    Ok(Counterexamples {
        ce1_lhs,
        ce1_rhs,
        ce2_lhs,
        ce2_rhs,
    })
}

/// Which compatibility identity failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Compatibility {
    /// `⟨f1, f2 g⟩ = ⟨f1 g*, f2⟩`
    StarTransfer,
    /// `⟨f1, f2 g⟩ = ⟨f1 f2*, g⟩`
    ProductTransfer,
}

impl fmt::Display for Compatibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Compatibility::StarTransfer => write!(f, "<f1, f2 g> = <f1 g*, f2>"),
            Compatibility::ProductTransfer => write!(f, "<f1, f2 g> = <f1 f2*, g>"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityViolation {
    pub property: Compatibility,
    pub f1: Word,
    pub f2: Word,
    pub g: Word,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl CompatibilityViolation {
    /// `(property, f1, f2, g)` of the two known counterexamples (n ≥ 2).
    pub fn known_witnesses() -> [(Compatibility, Word, Word, Word); 2] {
        let (t1, t2, b1, b2) = (
            Letter::theta(1),
            Letter::theta(2),
            Letter::bar(1),
            Letter::bar(2),
        );
        [
            (
                Compatibility::StarTransfer,
                word_of(&[t1]),
                word_of(&[t1, t2]),
                word_of(&[b2, t1, b1]),
            ),
            (
                Compatibility::ProductTransfer,
                word_of(&[t1]),
                word_of(&[t1]),
                word_of(&[t2, b2]),
            ),
        ]
    }

    pub fn is_known_witness(&self) -> bool {
        Self::known_witnesses().iter().any(|(p, f1, f2, g)| {
            *p == self.property && *f1 == self.f1 && *f2 == self.f2 && *g == self.g
        })
    }
}

/// Enumerates holomorphic words `f1, f2` and arbitrary words `g`, all of
/// length `≤ max_len`, and reports every failure of either identity.
///
/// Both identities are linear in `g` and in `f2`, anti-linear in `f1`, so
/// checking basis words is exhaustive for the given length bound.
pub fn check_compatibility(
    ws: &WeightSystem,
    max_len: usize,
) -> Result<Vec<CompatibilityViolation>> {
    let alg = Algebra::new(ws.n())?;
    let holo = alg.holomorphic_words(max_len);
    let symbols = alg.words(max_len);
    let per_symbol = symbols
        .par_iter()
        .map(|g| {
            let g_star = g.star();
            let mut found = Vec::new();
            for f1 in &holo {
                let f1g = f1.concat(&g_star);
                for f2 in &holo {
                    let lhs = form_words_real(ws, f1, &f2.concat(g))?;
                    let star_rhs = form_words_real(ws, &f1g, f2)?;
                    let prod_rhs = form_words_real(ws, &f1.concat(&f2.star()), g)?;
                    for (property, rhs) in [
                        (Compatibility::StarTransfer, star_rhs),
                        (Compatibility::ProductTransfer, prod_rhs),
                    ] {
                        if lhs != rhs {
                            found.push(CompatibilityViolation {
                                property,
                                f1: f1.clone(),
                                f2: f2.clone(),
                                g: g.clone(),
                                lhs: lhs.clone(),
                                rhs,
                            });
                        }
                    }
                }
            }
            Ok(found)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_symbol.into_iter().flatten().collect())
}
