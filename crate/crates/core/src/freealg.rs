//! The free algebra on `2n` non-commuting generators `θ_j`, `θ̄_j`.
//!
//! Words are the monomial basis; an [`Element`] is a finite linear
//! combination of words with exact [`Scalar`] coefficients, always kept in
//! canonical form (no zero coefficients).

use std::cmp::Ordering;
use std::collections::btree_map::{self, BTreeMap, Entry};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LetterKind {
    Theta,
    Bar,
}

impl LetterKind {
    pub fn flip(self) -> Self {
        match self {
            LetterKind::Theta => LetterKind::Bar,
            LetterKind::Bar => LetterKind::Theta,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub kind: LetterKind,
    pub index: u32,
}

impl Letter {
    pub const fn theta(index: u32) -> Self {
        Letter {
            kind: LetterKind::Theta,
            index,
        }
    }

    pub const fn bar(index: u32) -> Self {
        Letter {
            kind: LetterKind::Bar,
            index,
        }
    }

    pub fn flip(self) -> Self {
        Letter {
            kind: self.kind.flip(),
            index: self.index,
        }
    }

    pub fn is_theta(self) -> bool {
        self.kind == LetterKind::Theta
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            LetterKind::Theta => write!(f, "t{}", self.index),
            LetterKind::Bar => write!(f, "b{}", self.index),
        }
    }
}

/// Result of [`Word::begins_with`]. The empty word begins with both kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BeginsWith {
    Theta,
    Bar,
    Both,
}

/// A finite multi-index `(i_1, …, i_r)` of generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// The reversed multi-index `i^T`.
    pub fn reversed(&self) -> Self {
        MultiIndex(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &MultiIndex) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        MultiIndex(v)
    }

    /// `(i, j)`: append a single index on the right.
    pub fn push(&self, j: u32) -> Self {
        let mut v = self.0.clone();
        v.push(j);
        MultiIndex(v)
    }

    /// The holomorphic word `θ_i`.
    pub fn theta_word(&self) -> Word {
        Word(self.0.iter().map(|&j| Letter::theta(j)).collect())
    }

    /// The word `θ̄_{i_1} ⋯ θ̄_{i_r}` (same order as the entries).
    pub fn bar_word(&self) -> Word {
        Word(self.0.iter().map(|&j| Letter::bar(j)).collect())
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl From<&[u32]> for MultiIndex {
    fn from(v: &[u32]) -> Self {
        MultiIndex(v.to_vec())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, j) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{j}")?;
        }
        write!(f, ")")
    }
}

/// A word in the alphabet `{θ_1, θ̄_1, …, θ_n, θ̄_n}`; the empty word is `1`.
///
/// Words are ordered graded-lexicographically: shorter words first, then
/// letter by letter with every `θ` before every `θ̄`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Word(letters.into_iter().collect())
    }

    pub fn thetas(indices: &[u32]) -> Self {
        Word(indices.iter().map(|&j| Letter::theta(j)).collect())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn begins_with(&self) -> BeginsWith {
        match self.0.first() {
            None => BeginsWith::Both,
            Some(l) if l.is_theta() => BeginsWith::Theta,
            Some(_) => BeginsWith::Bar,
        }
    }

    pub fn is_holomorphic(&self) -> bool {
        self.0.iter().all(|l| l.is_theta())
    }

    pub fn bar_count(&self) -> usize {
        self.0.iter().filter(|l| !l.is_theta()).count()
    }

    /// The multi-index of a holomorphic word, `None` if a `θ̄` occurs.
    pub fn holomorphic_index(&self) -> Option<MultiIndex> {
        self.0
            .iter()
            .map(|l| l.is_theta().then_some(l.index))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Reverse the letters and flip each letter's kind.
    pub fn star(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.flip()).collect())
    }

    /// The letter-kind involution σ: `θ_j ↔ θ̄_j`, order preserved.
    pub fn swap_alphabet(&self) -> Word {
        Word(self.0.iter().map(|l| l.flip()).collect())
    }

    pub fn decompose(&self) -> Result<Decomposition> {
        let (head, mid, tail) = split_runs(&self.0);
        let kind = head.first().ok_or(Error::DecomposeIdentity)?.kind;
        Ok(Decomposition {
            kind,
            head: MultiIndex(head.iter().map(|l| l.index).collect()),
            mid: MultiIndex(mid.iter().map(|l| l.index).collect()),
            tail: Word(tail.to_vec()),
        })
    }

    pub fn max_index(&self) -> u32 {
        self.0.iter().map(|l| l.index).max().unwrap_or(0)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Parses the compact word form `t1*t2*b2` (or `1` for the identity).
impl FromStr for Word {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Word::one());
        }
        s.split(|c: char| c == '*' || c.is_whitespace())
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                let (kind, rest) = match tok.as_bytes()[0] {
                    b't' => (LetterKind::Theta, &tok[1..]),
                    b'b' => (LetterKind::Bar, &tok[1..]),
                    _ => return Err(format!("bad letter `{tok}`")),
                };
                let index = rest
                    .parse::<u32>()
                    .map_err(|_| format!("bad letter `{tok}`"))?;
                Ok(Letter { kind, index })
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Word)
    }
}

/// Splits a nonempty letter slice into its leading same-kind run, the
/// following opposite-kind run, and the remainder. Empty input gives three
/// empty slices.
pub(crate) fn split_runs(letters: &[Letter]) -> (&[Letter], &[Letter], &[Letter]) {
    let Some(first) = letters.first() else {
        return (letters, letters, letters);
    };
    let kind = first.kind;
    let r = letters.iter().take_while(|l| l.kind == kind).count();
    let s = letters[r..].iter().take_while(|l| l.kind != kind).count();
    (&letters[..r], &letters[r..r + s], &letters[r + s..])
}

/// The unique representation `w = head-run · mid-run · tail` of a nonempty word.
///
/// `kind` is the letter kind of the head run; the mid run has the opposite
/// kind and `tail` is either `1` or begins with `kind` again.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub kind: LetterKind,
    pub head: MultiIndex,
    pub mid: MultiIndex,
    pub tail: Word,
}

impl Decomposition {
    pub fn reassemble(&self) -> Word {
        let head = self.head.0.iter().map(|&j| Letter {
            kind: self.kind,
            index: j,
        });
        let mid = self.mid.0.iter().map(|&j| Letter {
            kind: self.kind.flip(),
            index: j,
        });
        Word(head.chain(mid).chain(self.tail.0.iter().copied()).collect())
    }
}

/// Ambient context fixing the generator count `n`; validates letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Algebra {
    n: u32,
}

impl Algebra {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoGenerators);
        }
        Ok(Algebra { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn letter(&self, kind: LetterKind, index: u32) -> Result<Letter> {
        if index == 0 || index > self.n {
            return Err(Error::IndexOutOfRange { index, n: self.n });
        }
        Ok(Letter { kind, index })
    }

    pub fn theta(&self, index: u32) -> Result<Letter> {
        self.letter(LetterKind::Theta, index)
    }

    pub fn bar(&self, index: u32) -> Result<Letter> {
        self.letter(LetterKind::Bar, index)
    }

    pub fn check_index(&self, index: u32) -> Result<()> {
        self.theta(index).map(|_| ())
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        w.0.iter().try_for_each(|l| self.check_index(l.index))
    }

    pub fn check_element(&self, a: &Element) -> Result<()> {
        a.words().try_for_each(|w| self.check_word(w))
    }

    /// All multi-indices of length `≤ max_len`, graded-lex order.
    pub fn multi_indices(&self, max_len: usize) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::empty()];
        let mut layer = vec![MultiIndex::empty()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|m| (1..=self.n).map(move |j| m.push(j)))
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    /// All words of length `≤ max_len` in the full `2n`-letter alphabet.
    pub fn words(&self, max_len: usize) -> Vec<Word> {
        let alphabet: Vec<Letter> = (1..=self.n)
            .map(Letter::theta)
            .chain((1..=self.n).map(Letter::bar))
            .collect();
        let mut out = vec![Word::one()];
        let mut layer = vec![Word::one()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w| {
                    alphabet.iter().map(move |&l| {
                        let mut v = w.0.clone();
                        v.push(l);
                        Word(v)
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    /// All holomorphic words `θ_i` with `|i| ≤ max_len`.
    pub fn holomorphic_words(&self, max_len: usize) -> Vec<Word> {
        self.multi_indices(max_len)
            .iter()
            .map(MultiIndex::theta_word)
            .collect()
    }
}

/// A finite linear combination of words, stored without zero terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::from_word(Word::one())
    }

    pub fn from_word(w: Word) -> Self {
        Element::monomial(Scalar::one(), w)
    }

    pub fn scalar(c: Scalar) -> Self {
        Element::monomial(c, Word::one())
    }

    pub fn monomial(c: Scalar, w: Word) -> Self {
        let mut a = Element::zero();
        a.add_term(w, c);
        a
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut a = Element::zero();
        for (w, c) in terms {
            a.add_term(w, c);
        }
        a
    }

    /// Adds `c·w`, dropping the entry if the coefficient cancels.
    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> btree_map::Iter<'_, Word, Scalar> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// `Some(w)` when the element is exactly the word `w` with coefficient 1.
    pub fn as_word(&self) -> Option<&Word> {
        match self.terms.iter().next() {
            Some((w, c)) if self.terms.len() == 1 && c.is_one() => Some(w),
            _ => None,
        }
    }

    /// True when every word is all-`θ`, i.e. the element lies in 𝒫.
    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(Word::is_holomorphic)
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element::from_terms(self.terms.iter().map(|(w, a)| (w.clone(), a * c)))
    }

    /// Anti-linear, anti-multiplicative involution.
    pub fn star(&self) -> Element {
        Element::from_terms(self.terms.iter().map(|(w, c)| (w.star(), c.conj())))
    }

    pub fn swap_alphabet(&self) -> Element {
        Element::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (w.swap_alphabet(), c.clone())),
        )
    }

    pub fn pow(&self, e: u32) -> Element {
        (0..e).fold(Element::one(), |acc, _| &acc * self)
    }

    pub fn max_index(&self) -> u32 {
        self.terms.keys().map(Word::max_index).max().unwrap_or(0)
    }
}

impl From<Word> for Element {
    fn from(w: Word) -> Self {
        Element::from_word(w)
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

/// Bilinear extension of word concatenation.
impl Mul<&Element> for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        let mut out = Element::zero();
        for (u, a) in self.terms() {
            for (v, b) in rhs.terms() {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, rhs: Element) -> Element {
        &self * &rhs
    }
}

/// Expression syntax, e.g. `t1*b2 + 1/2i*t2*t2 - 3`; the zero element is `0`.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let negative_real = c.is_real() && c.re < num_traits::zero();
            let negative_imag = c.re.is_zero() && c.im < num_traits::zero();
            let (sep, coef) = if k > 0 && (negative_real || negative_imag) {
                (" - ", -c)
            } else {
                (if k > 0 { " + " } else { "" }, c.clone())
            };
            write!(f, "{sep}")?;
            match (coef.is_one(), w.is_one()) {
                (_, true) => write!(f, "{coef}")?,
                (true, false) => write!(f, "{w}")?,
                (false, false) => write!(f, "{coef}*{w}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn begins_with_cases() {
        assert_eq!(Word::one().begins_with(), BeginsWith::Both);
        assert_eq!(w("t1 b2").begins_with(), BeginsWith::Theta);
        assert_eq!(w("b2 t1").begins_with(), BeginsWith::Bar);
    }

    #[test]
    fn decompose_examples() {
        let d = w("t1 t2 b2 t1 b1").decompose().unwrap();
        assert_eq!(d.kind, LetterKind::Theta);
        assert_eq!(d.head, MultiIndex(vec![1, 2]));
        assert_eq!(d.mid, MultiIndex(vec![2]));
        assert_eq!(d.tail, w("t1 b1"));
        assert_eq!(d.reassemble(), w("t1 t2 b2 t1 b1"));

        let d = w("t1 t2").decompose().unwrap();
        assert_eq!(
            (d.head.0, d.mid.0, d.tail),
            (vec![1, 2], vec![], Word::one())
        );

        let d = w("b1 t1 b2").decompose().unwrap();
        assert_eq!(d.kind, LetterKind::Bar);
        assert_eq!((d.head.0, d.mid.0, d.tail), (vec![1], vec![1], w("b2")));

        assert_eq!(Word::one().decompose(), Err(Error::DecomposeIdentity));
    }

    #[test]
    fn star_examples() {
        assert_eq!(w("t1 t2").star(), w("b2 b1"));
        assert_eq!(w("t1 b2").star(), w("t2 b1"));
        let a = Element::scalar(Scalar::from_ints(2, 1));
        assert_eq!(a.star(), Element::scalar(Scalar::from_ints(2, -1)));
    }

    #[test]
    fn multiply_examples() {
        let t1 = Element::from(w("t1"));
        let t2 = Element::from(w("t2"));
        let b1 = Element::from(w("b1"));
        assert_eq!(&t1 * &t2, Element::from(w("t1 t2")));
        assert_eq!(
            &(&t1 + &t2) * &b1,
            &Element::from(w("t1 b1")) + &Element::from(w("t2 b1"))
        );
        assert_eq!(&t1 * &Element::one(), t1);
    }

    #[test]
    fn swap_alphabet_examples() {
        assert_eq!(w("t1 b2").swap_alphabet(), w("b1 t2"));
        assert_eq!(Word::one().swap_alphabet(), Word::one());
        assert_eq!(w("b3 b3").swap_alphabet(), w("t3 t3"));
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let t1 = Element::from(w("t1"));
        assert!((&t1 - &t1).is_zero());
        assert_eq!(&t1 - &t1, Element::zero());
        assert!(Element::monomial(Scalar::zero(), w("t1")).is_zero());
    }

    #[test]
    fn algebra_validates_indices() {
        let alg = Algebra::new(2).unwrap();
        assert!(alg.theta(2).is_ok());
        assert_eq!(alg.theta(3), Err(Error::IndexOutOfRange { index: 3, n: 2 }));
        assert!(alg.bar(0).is_err());
        assert!(Algebra::new(0).is_err());
        assert!(alg.check_word(&w("t1 b3")).is_err());
    }

    #[test]
    fn enumeration_sizes() {
        let alg = Algebra::new(2).unwrap();
        assert_eq!(alg.multi_indices(3).len(), 1 + 2 + 4 + 8);
        assert_eq!(alg.words(2).len(), 1 + 4 + 16);
        let words = alg.words(3);
        assert!(words.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn display() {
        let a = Element::from_terms([
            (w("t1 b2"), Scalar::one()),
            (w("t2"), Scalar::from_ints(-3, 0)),
            (Word::one(), Scalar::from_ints(0, -1)),
        ]);
        assert_eq!(a.to_string(), "-i - 3*t2 + t1*b2");
        assert_eq!(Element::zero().to_string(), "0");
    }
}
