//! Seeded random words and elements for the property checkers.

use rand::Rng;

use crate::freealg::{Element, Letter, LetterKind, Word};
use crate::scalar::{Rational, Scalar};

/// Small Gaussian-rational coefficient set.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    const PARTS: [(i64, i64); 7] = [(0, 1), (1, 1), (-1, 1), (1, 2), (-3, 2), (2, 1), (2, 3)];
    let pick = |rng: &mut R| {
        let (n, d) = PARTS[rng.random_range(0..PARTS.len())];
        Rational::new(n.into(), d.into())
    };
    loop {
        let s = Scalar::new(pick(rng), pick(rng));
        if !num_traits::Zero::is_zero(&s) {
            return s;
        }
    }
}

/// Uniform length in `0..=max_len`, letters uniform over the `2n`-letter
/// alphabet, or over `θ_1..θ_n` only when `holomorphic` is set.
pub fn random_word<R: Rng + ?Sized>(
    rng: &mut R,
    n: u32,
    max_len: usize,
    holomorphic: bool,
) -> Word {
    let len = rng.random_range(0..=max_len);
    Word::from_letters((0..len).map(|_| {
        let kind = if holomorphic || rng.random_bool(0.5) {
            LetterKind::Theta
        } else {
            LetterKind::Bar
        };
        Letter {
            kind,
            index: rng.random_range(1..=n),
        }
    }))
}

/// A random linear combination of at most `max_terms` words.
pub fn random_element<R: Rng + ?Sized>(
    rng: &mut R,
    n: u32,
    max_terms: usize,
    max_len: usize,
    holomorphic: bool,
) -> Element {
    let terms = rng.random_range(1..=max_terms.max(1));
    Element::from_terms((0..terms).map(|_| {
        (
            random_word(rng, n, max_len, holomorphic),
            random_scalar(rng),
        )
    }))
}

/// A random element of `𝒫 ∪ 𝒫*`: a holomorphic element or the star of one.
pub fn random_holomorphic_or_star<R: Rng + ?Sized>(
    rng: &mut R,
    n: u32,
    max_terms: usize,
    max_len: usize,
) -> Element {
    let p = random_element(rng, n, max_terms, max_len, true);
    if rng.random_bool(0.5) {
        p.star()
    } else {
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            assert_eq!(
                random_element(&mut a, 3, 4, 6, false),
                random_element(&mut b, 3, 4, 6, false)
            );
        }
    }

    #[test]
    fn holomorphic_samples_stay_holomorphic() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            assert!(random_element(&mut rng, 2, 4, 6, true).is_holomorphic());
            let w = random_word(&mut rng, 2, 5, false);
            assert!(w.len() <= 5 && w.max_index() <= 2);
        }
    }
}
