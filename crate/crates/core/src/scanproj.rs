//! Word-scanning projections onto holomorphic words.
//!
//! A scan walks the word left to right. Each `θ̄_j` it meets is deleted
//! together with one earlier surviving `θ_j` picked by a [`PairingRule`];
//! if the rule declines (or no `θ_j` is available) the result is zero.
//! No weight factors are applied.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::freealg::Word;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PairingStrategy {
    /// Pair with the rightmost `θ_j` to the left.
    LeftRightRightmost,
    /// With probability `p` pair with a uniformly chosen eligible `θ_j`,
    /// otherwise return zero.
    Stochastic { p: f64 },
}

/// Chooses which earlier `θ_j` (by original position) to delete along with
/// the `θ̄_j` at `bar`. `eligible` lists surviving candidates in
/// left-to-right order. `None` sends the whole word to zero.
pub trait PairingRule {
    fn choose(&mut self, bar: usize, eligible: &[usize]) -> Option<usize>;
}

pub struct Rightmost;

impl PairingRule for Rightmost {
    fn choose(&mut self, _bar: usize, eligible: &[usize]) -> Option<usize> {
        eligible.last().copied()
    }
}

pub struct BernoulliPairing<R> {
    p: f64,
    rng: R,
}

impl<R: Rng> BernoulliPairing<R> {
    pub fn new(p: f64, rng: R) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidProbability(p.to_string()));
        }
        Ok(BernoulliPairing { p, rng })
    }
}

impl<R: Rng> PairingRule for BernoulliPairing<R> {
    fn choose(&mut self, _bar: usize, eligible: &[usize]) -> Option<usize> {
        if eligible.is_empty() || !self.rng.random_bool(self.p) {
            return None;
        }
        Some(eligible[self.rng.random_range(0..eligible.len())])
    }
}

/// One pairing step: the `θ̄` at `bar` and its partner, both as positions
/// in the input word. `theta: None` marks the step that produced zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Elimination {
    pub bar: usize,
    pub theta: Option<usize>,
}

impl fmt::Display for Elimination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.theta {
            Some(t) => write!(f, "bar@{} theta@{}", self.bar, t),
            None => write!(f, "bar@{} theta@none", self.bar),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanOutcome {
    /// `None` is the zero outcome.
    pub result: Option<Word>,
    pub eliminations: Vec<Elimination>,
}

impl ScanOutcome {
    pub fn is_zero(&self) -> bool {
        self.result.is_none()
    }

    /// Re-applies the recorded eliminations to `input`.
    pub fn replay(&self, input: &Word) -> Option<Word> {
        let mut alive = vec![true; input.len()];
        for e in &self.eliminations {
            alive[e.bar] = false;
            alive[e.theta?] = false;
        }
        let letters = input
            .letters()
            .iter()
            .zip(&alive)
            .filter(|(_, a)| **a)
            .map(|(l, _)| *l);
        let out = Word::from_letters(letters);
        out.is_holomorphic().then_some(out)
    }

    /// One elimination per line, `bar@<pos> theta@<pos|none>`.
    pub fn trace(&self) -> String {
        self.eliminations.iter().map(|e| format!("{e}\n")).collect()
    }
}

impl fmt::Display for ScanOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.result {
            Some(w) => write!(f, "{w}"),
            None => write!(f, "0"),
        }
    }
}

/// Runs a scan with an arbitrary pairing rule.
pub fn scan_with<P: PairingRule + ?Sized>(w: &Word, rule: &mut P) -> ScanOutcome {
    let letters = w.letters();
    let mut alive = vec![true; letters.len()];
    let mut eliminations = Vec::new();
    for (pos, letter) in letters.iter().enumerate() {
        if letter.is_theta() {
            continue;
        }
        let eligible: Vec<usize> = (0..pos)
            .filter(|&q| alive[q] && letters[q].is_theta() && letters[q].index == letter.index)
            .collect();
        let theta = rule.choose(pos, &eligible);
        eliminations.push(Elimination { bar: pos, theta });
        match theta {
            Some(q) => {
                debug_assert!(eligible.contains(&q));
                alive[q] = false;
                alive[pos] = false;
            }
            None => {
                return ScanOutcome {
                    result: None,
                    eliminations,
                }
            }
        }
    }
    let survivors = letters
        .iter()
        .zip(&alive)
        .filter(|(_, a)| **a)
        .map(|(l, _)| *l);
    ScanOutcome {
        result: Some(Word::from_letters(survivors)),
        eliminations,
    }
}

pub fn scan_project(w: &Word, strategy: PairingStrategy, seed: Option<u64>) -> Result<ScanOutcome> {
    match strategy {
        PairingStrategy::LeftRightRightmost => Ok(scan_with(w, &mut Rightmost)),
        PairingStrategy::Stochastic { p } => {
            let seed = seed.ok_or(Error::MissingSeed)?;
            let mut rule = BernoulliPairing::new(p, ChaCha8Rng::seed_from_u64(seed))?;
            Ok(scan_with(w, &mut rule))
        }
    }
}

/// Scan of `φ g`: the word-level analogue of `T_g φ`.
pub fn random_toeplitz_apply(
    g: &Word,
    phi: &Word,
    strategy: PairingStrategy,
    seed: Option<u64>,
) -> Result<ScanOutcome> {
    if !phi.is_holomorphic() {
        return Err(Error::NotHolomorphic);
    }
    scan_project(&phi.concat(g), strategy, seed)
}

/// Empirical law of a stochastic scan outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeDistribution {
    pub trials: usize,
    pub words: BTreeMap<Word, f64>,
    pub zero: f64,
}

impl OutcomeDistribution {
    pub fn frequency(&self, w: &Word) -> f64 {
        self.words.get(w).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.zero + self.words.values().sum::<f64>()
    }
}

/// Runs `trials` independent scans of `φ g`, trial `t` seeded with
/// `seed + t`, so the result does not depend on thread scheduling.
pub fn monte_carlo_mean(
    g: &Word,
    phi: &Word,
    p: f64,
    trials: usize,
    seed: u64,
) -> Result<OutcomeDistribution> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let strategy = PairingStrategy::Stochastic { p };
    // validate once up front so the parallel loop cannot fail halfway
    random_toeplitz_apply(g, phi, strategy, Some(seed))?;
    let counts = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let outcome = random_toeplitz_apply(g, phi, strategy, Some(seed.wrapping_add(t)))
                .expect("inputs validated above");
            outcome.result
        })
        .fold(
            BTreeMap::new,
            |mut acc: BTreeMap<Option<Word>, usize>, r| {
                *acc.entry(r).or_default() += 1;
                acc
            },
        )
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    let mut dist = OutcomeDistribution {
        trials,
        words: BTreeMap::new(),
        zero: 0.0,
    };
    for (k, v) in counts {
        let f = v as f64 / trials as f64;
        match k {
            Some(w) => {
                dist.words.insert(w, f);
            }
            None => dist.zero = f,
        }
    }
    Ok(dist)
}
