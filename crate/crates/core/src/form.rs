//! Weight systems and the recursive sesquilinear form on words.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::freealg::{split_runs, Element, Letter, MultiIndex, Word};
use crate::scalar::{parse_rational, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightMode {
    /// `w(i_1, …, i_r) = μ_{i_1} ⋯ μ_{i_r}`.
    Product(Vec<Rational>),
    /// Explicit table; every queried multi-index must be present.
    Custom(HashMap<MultiIndex, Rational>),
}

/// Positive weights `w(i)` on multi-indices, with `w(∅) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    n: u32,
    mode: WeightMode,
}

impl WeightSystem {
    /// All `μ_j = 1`.
    pub fn unit(n: u32) -> Self {
        WeightSystem {
            n,
            mode: WeightMode::Product(vec![Rational::one(); n as usize]),
        }
    }

    pub fn product(mu: Vec<Rational>) -> Result<Self> {
        if mu.is_empty() {
            return Err(Error::NoGenerators);
        }
        if let Some(bad) = mu.iter().find(|m| !m.is_positive()) {
            return Err(Error::NonPositiveWeight(bad.to_string()));
        }
        Ok(WeightSystem {
            n: mu.len() as u32,
            mode: WeightMode::Product(mu),
        })
    }

    pub fn product_from_ints(mu: &[i64]) -> Result<Self> {
        WeightSystem::product(
            mu.iter()
                .map(|&m| Rational::from_integer(m.into()))
                .collect(),
        )
    }

    pub fn custom(n: u32, table: HashMap<MultiIndex, Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoGenerators);
        }
        for (i, w) in &table {
            if !w.is_positive() {
                return Err(Error::NonPositiveWeight(w.to_string()));
            }
            if i.is_empty() && !w.is_one() {
                return Err(Error::InvalidWeightConfig("w(∅) must be 1".into()));
            }
        }
        Ok(WeightSystem {
            n,
            mode: WeightMode::Custom(table),
        })
    }

    /// Reads the text format `mu = r1, r2, ..., rn` (blank lines and `#`
    /// comments ignored).
    pub fn parse_config(text: &str) -> Result<Self> {
        let mut mu = None;
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidWeightConfig(format!("expected `key = value`, got `{line}`"))
            })?;
            match key.trim() {
                "mu" => mu = Some(parse_mu_list(value)?),
                other => return Err(Error::InvalidWeightConfig(format!("unknown key `{other}`"))),
            }
        }
        let mu = mu.ok_or_else(|| Error::InvalidWeightConfig("missing `mu`".into()))?;
        WeightSystem::product(mu)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mode(&self) -> &WeightMode {
        &self.mode
    }

    pub fn is_product(&self) -> bool {
        matches!(self.mode, WeightMode::Product(_))
    }

    pub fn weight(&self, i: &MultiIndex) -> Result<Rational> {
        self.weight_of(i.entries())
    }

    pub fn weight_of(&self, i: &[u32]) -> Result<Rational> {
        if i.is_empty() {
            return Ok(Rational::one());
        }
        if let Some(&bad) = i.iter().find(|&&j| j == 0 || j > self.n) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                n: self.n,
            });
        }
        match &self.mode {
            WeightMode::Product(mu) => Ok(i
                .iter()
                .fold(Rational::one(), |acc, &j| acc * &mu[j as usize - 1])),
            WeightMode::Custom(table) => table
                .get(&MultiIndex::from(i))
                .cloned()
                .ok_or_else(|| Error::WeightUndefined(MultiIndex::from(i))),
        }
    }
}

/// Comma-separated positive rationals, as used by `--mu` and the config file.
pub fn parse_mu_list(text: &str) -> Result<Vec<Rational>> {
    let mu = text
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>>>()?;
    if let Some(bad) = mu.iter().find(|m| !m.is_positive()) {
        return Err(Error::NonPositiveWeight(bad.to_string()));
    }
    Ok(mu)
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mode {
            WeightMode::Product(mu) => {
                write!(f, "mu = ")?;
                for (k, m) in mu.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{m}")?;
                }
                Ok(())
            }
            WeightMode::Custom(t) => write!(f, "custom weights ({} entries)", t.len()),
        }
    }
}

/// Walks the recursion for `⟨f, g⟩` on words. Returns the weight
/// multi-indices whose product is the value, or `None` when the value is 0,
/// together with the number of recursive reductions performed.
fn pair_words<'a>(mut f: &'a [Letter], mut g: &'a [Letter]) -> (Option<Vec<Vec<u32>>>, usize) {
    let mut factors = Vec::new();
    let mut steps = 0;
    loop {
        match (f.is_empty(), g.is_empty()) {
            (true, true) => return (Some(factors), steps),
            (false, true) | (true, false) => {
                // ⟨h, 1⟩ = ⟨1, h⟩ = w(i) δ_{r,s} δ_{i, j^T} ⟨h', 1⟩
                let h = if f.is_empty() { g } else { f };
                let (head, mid, tail) = split_runs(h);
                if head.len() != mid.len()
                    || !head
                        .iter()
                        .zip(mid.iter().rev())
                        .all(|(a, b)| a.index == b.index)
                {
                    return (None, steps);
                }
                factors.push(head.iter().map(|l| l.index).collect());
                steps += 1;
                if f.is_empty() {
                    g = tail;
                } else {
                    f = tail;
                }
            }
            (false, false) => {
                if f[0].kind != g[0].kind {
                    return (None, steps);
                }
                // w(i, l^T) δ_{r+u, s+t} δ_{(i, l^T), (k, j^T)} ⟨f', g'⟩
                let (i, j, f_tail) = split_runs(f);
                let (k, l, g_tail) = split_runs(g);
                let lhs = i.iter().chain(l.iter().rev());
                let rhs = k.iter().chain(j.iter().rev());
                if i.len() + l.len() != k.len() + j.len()
                    || !lhs.clone().zip(rhs).all(|(a, b)| a.index == b.index)
                {
                    return (None, steps);
                }
                factors.push(lhs.map(|x| x.index).collect());
                steps += 1;
                f = f_tail;
                g = g_tail;
            }
        }
    }
}

/// `⟨f, g⟩` on words. Always real.
pub fn form_words_real(ws: &WeightSystem, f: &Word, g: &Word) -> Result<Rational> {
    match pair_words(f.letters(), g.letters()).0 {
        None => Ok(Rational::zero()),
        Some(factors) => factors
            .iter()
            .try_fold(Rational::one(), |acc, i| Ok(acc * ws.weight_of(i)?)),
    }
}

pub fn form_words(ws: &WeightSystem, f: &Word, g: &Word) -> Result<Scalar> {
    form_words_real(ws, f, g).map(Scalar::real)
}

/// Number of recursive reductions used to evaluate `⟨f, g⟩`.
pub fn form_recursion_depth(f: &Word, g: &Word) -> usize {
    pair_words(f.letters(), g.letters()).1
}

/// Sesquilinear extension: anti-linear in `a`, linear in `b`.
pub fn form(ws: &WeightSystem, a: &Element, b: &Element) -> Result<Scalar> {
    let mut total = Scalar::zero();
    for (u, x) in a.terms() {
        for (v, y) in b.terms() {
            let w = form_words_real(ws, u, v)?;
            if !w.is_zero() {
                total += &(&x.conj() * y).scale(&w);
            }
        }
    }
    Ok(total)
}

/// The basis vector `φ_i = w(i)^{-1/2} θ_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalizedBasisWord {
    /// `1/w(i)` has an exact rational square root.
    Exact(Element),
    /// `θ_i` and `w(i)`; normalize in floating point.
    Deferred { word: Word, weight: Rational },
}

impl NormalizedBasisWord {
    pub fn weight_f64(&self) -> Option<f64> {
        match self {
            NormalizedBasisWord::Exact(_) => None,
            NormalizedBasisWord::Deferred { weight, .. } => num_traits::ToPrimitive::to_f64(weight),
        }
    }
}

pub fn normalized_basis_word(ws: &WeightSystem, i: &MultiIndex) -> Result<NormalizedBasisWord> {
    let w = ws.weight(i)?;
    let word = i.theta_word();
    Ok(match rational_sqrt(&w) {
        Some(root) => {
            NormalizedBasisWord::Exact(Element::monomial(Scalar::real(root.recip()), word))
        }
        None => NormalizedBasisWord::Deferred { word, weight: w },
    })
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    fn isqrt(n: &BigInt) -> Option<BigInt> {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    }
    if r.is_negative() {
        return None;
    }
    Some(Rational::new(isqrt(r.numer())?, isqrt(r.denom())?))
}
