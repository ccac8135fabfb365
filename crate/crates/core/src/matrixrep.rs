//! Dense matrices of Toeplitz operators on the truncation of 𝒫 to words
//! of length `≤ L`, in the orthonormal basis `φ_i = w(i)^{-1/2} θ_i`.
//!
//! Basis order is graded-lex: by length, then lexicographically.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::{form, WeightSystem};
use crate::freealg::{Algebra, Element, MultiIndex};
use crate::toeplitz::apply;

#[derive(Clone, Debug)]
pub struct TruncatedSpace {
    n: u32,
    max_len: usize,
    basis: Vec<MultiIndex>,
    position: HashMap<MultiIndex, usize>,
}

impl TruncatedSpace {
    pub fn new(n: u32, max_len: usize) -> Result<Self> {
        let basis = Algebra::new(n)?.multi_indices(max_len);
        let position = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, i)| (i, k))
            .collect();
        Ok(TruncatedSpace {
            n,
            max_len,
            basis,
            position,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// `Σ_{d=0..L} n^d`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MultiIndex] {
        &self.basis
    }

    pub fn position(&self, i: &MultiIndex) -> Option<usize> {
        self.position.get(i).copied()
    }
}

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl OperatorMatrix {
    pub fn zeros(dim: usize) -> Self {
        OperatorMatrix {
            dim,
            entries: vec![Complex64::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = OperatorMatrix::zeros(dim);
        for k in 0..dim {
            m.set(k, k, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: Complex64) {
        self.entries[row * self.dim + col] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn conj_transpose(&self) -> Self {
        let mut out = OperatorMatrix::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(OperatorMatrix {
            dim: self.dim,
            entries,
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut out = OperatorMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    out.entries[r * n + c] += a * other.get(k, c);
                }
            }
        }
        Ok(out)
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, z)| !z.is_zero())
            .map(move |(k, z)| (k / self.dim, k % self.dim, *z))
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    /// `row,col,re,im` header followed by one line per nonzero entry.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row,col,re,im\n");
        for (r, c, z) in self.nonzeros() {
            let _ = writeln!(out, "{r},{c},{},{}", z.re, z.im);
        }
        out
    }

    pub fn to_json(&self, space: &TruncatedSpace, symbol: &Element) -> String {
        #[derive(Serialize)]
        struct Export<'a> {
            n: u32,
            #[serde(rename = "L")]
            max_len: usize,
            order: &'a str,
            symbol: String,
            entries: Vec<(usize, usize, f64, f64)>,
        }
        let export = Export {
            n: space.n(),
            max_len: space.max_len(),
            order: "graded-lex",
            symbol: symbol.to_string(),
            entries: self
                .nonzeros()
                .map(|(r, c, z)| (r, c, z.re, z.im))
                .collect(),
        };
        serde_json::to_string(&export).expect("matrix export is always serializable")
    }
}

/// `entries[i][k] = ⟨θ_i, T_g θ_k⟩ / sqrt(w(i) w(k))`, exact until the last step.
pub fn matrix_of(ws: &WeightSystem, g: &Element, space: &TruncatedSpace) -> Result<OperatorMatrix> {
    let dim = space.dim();
    let columns = space
        .basis()
        .par_iter()
        .map(|k| {
            let image = apply(ws, g, &k.theta_word().into())?;
            let wk = ws.weight(k)?;
            let mut column = Vec::new();
            for word in image.words() {
                let i = word.holomorphic_index().ok_or(Error::NotHolomorphic)?;
                let Some(row) = space.position(&i) else {
                    continue;
                };
                let value = form(ws, &Element::from(word.clone()), &image)?;
                let norm = (ws.weight(&i)? * &wk).to_f64().unwrap_or(f64::NAN).sqrt();
                column.push((row, value.to_complex64() / norm));
            }
            Ok(column)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut m = OperatorMatrix::zeros(dim);
    for (col, entries) in columns.into_iter().enumerate() {
        for (row, v) in entries {
            m.set(row, col, v);
        }
    }
    Ok(m)
}

/// Largest entry of `M(g) − M(g*)^†`.
pub fn adjoint_defect(ws: &WeightSystem, g: &Element, space: &TruncatedSpace) -> Result<f64> {
    let m = matrix_of(ws, g, space)?;
    let m_star = matrix_of(ws, &g.star(), space)?;
    Ok(m.sub(&m_star.conj_transpose())?.max_abs())
}

/// `m1 m2 − m2 m1`.
pub fn commutator_matrix(m1: &OperatorMatrix, m2: &OperatorMatrix) -> Result<OperatorMatrix> {
    m1.matmul(m2)?.sub(&m2.matmul(m1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Word;

    fn e(s: &str) -> Element {
        Element::from(s.parse::<Word>().unwrap())
    }

    #[test]
    fn dimensions() {
        assert_eq!(TruncatedSpace::new(2, 4).unwrap().dim(), 31);
        assert_eq!(TruncatedSpace::new(3, 2).unwrap().dim(), 13);
        assert_eq!(TruncatedSpace::new(1, 0).unwrap().dim(), 1);
    }

    #[test]
    fn creation_matrix() {
        let space = TruncatedSpace::new(2, 1).unwrap();
        let m = matrix_of(&WeightSystem::unit(2), &e("t1"), &space).unwrap();
        let nz: Vec<_> = m.nonzeros().collect();
        assert_eq!(nz, vec![(1, 0, Complex64::new(1.0, 0.0))]);
        assert_eq!(space.basis()[1], MultiIndex(vec![1]));
    }

    #[test]
    fn identity_symbol() {
        let space = TruncatedSpace::new(2, 3).unwrap();
        let m = matrix_of(
            &WeightSystem::product_from_ints(&[2, 3]).unwrap(),
            &Element::one(),
            &space,
        )
        .unwrap();
        assert_eq!(m, OperatorMatrix::identity(space.dim()));
    }

    #[test]
    fn shift_down() {
        let space = TruncatedSpace::new(1, 2).unwrap();
        let m = matrix_of(&WeightSystem::unit(1), &e("b1"), &space).unwrap();
        let nz: Vec<_> = m.nonzeros().map(|(r, c, z)| (r, c, z.re)).collect();
        assert_eq!(nz, vec![(0, 1, 1.0), (1, 2, 1.0)]);
    }

    #[test]
    fn weighted_ladder_entries() {
        // ⟨φ_∅, A_1 φ_(1)⟩ = sqrt(w(1)/w(∅)) = sqrt(2)
        let space = TruncatedSpace::new(2, 1).unwrap();
        let m = matrix_of(
            &WeightSystem::product_from_ints(&[2, 3]).unwrap(),
            &e("b1"),
            &space,
        )
        .unwrap();
        assert!((m.get(0, 1).re - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn defects() {
        let unit = WeightSystem::unit(2);
        let space = TruncatedSpace::new(2, 4).unwrap();
        assert!(adjoint_defect(&unit, &e("t2"), &space).unwrap() <= 1e-12);
        assert!(adjoint_defect(&unit, &e("t1 t2 t1"), &space).unwrap() <= 1e-12);
        let space3 = TruncatedSpace::new(2, 3).unwrap();
        assert!(adjoint_defect(&unit, &e("b2 t1 b1"), &space3).unwrap() >= 1.0 - 1e-9);
    }

    #[test]
    fn commutators() {
        let unit = WeightSystem::unit(2);
        let space = TruncatedSpace::new(2, 3).unwrap();
        let a1 = matrix_of(&unit, &e("t1"), &space).unwrap();
        let a2 = matrix_of(&unit, &e("t2"), &space).unwrap();
        assert!(commutator_matrix(&a1, &a2).unwrap().max_abs() > 0.5);
        assert_eq!(commutator_matrix(&a1, &a1).unwrap().max_abs(), 0.0);
        let small = OperatorMatrix::zeros(2);
        assert_eq!(
            commutator_matrix(&a1, &small),
            Err(Error::DimensionMismatch(15, 2))
        );
    }

    #[test]
    fn number_commutator_at_unit_weights() {
        let unit = WeightSystem::unit(1);
        let space = TruncatedSpace::new(1, 4).unwrap();
        let a = matrix_of(&unit, &e("b1"), &space).unwrap();
        let a_dag = matrix_of(&unit, &e("t1"), &space).unwrap();
        let c = commutator_matrix(&a, &a_dag).unwrap();
        let diag: Vec<f64> = (0..5).map(|k| c.get(k, k).re).collect();
        // vacuum row, zero interior, truncation artifact in the top row
        assert_eq!(diag, vec![1.0, 0.0, 0.0, 0.0, -1.0]);
        assert_eq!(c.nonzeros().count(), 2);
    }

    #[test]
    fn exports() {
        let space = TruncatedSpace::new(2, 1).unwrap();
        let g = e("t1");
        let m = matrix_of(&WeightSystem::unit(2), &g, &space).unwrap();
        assert_eq!(m.to_csv(), "row,col,re,im\n1,0,1,0\n");
        let json: serde_json::Value = serde_json::from_str(&m.to_json(&space, &g)).unwrap();
        assert_eq!(json["n"], 2);
        assert_eq!(json["L"], 1);
        assert_eq!(json["order"], "graded-lex");
        assert_eq!(json["symbol"], "t1");
        assert_eq!(json["entries"], serde_json::json!([[1, 0, 1.0, 0.0]]));
    }
}
