//! Explicit finite-dimensional modules given by Chevalley generator matrices on a weight basis.

mod build;
pub mod bundle;
pub mod characters;
mod functors;
mod sigma;

pub use build::{build_irreducible, build_irreducible_with_cap, dimension_cap, DEFAULT_DIM_CAP};
pub use characters::{freudenthal, freudenthal_character, weyl_character, CharacterTable};
pub use functors::{direct_sum, dual, equivariant_maps, exterior_power, tensor, trivial, twist};
pub use sigma::{
    intertwiner, r_v, sigma_module, sigma_structure, twisted_character, with_sigma, zeta, zeta_all,
};

use crate::error::{Error, Result};
use crate::linalg::{Q, SparseMatrix};
use crate::rootdata::{RootDatum, Weight};
use crate::twist::PinnedAutomorphism;
use num::Zero;
use std::collections::BTreeMap;

/// A module with a weight basis and sparse matrices for `e_i`, `f_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    rank: usize,
    weights: Vec<Weight>,
    e: Vec<SparseMatrix>,
    f: Vec<SparseMatrix>,
    highest: Option<Weight>,
    /// For an irreducible module: basis vector `b` equals `f_{w[0]} ... f_{w[k-1]} v_top`.
    words: Option<Vec<Vec<usize>>>,
    sigma_map: Option<SparseMatrix>,
    blocks: BTreeMap<Weight, Vec<usize>>,
}

impl Module {
    pub fn from_parts(
        rank: usize,
        weights: Vec<Weight>,
        e: Vec<SparseMatrix>,
        f: Vec<SparseMatrix>,
        highest: Option<Weight>,
        words: Option<Vec<Vec<usize>>>,
        sigma_map: Option<SparseMatrix>,
    ) -> Result<Self> {
        let dim = weights.len();
        if e.len() != rank || f.len() != rank {
            return Err(Error::input("need one e and one f matrix per simple root"));
        }
        let square = |m: &SparseMatrix| m.nrows() == dim && m.ncols() == dim;
        if !e.iter().chain(&f).all(square) || sigma_map.as_ref().is_some_and(|s| !square(s)) {
            return Err(Error::input("generator matrix has the wrong size"));
        }
        if weights.iter().any(|w| w.rank() != rank) {
            return Err(Error::input("basis weight of the wrong rank"));
        }
        if words.as_ref().is_some_and(|w| w.len() != dim) {
            return Err(Error::input("need one word per basis vector"));
        }
        let mut blocks: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (b, w) in weights.iter().enumerate() {
            blocks.entry(w.clone()).or_default().push(b);
        }
        Ok(Module { rank, weights, e, f, highest, words, sigma_map, blocks })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight(&self, b: usize) -> &Weight {
        &self.weights[b]
    }

    pub fn e(&self, i: usize) -> &SparseMatrix {
        &self.e[i]
    }

    pub fn f(&self, i: usize) -> &SparseMatrix {
        &self.f[i]
    }

    pub fn highest(&self) -> Option<&Weight> {
        self.highest.as_ref()
    }

    pub fn words(&self) -> Option<&[Vec<usize>]> {
        self.words.as_deref()
    }

    pub fn sigma_map(&self) -> Option<&SparseMatrix> {
        self.sigma_map.as_ref()
    }

    pub(crate) fn set_sigma_map(&mut self, s: Option<SparseMatrix>) {
        self.sigma_map = s;
    }

    /// Basis indices of the weight space `V(mu)`.
    pub fn block(&self, mu: &Weight) -> &[usize] {
        self.blocks.get(mu).map_or(&[], Vec::as_slice)
    }

    pub fn mult(&self, mu: &Weight) -> usize {
        self.block(mu).len()
    }

    pub fn weight_spaces(&self) -> impl Iterator<Item = (&Weight, &[usize])> {
        self.blocks.iter().map(|(w, b)| (w, b.as_slice()))
    }

    pub fn character(&self) -> CharacterTable {
        CharacterTable(self.blocks.iter().map(|(w, b)| (w.clone(), b.len() as u64)).collect())
    }

    /// `h_i` as the diagonal matrix of `<wt, α_i^vee>`.
    pub fn h(&self, i: usize) -> SparseMatrix {
        SparseMatrix::from_triples(
            self.dim(),
            self.dim(),
            self.weights.iter().enumerate().map(|(b, w)| (b, b, crate::linalg::q(w.0[i]))),
        )
    }

    /// Verifies `[e_i, f_j] = δ_ij h_i`, the weight grading, and the Serre relations.
    pub fn check_relations(&self, datum: &RootDatum) -> Result<()> {
        let r = self.rank;
        for i in 0..r {
            let alpha = datum.simple_root(i);
            for (name, m, sign) in [("e", &self.e[i], 1), ("f", &self.f[i], -1)] {
                for (row, col, _) in m.triples() {
                    if self.weights[row] != &self.weights[col] + &alpha.scaled(sign) {
                        return Err(Error::consistency(format!("{name}_{} does not shift weights by α", i + 1)));
                    }
                }
            }
            for j in 0..r {
                let comm = self.e[i].mul(&self.f[j]).sub(&self.f[j].mul(&self.e[i]));
                let expected = if i == j { self.h(i) } else { SparseMatrix::zeros(self.dim(), self.dim()) };
                if comm != expected {
                    return Err(Error::consistency(format!("[e_{}, f_{}] is wrong", i + 1, j + 1)));
                }
                if i != j {
                    let n = (1 - datum.cartan()[i][j]) as usize;
                    for (gens, name) in [(&self.e, "e"), (&self.f, "f")] {
                        if !ad_power(&gens[i], &gens[j], n).is_zero() {
                            return Err(Error::consistency(format!("Serre relation fails for {name}_{}, {name}_{}", i + 1, j + 1)));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Verifies `S e_i = e_{σ(i)} S` and `S f_i = f_{σ(i)} S` for the stored σ-map.
    pub fn check_sigma_map(&self, sigma: &PinnedAutomorphism) -> Result<()> {
        let s = self.sigma_map.as_ref().ok_or_else(|| Error::input("module carries no σ-map"))?;
        for i in 0..self.rank {
            let j = sigma.node(i);
            if s.mul(&self.e[i]) != self.e[j].mul(s) || s.mul(&self.f[i]) != self.f[j].mul(s) {
                return Err(Error::consistency(format!("σ-map does not intertwine generator {}", i + 1)));
            }
        }
        Ok(())
    }

    /// Applies `f_{w[0]} ... f_{w[k-1]}` to a vector.
    pub fn apply_f_word(&self, word: &[usize], v: &[(usize, Q)]) -> Vec<(usize, Q)> {
        word.iter().rev().fold(v.to_vec(), |acc, &i| self.f[i].apply_sparse(&acc))
    }

    /// Restriction of a global vector to the coordinates of a weight block.
    pub fn restrict(&self, v: &[(usize, Q)], block: &[usize]) -> Vec<Q> {
        let mut out = vec![Q::zero(); block.len()];
        for (idx, x) in v {
            if let Ok(k) = block.binary_search(idx) {
                out[k] = x.clone();
            }
        }
        out
    }
}

fn ad_power(x: &SparseMatrix, y: &SparseMatrix, n: usize) -> SparseMatrix {
    (0..n).fold(y.clone(), |acc, _| x.mul(&acc).sub(&acc.mul(x)))
}
