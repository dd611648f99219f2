//! Tensor products, duals, exterior powers, direct sums and σ-twists of modules.

use super::Module;
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, Q};
use crate::rootdata::Weight;
use crate::twist::PinnedAutomorphism;
use num::{One, Zero};
use std::collections::BTreeMap;

/// The trivial one-dimensional module.
pub fn trivial(rank: usize) -> Module {
    let zero = || SparseMatrix::zeros(1, 1);
    Module::from_parts(
        rank,
        vec![Weight::zero(rank)],
        (0..rank).map(|_| zero()).collect(),
        (0..rank).map(|_| zero()).collect(),
        Some(Weight::zero(rank)),
        Some(vec![Vec::new()]),
        None,
    )
    .expect("trivial module")
}

fn same_rank(v: &Module, w: &Module) -> Result<usize> {
    if v.rank() != w.rank() {
        return Err(Error::input("modules over different root data"));
    }
    Ok(v.rank())
}

/// `V ⊗ W` on the basis `(a, b) ↦ a * dim W + b`, generators by the Leibniz rule.
pub fn tensor(v: &Module, w: &Module) -> Result<Module> {
    let r = same_rank(v, w)?;
    let iv = SparseMatrix::identity(v.dim());
    let iw = SparseMatrix::identity(w.dim());
    let leibniz = |x: &SparseMatrix, y: &SparseMatrix| SparseMatrix::kron(x, &iw).add(&SparseMatrix::kron(&iv, y));
    let weights = v.weights().iter().flat_map(|a| w.weights().iter().map(move |b| a + b)).collect();
    let sigma = match (v.sigma_map(), w.sigma_map()) {
        (Some(s), Some(t)) => Some(SparseMatrix::kron(s, t)),
        _ => None,
    };
    Module::from_parts(
        r,
        weights,
        (0..r).map(|i| leibniz(v.e(i), w.e(i))).collect(),
        (0..r).map(|i| leibniz(v.f(i), w.f(i))).collect(),
        None,
        None,
        sigma,
    )
}

pub fn direct_sum(v: &Module, w: &Module) -> Result<Module> {
    let r = same_rank(v, w)?;
    let n = v.dim();
    let total = n + w.dim();
    let stack = |x: &SparseMatrix, y: &SparseMatrix| {
        SparseMatrix::from_triples(
            total,
            total,
            x.triples()
                .map(|(a, b, c)| (a, b, c.clone()))
                .chain(y.triples().map(|(a, b, c)| (a + n, b + n, c.clone()))),
        )
    };
    let sigma = match (v.sigma_map(), w.sigma_map()) {
        (Some(s), Some(t)) => Some(stack(s, t)),
        _ => None,
    };
    Module::from_parts(
        r,
        v.weights().iter().chain(w.weights()).cloned().collect(),
        (0..r).map(|i| stack(v.e(i), w.e(i))).collect(),
        (0..r).map(|i| stack(v.f(i), w.f(i))).collect(),
        None,
        None,
        sigma,
    )
}

/// The contragredient module on the dual basis: generators act by minus the transpose.
/// A σ-map `S` on `V` induces `(S^{-1})^T` on `V*`.
pub fn dual(v: &Module) -> Result<Module> {
    let r = v.rank();
    let neg = -Q::one();
    let sigma = v.sigma_map().map(|s| inverse_of_finite_order(s).map(|inv| inv.transpose())).transpose()?;
    Module::from_parts(
        r,
        v.weights().iter().map(|w| -w).collect(),
        (0..r).map(|i| v.e(i).transpose().scale(&neg)).collect(),
        (0..r).map(|i| v.f(i).transpose().scale(&neg)).collect(),
        None,
        None,
        sigma,
    )
}

fn inverse_of_finite_order(s: &SparseMatrix) -> Result<SparseMatrix> {
    let id = SparseMatrix::identity(s.nrows());
    let mut prev = id.clone();
    let mut cur = s.clone();
    for _ in 0..64 {
        if cur == id {
            return Ok(prev);
        }
        prev = cur.clone();
        cur = cur.mul(s);
    }
    let dense = crate::linalg::inverse(&s.to_dense()).ok_or_else(|| Error::consistency("σ-map is singular"))?;
    Ok(SparseMatrix::from_dense(&dense))
}

/// `∧^k V` on increasing index subsets, ordered lexicographically.
pub fn exterior_power(v: &Module, k: usize) -> Result<Module> {
    let r = v.rank();
    let n = v.dim();
    if k > n {
        return Err(Error::input(format!("exterior power {k} of a {n}-dimensional module")));
    }
    let subsets = k_subsets(n, k);
    let index: BTreeMap<Vec<usize>, usize> = subsets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let weights = subsets
        .iter()
        .map(|s| s.iter().fold(Weight::zero(r), |acc, &b| &acc + v.weight(b)))
        .collect();
    let derivation = |x: &SparseMatrix| {
        let mut triples = Vec::new();
        for (col, s) in subsets.iter().enumerate() {
            for (pos, &b) in s.iter().enumerate() {
                for (row_b, c) in x.column(b) {
                    let mut t = s.clone();
                    t[pos] = *row_b;
                    if let Some((sign, sorted)) = sort_with_sign(t) {
                        let c = if sign { c.clone() } else { -c.clone() };
                        triples.push((index[&sorted], col, c));
                    }
                }
            }
        }
        SparseMatrix::from_triples(subsets.len(), subsets.len(), triples)
    };
    let sigma = v.sigma_map().map(|s| {
        // ∧^k S: expand ∧_j S(v_{a_j}) multilinearly
        let mut triples = Vec::new();
        for (col, a) in subsets.iter().enumerate() {
            let mut partial: Vec<(Vec<usize>, Q)> = vec![(Vec::new(), Q::one())];
            for &b in a {
                let mut next = Vec::new();
                for (idx, c) in &partial {
                    for (row, x) in s.column(b) {
                        if idx.contains(row) {
                            continue;
                        }
                        let mut t = idx.clone();
                        t.push(*row);
                        next.push((t, c * x));
                    }
                }
                partial = next;
            }
            for (t, c) in partial {
                if let Some((sign, sorted)) = sort_with_sign(t) {
                    triples.push((index[&sorted], col, if sign { c } else { -c }));
                }
            }
        }
        SparseMatrix::from_triples(subsets.len(), subsets.len(), triples)
    });
    Module::from_parts(
        r,
        weights,
        (0..r).map(|i| derivation(v.e(i))).collect(),
        (0..r).map(|i| derivation(v.f(i))).collect(),
        None,
        None,
        sigma,
    )
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Sorts a list of distinct indices; returns `(true iff even permutation, sorted)`, or `None`
/// when an index repeats.
fn sort_with_sign(mut t: Vec<usize>) -> Option<(bool, Vec<usize>)> {
    let mut even = true;
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            t.swap(j - 1, j);
            even = !even;
            j -= 1;
        }
    }
    if t.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((even, t))
}

/// The twisted module `σV`: the same space with `e_i` acting as `e_{σ^{-1}(i)}` and weights `σ(μ)`.
pub fn twist(v: &Module, sigma: &PinnedAutomorphism) -> Result<Module> {
    let r = v.rank();
    if sigma.rank() != r {
        return Err(Error::input("automorphism rank mismatch"));
    }
    let words = v.words().map(|ws| ws.iter().map(|w| w.iter().map(|&i| sigma.node(i)).collect()).collect());
    Module::from_parts(
        r,
        v.weights().iter().map(|w| sigma.apply(w)).collect(),
        (0..r).map(|i| v.e(sigma.inverse_node(i)).clone()).collect(),
        (0..r).map(|i| v.f(sigma.inverse_node(i)).clone()).collect(),
        v.highest().map(|h| sigma.apply(h)),
        words,
        v.sigma_map().cloned(),
    )
}

/// Basis of `Hom_g(X, Y)`: weight-preserving `M` with `M e_i = e_i M` and `M f_i = f_i M`.
pub fn equivariant_maps(x: &Module, y: &Module) -> Result<Vec<SparseMatrix>> {
    let r = same_rank(x, y)?;
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    let mut by_col: Vec<Vec<(usize, usize)>> = vec![Vec::new(); x.dim()];
    for (mu, cols) in x.weight_spaces() {
        for &row in y.block(mu) {
            for &c in cols {
                by_col[c].push((row, unknowns.len()));
                unknowns.push((row, c));
            }
        }
    }
    let n = unknowns.len();
    let mut eqs: BTreeMap<(usize, usize, usize), Vec<Q>> = BTreeMap::new();
    let mut add = |key: (usize, usize, usize), var: usize, c: Q| {
        eqs.entry(key).or_insert_with(|| vec![Q::zero(); n])[var] += c;
    };
    for (g, (gx, gy)) in (0..r).flat_map(|i| [(x.e(i), y.e(i)), (x.f(i), y.f(i))]).enumerate() {
        // (gy M - M gx)[row, col] = 0
        for (k, &(s, col)) in unknowns.iter().enumerate() {
            for (row, c) in gy.column(s) {
                add((g, *row, col), k, c.clone());
            }
        }
        for col in 0..x.dim() {
            for (s, c) in gx.column(col) {
                for &(row, k) in &by_col[*s] {
                    add((g, row, col), k, -c.clone());
                }
            }
        }
    }
    let rows: Vec<Vec<Q>> = eqs.into_values().collect();
    Ok(crate::linalg::kernel(&rows, n)
        .into_iter()
        .map(|v| SparseMatrix::from_triples(y.dim(), x.dim(), unknowns.iter().zip(v).map(|(&(a, b), c)| (a, b, c))))
        .collect())
}
