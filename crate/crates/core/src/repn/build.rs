//! Irreducible modules as the quotient of the span of f-monomials on a highest-weight vector
//! by the radical of the contravariant form.

use super::Module;
use crate::error::{Error, Result};
use crate::linalg::{q, rref, solve, SparseMatrix, Q};
use crate::rootdata::{RootDatum, Weight};
use num::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};

pub const DEFAULT_DIM_CAP: u64 = 5000;

/// The dimension cap, overridable through `TWISTINV_DIM_CAP`.
pub fn dimension_cap() -> u64 {
    std::env::var("TWISTINV_DIM_CAP").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_DIM_CAP)
}

pub fn build_irreducible(datum: &RootDatum, lambda: &Weight) -> Result<Module> {
    build_irreducible_with_cap(datum, lambda, dimension_cap())
}

struct WeightSpace {
    ids: Vec<usize>,
    gram: Vec<Vec<Q>>,
}

pub fn build_irreducible_with_cap(datum: &RootDatum, lambda: &Weight, cap: u64) -> Result<Module> {
    let r = datum.rank();
    if lambda.rank() != r {
        return Err(Error::input(format!("weight {lambda} does not have rank {r}")));
    }
    if !lambda.is_dominant() {
        return Err(Error::input(format!("highest weight {lambda} is not dominant")));
    }
    let expected = datum.weyl_dim(lambda)?;
    if expected > cap {
        return Err(Error::DimensionCap { dim: expected, cap });
    }

    let mut weights: Vec<Weight> = vec![lambda.clone()];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut e_cols: Vec<Vec<Vec<(usize, Q)>>> = vec![vec![Vec::new()]; r];
    let mut f_cols: Vec<Vec<Vec<(usize, Q)>>> = vec![vec![Vec::new()]; r];
    let mut spaces: HashMap<Weight, WeightSpace> = HashMap::new();
    spaces.insert(lambda.clone(), WeightSpace { ids: vec![0], gram: vec![vec![Q::one()]] });
    let simple: Vec<Weight> = (0..r).map(|i| datum.simple_root(i)).collect();

    let mut level: Vec<Weight> = vec![lambda.clone()];
    while !level.is_empty() {
        let targets: BTreeSet<Weight> =
            level.iter().flat_map(|nu| simple.iter().map(move |a| nu - a)).collect();
        let mut next = Vec::new();
        for mu in targets {
            // candidates f_i u for u in V(mu + α_i)
            let mut cands: Vec<(usize, usize)> = Vec::new();
            for i in 0..r {
                if let Some(sp) = spaces.get(&(&mu + &simple[i])) {
                    cands.extend(sp.ids.iter().map(|&u| (i, u)));
                }
            }
            if cands.is_empty() {
                continue;
            }
            // e_j (f_i u) = f_i (e_j u) + δ_ij <wt u, α_i^vee> u
            let raised: Vec<Vec<Vec<(usize, Q)>>> = cands
                .iter()
                .map(|&(i, u)| {
                    (0..r)
                        .map(|j| {
                            let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
                            for (x, c) in &e_cols[j][u] {
                                for (y, d) in &f_cols[i][*x] {
                                    *acc.entry(*y).or_insert_with(Q::zero) += c * d;
                                }
                            }
                            if i == j {
                                let h = weights[u].0[i];
                                if h != 0 {
                                    *acc.entry(u).or_insert_with(Q::zero) += q(h);
                                }
                            }
                            acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
                        })
                        .collect()
                })
                .collect();
            let n = cands.len();
            let mut gram = vec![vec![Q::zero(); n]; n];
            for (a, &(i, u)) in cands.iter().enumerate() {
                let sp = &spaces[&(&mu + &simple[i])];
                let pos = sp.ids.iter().position(|&x| x == u).unwrap();
                for b in 0..n {
                    let mut val = Q::zero();
                    for (x, c) in &raised[b][i] {
                        let k = sp.ids.iter().position(|y| y == x).expect("raised vector lies in the weight space");
                        val += c * &sp.gram[pos][k];
                    }
                    gram[a][b] = val;
                }
            }
            let mut work = gram.clone();
            let chosen = rref(&mut work);
            if chosen.is_empty() {
                continue;
            }
            let first_id = weights.len();
            let ids: Vec<usize> = (first_id..first_id + chosen.len()).collect();
            let basis_gram: Vec<Vec<Q>> =
                chosen.iter().map(|&a| chosen.iter().map(|&b| gram[a][b].clone()).collect()).collect();
            for &a in &chosen {
                let (i, u) = cands[a];
                weights.push(mu.clone());
                let mut w = vec![i];
                w.extend(&words[u]);
                words.push(w);
                for j in 0..r {
                    e_cols[j].push(raised[a][j].clone());
                    f_cols[j].push(Vec::new());
                }
            }
            for (a, &(i, u)) in cands.iter().enumerate() {
                let rhs: Vec<Q> = chosen.iter().map(|&b| gram[b][a].clone()).collect();
                let x = solve(&basis_gram, &rhs)
                    .ok_or_else(|| Error::consistency("contravariant form is degenerate on the chosen basis"))?;
                f_cols[i][u] = ids.iter().zip(x).filter(|(_, c)| !c.is_zero()).map(|(&id, c)| (id, c)).collect();
            }
            spaces.insert(mu.clone(), WeightSpace { ids, gram: basis_gram });
            next.push(mu);
        }
        level = next;
    }

    let dim = weights.len();
    if dim as u64 != expected {
        return Err(Error::consistency(format!(
            "constructed dimension {dim} differs from the Weyl dimension {expected}"
        )));
    }
    let to_matrix = |cols: Vec<Vec<(usize, Q)>>| SparseMatrix::from_columns(dim, cols);
    let e = e_cols.into_iter().map(to_matrix).collect();
    let f = f_cols.into_iter().map(to_matrix).collect();
    Module::from_parts(r, weights, e, f, Some(lambda.clone()), Some(words), None)
}
