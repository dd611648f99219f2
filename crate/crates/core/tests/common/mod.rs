#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use twistinv::invariants::equal_up_to_row_col_units;
use twistinv::linalg::q;
use twistinv::{GroupAlgebraElement, RootDatum, Weight};

pub fn w(c: &[i64]) -> Weight {
    Weight(c.to_vec())
}

pub fn e(c: &[i64]) -> GroupAlgebraElement {
    GroupAlgebraElement::exp(w(c))
}

pub fn ex(x: &Weight) -> GroupAlgebraElement {
    GroupAlgebraElement::exp(x.clone())
}

pub fn konst(rank: usize, c: i64) -> GroupAlgebraElement {
    GroupAlgebraElement::constant(rank, q(c))
}

/// `e^a - 1`
pub fn em1(a: &Weight) -> GroupAlgebraElement {
    &ex(a) - &GroupAlgebraElement::one(a.rank())
}

pub fn product(rank: usize, fs: impl IntoIterator<Item = GroupAlgebraElement>) -> GroupAlgebraElement {
    fs.into_iter().fold(GroupAlgebraElement::one(rank), |acc, f| &acc * &f)
}

/// `i`-th elementary symmetric polynomial of `xs`.
pub fn elementary(rank: usize, xs: &[GroupAlgebraElement], i: usize) -> GroupAlgebraElement {
    let mut e = vec![GroupAlgebraElement::zero(rank); i + 1];
    e[0] = GroupAlgebraElement::one(rank);
    for x in xs {
        for k in (1..=i).rev() {
            e[k] = &e[k] + &(&e[k - 1] * x);
        }
    }
    e[i].clone()
}

/// `a = c * b` for a nonzero rational `c`.
pub fn equal_up_to_scalar(a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> bool {
    a.scalar_ratio(b).is_some()
}

/// Row/column unit equivalence after some permutation of the columns of `t`.
pub fn equal_up_to_units_and_column_order(m: &[Vec<GroupAlgebraElement>], t: &[Vec<GroupAlgebraElement>]) -> bool {
    let n = t.first().map_or(0, Vec::len);
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let permuted: Vec<Vec<GroupAlgebraElement>> =
            t.iter().map(|row| perm.iter().map(|&j| row[j].clone()).collect()).collect();
        if equal_up_to_row_col_units(m, &permuted) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Dominant weights with `weyl_dim <= cap`, by monotone search from zero.
pub fn dominant_weights_up_to_dim(datum: &RootDatum, cap: u64) -> Vec<Weight> {
    let r = datum.rank();
    let mut seen = BTreeSet::from([Weight::zero(r)]);
    let mut queue = VecDeque::from([Weight::zero(r)]);
    while let Some(x) = queue.pop_front() {
        for i in 0..r {
            let mut y = x.clone();
            y.0[i] += 1;
            if !seen.contains(&y) && datum.weyl_dim(&y).unwrap() <= cap {
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}
