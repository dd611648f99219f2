//! Weights, root data and Weyl group combinatorics of simply connected semisimple groups.

pub mod cartan;
pub mod laurent;

pub use cartan::{classify_cartan, format_group, parse_group, Factor, SimpleType};
pub use laurent::{GroupAlgebraElement, Lattice};

use crate::error::{Error, Result};
use crate::linalg::{inverse, q, Q};
use num::{Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// A weight in fundamental-weight coordinates: `coords[i] = <lambda, alpha_i^vee>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.0[i] = 1;
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|x| x * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.0.len(), rhs.0.len(), "rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.0.len(), rhs.0.len(), "rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl SubAssign<&Weight> for Weight {
    fn sub_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|x| -x).collect())
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        rhs.scaled(self)
    }
}

/// Root datum of a simply connected semisimple group, nodes labelled factor by factor.
#[derive(Clone, Debug)]
pub struct RootDatum {
    factors: Vec<Factor>,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Q>>,
    symmetrizer: Vec<i64>,
    positive_roots: Vec<Weight>,
    positive_root_coords: Vec<Vec<i64>>,
    positive_coroot_coords: Vec<Vec<i64>>,
    w0_word: Vec<usize>,
}

impl RootDatum {
    pub fn from_spec(spec: &str) -> Result<Self> {
        Self::new(parse_group(spec)?)
    }

    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::input("empty list of simple factors"));
        }
        let cartan = cartan::product_cartan(&factors);
        let r = cartan.len();
        let qa: Vec<Vec<Q>> = cartan.iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect();
        let cartan_inv = inverse(&qa).ok_or_else(|| Error::consistency("singular Cartan matrix"))?;
        let symmetrizer = symmetrizer(&cartan)?;

        // reflection closure in root coordinates
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..r {
            let mut e = vec![0; r];
            e[i] = 1;
            if seen.insert(e.clone()) {
                queue.push_back(e);
            }
        }
        while let Some(c) = queue.pop_front() {
            for i in 0..r {
                let pairing: i64 = (0..r).map(|j| cartan[i][j] * c[j]).sum();
                let mut s = c.clone();
                s[i] -= pairing;
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        let mut positive: Vec<Vec<i64>> = seen.into_iter().filter(|c| c.iter().all(|&x| x >= 0)).collect();
        positive.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let expected: usize = factors.iter().map(Factor::num_positive_roots).sum();
        if positive.len() != expected {
            return Err(Error::consistency(format!(
                "found {} positive roots, expected {expected}",
                positive.len()
            )));
        }
        let positive_roots: Vec<Weight> = positive
            .iter()
            .map(|c| Weight((0..r).map(|i| (0..r).map(|j| cartan[i][j] * c[j]).sum()).collect()))
            .collect();
        let positive_coroot_coords = positive
            .iter()
            .map(|c| {
                let norm: i64 = (0..r)
                    .flat_map(|i| (0..r).map(move |j| (i, j)))
                    .map(|(i, j)| c[i] * c[j] * symmetrizer[i] * cartan[i][j])
                    .sum();
                c.iter()
                    .zip(&symmetrizer)
                    .map(|(ci, di)| {
                        let num = 2 * ci * di;
                        debug_assert_eq!(num % norm, 0);
                        num / norm
                    })
                    .collect()
            })
            .collect();

        let mut datum = RootDatum {
            factors,
            cartan,
            cartan_inv,
            symmetrizer,
            positive_roots,
            positive_root_coords: positive,
            positive_coroot_coords,
            w0_word: Vec::new(),
        };
        let mut x = datum.rho();
        let mut applied = Vec::new();
        while let Some(i) = (0..r).find(|&i| x.0[i] > 0) {
            x = datum.reflect(i, &x);
            applied.push(i);
        }
        applied.reverse();
        datum.w0_word = applied;
        Ok(datum)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn spec_string(&self) -> String {
        format_group(&self.factors)
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Integers `d_i` with `d_i a_ij = d_j a_ji`; `(alpha_i, alpha_i) = 2 d_i`.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    pub fn positive_root_coords(&self) -> &[Vec<i64>] {
        &self.positive_root_coords
    }

    pub fn positive_coroot_coords(&self) -> &[Vec<i64>] {
        &self.positive_coroot_coords
    }

    /// All roots, positive ones first in the stored order, then their negatives.
    pub fn roots(&self) -> Vec<Weight> {
        self.positive_roots.iter().cloned().chain(self.positive_roots.iter().map(|r| -r)).collect()
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.positive_roots.iter().any(|r| r == w || *r == -w)
    }

    /// `alpha_i` in fundamental-weight coordinates (column `i` of the Cartan matrix).
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight(self.cartan.iter().map(|row| row[i]).collect())
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    pub fn w0_word(&self) -> &[usize] {
        &self.w0_word
    }

    pub fn weyl_order(&self) -> u128 {
        self.factors.iter().map(Factor::weyl_order).product()
    }

    fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::input(format!("weight {w} has rank {}, datum has rank {}", w.rank(), self.rank())))
        }
    }

    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let k = w.0[i];
        if k == 0 {
            return w.clone();
        }
        Weight(w.0.iter().zip(&self.cartan).map(|(x, row)| x - k * row[i]).collect())
    }

    /// `<w, beta^vee>` for the `k`-th positive root.
    pub fn coroot_pairing(&self, k: usize, w: &Weight) -> i64 {
        self.positive_coroot_coords[k].iter().zip(&w.0).map(|(a, b)| a * b).sum()
    }

    /// `<w, beta^vee>` for an arbitrary root `beta`.
    pub fn pair_with_root(&self, beta: &Weight, w: &Weight) -> Result<i64> {
        let neg = -beta;
        for (k, r) in self.positive_roots.iter().enumerate() {
            if r == beta {
                return Ok(self.coroot_pairing(k, w));
            }
            if *r == neg {
                return Ok(-self.coroot_pairing(k, w));
            }
        }
        Err(Error::input(format!("{beta} is not a root")))
    }

    pub fn reflect_root(&self, beta: &Weight, w: &Weight) -> Result<Weight> {
        let n = self.pair_with_root(beta, w)?;
        Ok(w - &beta.scaled(n))
    }

    /// Applies the word `s_{w[0]} s_{w[1]} ... s_{w[k-1]}` to `w`.
    pub fn apply_word(&self, word: &[usize], w: &Weight) -> Weight {
        word.iter().rev().fold(w.clone(), |acc, &i| self.reflect(i, &acc))
    }

    pub fn w0(&self, w: &Weight) -> Weight {
        self.apply_word(&self.w0_word, w)
    }

    /// `lambda^* = -w0(lambda)`.
    pub fn star(&self, w: &Weight) -> Weight {
        -self.w0(w)
    }

    pub fn root_coords(&self, w: &Weight) -> Vec<Q> {
        self.cartan_inv
            .iter()
            .map(|row| row.iter().zip(&w.0).map(|(a, &b)| a * q(b)).sum())
            .collect()
    }

    /// Integral root coordinates, or `None` if `w` is not in the root lattice.
    pub fn integral_root_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        self.root_coords(w)
            .into_iter()
            .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
            .collect()
    }

    /// `lambda1 ⪯ lambda2`: the difference is a nonnegative integral combination of simple roots.
    pub fn dominance_leq(&self, l1: &Weight, l2: &Weight) -> Result<bool> {
        self.check_rank(l1)?;
        self.check_rank(l2)?;
        Ok(self.integral_root_coords(&(l2 - l1)).is_some_and(|c| c.iter().all(|&x| x >= 0)))
    }

    /// The coordinatewise order on fundamental-weight coordinates.
    pub fn componentwise_leq(&self, l1: &Weight, l2: &Weight) -> Result<bool> {
        self.check_rank(l1)?;
        self.check_rank(l2)?;
        Ok(l1.0.iter().zip(&l2.0).all(|(a, b)| a <= b))
    }

    /// `(lambda, mu)` for the invariant form normalised by `(alpha_i, alpha_i) = 2 d_i`.
    pub fn inner_product(&self, l: &Weight, m: &Weight) -> Q {
        let c = self.root_coords(m);
        l.0.iter().zip(&c).zip(&self.symmetrizer).map(|((&a, ci), &d)| q(a * d) * ci).sum()
    }

    pub fn weyl_orbit(&self, w: &Weight) -> BTreeSet<Weight> {
        let mut seen = BTreeSet::new();
        seen.insert(w.clone());
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(x) = queue.pop_front() {
            for i in 0..self.rank() {
                if x.0[i] == 0 {
                    continue;
                }
                let y = self.reflect(i, &x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// `(lambda_dom, word)` with `apply_word(word, lambda) == lambda_dom`.
    pub fn dominant_conjugate(&self, w: &Weight) -> (Weight, Vec<usize>) {
        let mut x = w.clone();
        let mut applied = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| x.0[i] < 0) {
            x = self.reflect(i, &x);
            applied.push(i);
        }
        applied.reverse();
        (x, applied)
    }

    /// Weyl dimension formula.
    pub fn weyl_dim(&self, w: &Weight) -> Result<u64> {
        self.check_rank(w)?;
        if !w.is_dominant() {
            return Err(Error::input(format!("{w} is not dominant")));
        }
        let shifted = w + &self.rho();
        let rho = self.rho();
        let mut value = Q::one();
        for k in 0..self.positive_roots.len() {
            value *= Q::new(self.coroot_pairing(k, &shifted).into(), self.coroot_pairing(k, &rho).into());
        }
        debug_assert!(value.is_integer() && value.is_positive());
        value.to_integer().to_u64().ok_or_else(|| Error::input("dimension overflows u64"))
    }

    /// Dominant weights `mu ⪯ lambda`, sorted by depth below `lambda` then lexicographically.
    pub fn dominant_weights_below(&self, lambda: &Weight) -> Vec<Weight> {
        let mut seen = BTreeSet::from([lambda.clone()]);
        let mut queue = VecDeque::from([lambda.clone()]);
        while let Some(x) = queue.pop_front() {
            for beta in &self.positive_roots {
                let y = &x - beta;
                if y.is_dominant() && seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<(i64, Weight)> = seen
            .into_iter()
            .map(|m| {
                let depth = self.integral_root_coords(&(lambda - &m)).expect("difference of root-lattice chain");
                (depth.iter().sum(), m)
            })
            .collect();
        out.sort();
        out.into_iter().map(|(_, m)| m).collect()
    }
}

fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = a.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Q::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                let dj = d[i].clone().unwrap() * Q::new(a[i][j].into(), a[j][i].into());
                match &d[j] {
                    Some(existing) if *existing != dj => {
                        return Err(Error::consistency("Cartan matrix is not symmetrizable"))
                    }
                    Some(_) => {}
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                }
            }
        }
    }
    let d: Vec<Q> = d.into_iter().map(Option::unwrap).collect();
    let lcm = d.iter().fold(num::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<num::BigInt> = d.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = scaled.iter().fold(num::BigInt::zero(), |acc, x| acc.gcd(x));
    Ok(scaled.iter().map(|x| (x / &g).to_i64().expect("small symmetrizer")).collect())
}
