//! Weight multiplicities of irreducible modules from Freudenthal's recursion and from the
//! Weyl character formula, independent of any explicit module.

use crate::error::{Error, Result};
use crate::linalg::{q, Q};
use crate::rootdata::{RootDatum, Weight};
use num::{ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};

/// Multiplicities `μ ↦ dim V(μ)`, zero entries omitted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CharacterTable(pub BTreeMap<Weight, u64>);

impl CharacterTable {
    pub fn get(&self, mu: &Weight) -> u64 {
        self.0.get(mu).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn is_weyl_invariant(&self, datum: &RootDatum) -> bool {
        self.0.iter().all(|(w, &m)| (0..datum.rank()).all(|i| self.get(&datum.reflect(i, w)) == m))
    }

    /// Character of a tensor product.
    pub fn product(&self, other: &CharacterTable) -> CharacterTable {
        let mut out: BTreeMap<Weight, u64> = BTreeMap::new();
        for (a, x) in &self.0 {
            for (b, y) in &other.0 {
                *out.entry(a + b).or_default() += x * y;
            }
        }
        CharacterTable(out)
    }
}

fn check(datum: &RootDatum, lambda: &Weight) -> Result<()> {
    if lambda.rank() != datum.rank() || !lambda.is_dominant() {
        return Err(Error::input(format!("{lambda} is not a dominant weight of rank {}", datum.rank())));
    }
    Ok(())
}

/// Freudenthal multiplicities of all weights of `L(λ)`.
pub fn freudenthal_character(datum: &RootDatum, lambda: &Weight) -> Result<CharacterTable> {
    check(datum, lambda)?;
    let rho = datum.rho();
    let norm = |x: &Weight| datum.inner_product(x, x);
    let top = norm(&(lambda + &rho));
    let dominant = datum.dominant_weights_below(lambda);
    let mut dom_mult: HashMap<Weight, Q> = HashMap::new();
    let lookup = |m: &HashMap<Weight, Q>, x: &Weight| -> Q {
        let (d, _) = datum.dominant_conjugate(x);
        m.get(&d).cloned().unwrap_or_else(Q::zero)
    };
    for mu in &dominant {
        if mu == lambda {
            dom_mult.insert(mu.clone(), q(1));
            continue;
        }
        let mut sum = Q::zero();
        for beta in datum.positive_roots() {
            let mut x = mu + beta;
            loop {
                let m = lookup(&dom_mult, &x);
                if m.is_zero() {
                    break;
                }
                sum += m * datum.inner_product(&x, beta);
                x = &x + beta;
            }
        }
        let denom = &top - norm(&(mu + &rho));
        let value = q(2) * sum / denom;
        if !value.is_integer() || value < Q::zero() {
            return Err(Error::consistency(format!("Freudenthal value {value} at {mu} is not a natural number")));
        }
        dom_mult.insert(mu.clone(), value);
    }
    let mut out = BTreeMap::new();
    for mu in &dominant {
        let m = dom_mult[mu].to_integer().to_u64().unwrap();
        if m == 0 {
            continue;
        }
        for w in datum.weyl_orbit(mu) {
            out.insert(w, m);
        }
    }
    Ok(CharacterTable(out))
}

/// `dim L(λ)(ν)` by Freudenthal's recursion.
pub fn freudenthal(datum: &RootDatum, lambda: &Weight, nu: &Weight) -> Result<u64> {
    if nu.rank() != datum.rank() {
        return Err(Error::input("rank mismatch"));
    }
    let (dom, _) = datum.dominant_conjugate(nu);
    if !datum.dominance_leq(&dom, lambda)? {
        return Ok(0);
    }
    Ok(freudenthal_character(datum, lambda)?.get(nu))
}

/// Multiplicities from the Weyl character formula: the alternating sum over the orbit of
/// `λ + ρ`, divided by `∏_{β>0} (1 - e^{-β})` in root coordinates.
pub fn weyl_character(datum: &RootDatum, lambda: &Weight) -> Result<CharacterTable> {
    check(datum, lambda)?;
    let r = datum.rank();
    let shifted = lambda + &datum.rho();
    // orbit of the regular weight λ+ρ with signs; the stabilizer is trivial so parity is well defined
    let mut signed: HashMap<Weight, i64> = HashMap::from([(shifted.clone(), 1)]);
    let mut queue = std::collections::VecDeque::from([shifted.clone()]);
    while let Some(x) = queue.pop_front() {
        let s = signed[&x];
        for i in 0..r {
            let y = datum.reflect(i, &x);
            if let std::collections::hash_map::Entry::Vacant(slot) = signed.entry(y.clone()) {
                slot.insert(-s);
                queue.push_back(y);
            }
        }
    }
    // numerator as a polynomial in x_k = e^{-α_k}
    let mut num: HashMap<Vec<i64>, i64> = HashMap::new();
    for (w, s) in &signed {
        let c = datum
            .integral_root_coords(&(&shifted - w))
            .ok_or_else(|| Error::consistency("orbit element not in the root lattice translate"))?;
        *num.entry(c).or_default() += s;
    }
    num.retain(|_, v| *v != 0);
    let mut poly = num;
    for beta in datum.positive_root_coords() {
        let mut bound = vec![0i64; r];
        for m in poly.keys() {
            for k in 0..r {
                bound[k] = bound[k].max(m[k]);
            }
        }
        let mut points: Vec<Vec<i64>> = vec![Vec::new()];
        for &b in &bound {
            points = points
                .into_iter()
                .flat_map(|p| {
                    (0..=b).map(move |x| {
                        let mut p = p.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        points.sort_by_key(|p| p.iter().sum::<i64>());
        let mut quot: HashMap<Vec<i64>, i64> = HashMap::new();
        for p in &points {
            let mut v = poly.get(p).copied().unwrap_or(0);
            let prev: Vec<i64> = p.iter().zip(beta).map(|(a, b)| a - b).collect();
            if prev.iter().all(|&x| x >= 0) {
                v += quot.get(&prev).copied().unwrap_or(0);
            }
            if v != 0 {
                quot.insert(p.clone(), v);
            }
        }
        // verify quot * (1 - x^β) == poly
        let mut back: HashMap<Vec<i64>, i64> = HashMap::new();
        for (p, v) in &quot {
            *back.entry(p.clone()).or_default() += v;
            let shifted_p: Vec<i64> = p.iter().zip(beta).map(|(a, b)| a + b).collect();
            *back.entry(shifted_p).or_default() -= v;
        }
        back.retain(|_, v| *v != 0);
        if back != poly {
            return Err(Error::consistency("Weyl denominator does not divide the alternating sum"));
        }
        poly = quot;
    }
    let mut out = BTreeMap::new();
    for (c, m) in poly {
        if m < 0 {
            return Err(Error::consistency("negative multiplicity from the Weyl character formula"));
        }
        let mut w = lambda.clone();
        for (k, &ck) in c.iter().enumerate() {
            w -= &datum.simple_root(k).scaled(ck);
        }
        out.insert(w, m as u64);
    }
    Ok(CharacterTable(out))
}
