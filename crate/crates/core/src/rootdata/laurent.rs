//! Group algebra `k[X]` of a weight lattice: finitely supported exact Laurent polynomials.

use super::Weight;
use crate::error::{Error, Result};
use crate::linalg::{q, Q};
use num::{One, Zero};
use serde_json::{json, Value};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Which lattice the exponents are meant to live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lattice {
    /// The full character lattice of the maximal torus.
    Full,
    /// The sublattice of σ-fixed characters.
    Fixed,
}

/// `Σ c_λ e^λ` with exact rational coefficients and no stored zeros.
#[derive(Clone, Debug)]
pub struct GroupAlgebraElement {
    rank: usize,
    lattice: Lattice,
    terms: BTreeMap<Weight, Q>,
}

impl PartialEq for GroupAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.terms == other.terms
    }
}

impl Eq for GroupAlgebraElement {}

impl GroupAlgebraElement {
    pub fn zero(rank: usize) -> Self {
        GroupAlgebraElement { rank, lattice: Lattice::Full, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(Weight::zero(rank), Q::one())
    }

    pub fn constant(rank: usize, c: Q) -> Self {
        Self::monomial(Weight::zero(rank), c)
    }

    pub fn monomial(exp: Weight, coeff: Q) -> Self {
        let rank = exp.rank();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        GroupAlgebraElement { rank, lattice: Lattice::Full, terms }
    }

    /// `e^λ`.
    pub fn exp(exp: Weight) -> Self {
        Self::monomial(exp, Q::one())
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Weight, Q)>) -> Self {
        let mut out = Self::zero(rank);
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn with_lattice(mut self, lattice: Lattice) -> Self {
        self.lattice = lattice;
        self
    }

    /// Tags the element as living on σ-fixed characters after checking every exponent.
    pub fn into_fixed(self, perm: &[usize]) -> Result<Self> {
        for w in self.terms.keys() {
            if (0..w.rank()).any(|i| w.0[perm[i]] != w.0[i]) {
                return Err(Error::consistency(format!("exponent {w} is not σ-fixed")));
            }
        }
        Ok(self.with_lattice(Lattice::Fixed))
    }

    pub fn add_term(&mut self, w: Weight, c: Q) {
        assert_eq!(w.rank(), self.rank, "rank mismatch in group algebra");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Weight, Q> {
        &self.terms
    }

    pub fn coefficient(&self, w: &Weight) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The scalar value if the element is a constant.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Weight::zero(self.rank)).cloned(),
            _ => None,
        }
    }

    /// Units of the Laurent ring are the nonzero scalar multiples of monomials.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank).with_lattice(self.lattice);
        }
        GroupAlgebraElement {
            rank: self.rank,
            lattice: self.lattice,
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    pub fn shift(&self, by: &Weight) -> Self {
        GroupAlgebraElement {
            rank: self.rank,
            lattice: self.lattice,
            terms: self.terms.iter().map(|(w, v)| (w + by, v.clone())).collect(),
        }
    }

    /// Applies a map to every exponent, collecting terms.
    pub fn map_exponents(&self, f: impl Fn(&Weight) -> Weight) -> Self {
        let mut out = Self::zero(self.rank).with_lattice(self.lattice);
        for (w, c) in &self.terms {
            out.add_term(f(w), c.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.rank).with_lattice(self.lattice);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    fn combine_lattice(a: Lattice, b: Lattice) -> Lattice {
        if a == Lattice::Fixed && b == Lattice::Fixed {
            Lattice::Fixed
        } else {
            Lattice::Full
        }
    }

    /// Exact quotient `self / other` in the Laurent ring, or `None` if `other` does not divide.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.rank, other.rank, "rank mismatch in group algebra");
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.rank));
        }
        // the quotient support lies in the box between coordinatewise extremes
        let r = self.rank;
        let lo = |e: &Self, k: usize| e.terms.keys().map(|w| w.0[k]).min().unwrap();
        let hi = |e: &Self, k: usize| e.terms.keys().map(|w| w.0[k]).max().unwrap();
        let bounds: Vec<(i64, i64)> = (0..r).map(|k| (lo(self, k) - lo(other, k), hi(self, k) - hi(other, k))).collect();
        if bounds.iter().any(|(a, b)| a > b) {
            return None;
        }
        let (lead_w, lead_c) = other.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(r);
        while let Some((w, c)) = rem.terms.iter().next_back() {
            let t = w - lead_w;
            if t.0.iter().zip(&bounds).any(|(x, (a, b))| x < a || x > b) {
                return None;
            }
            let coeff = c / lead_c;
            let term = Self::monomial(t, coeff);
            rem = &rem - &(&term * other);
            quot = &quot + &term;
        }
        Some(quot.with_lattice(Self::combine_lattice(self.lattice, other.lattice)))
    }

    /// Largest `k` with `divisor^k | self`, and the cofactor. `self` must be nonzero.
    pub fn divide_out(&self, divisor: &Self) -> (u32, Self) {
        let mut k = 0;
        let mut cur = self.clone();
        if divisor.is_unit() {
            return (0, cur);
        }
        while let Some(next) = cur.exact_div(divisor) {
            cur = next;
            k += 1;
        }
        (k, cur)
    }

    /// `Some(c)` if `self = c * other` for a nonzero rational `c`.
    pub fn scalar_ratio(&self, other: &Self) -> Option<Q> {
        let (w, c) = other.terms.iter().next()?;
        let ratio = self.coefficient(w) / c;
        if ratio.is_zero() {
            return None;
        }
        (other.scale(&ratio) == *self).then_some(ratio)
    }

    /// `Some((c, m))` if `self = c e^m * other`.
    pub fn unit_ratio(&self, other: &Self) -> Option<(Q, Weight)> {
        let (wo, _) = other.terms.iter().next()?;
        let (ws, _) = self.terms.iter().next()?;
        let shift = ws - wo;
        let ratio = self.scalar_ratio(&other.shift(&shift))?;
        Some((ratio, shift))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| json!({ "exp": w.0, "coeff": c.to_string() }))
                .collect(),
        )
    }

    pub fn from_json(rank: usize, v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::input("group algebra element must be a JSON array"))?;
        let mut out = Self::zero(rank);
        for t in arr {
            let exp: Vec<i64> = serde_json::from_value(t.get("exp").cloned().unwrap_or(Value::Null))
                .map_err(|e| Error::input(format!("bad exponent: {e}")))?;
            if exp.len() != rank {
                return Err(Error::input("exponent rank mismatch"));
            }
            let coeff = t
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::input("coefficient must be a string"))?;
            out.add_term(Weight(exp), parse_rational(coeff)?);
        }
        Ok(out)
    }
}

pub fn parse_rational(s: &str) -> Result<Q> {
    s.trim().parse::<Q>().map_err(|_| Error::input(format!("malformed rational {s:?}")))
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(w, c)| if w.is_zero() { format!("{c}") } else { format!("{c}*e^{w}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add<&GroupAlgebraElement> for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn add(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out.lattice = GroupAlgebraElement::combine_lattice(self.lattice, rhs.lattice);
        out
    }
}

impl Sub<&GroupAlgebraElement> for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn sub(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        self + &(-rhs)
    }
}

impl Neg for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn neg(self) -> GroupAlgebraElement {
        self.scale(&q(-1))
    }
}

impl Mul<&GroupAlgebraElement> for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn mul(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        assert_eq!(self.rank, rhs.rank, "rank mismatch in group algebra");
        let mut acc: BTreeMap<Weight, Q> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                *acc.entry(a + b).or_insert_with(Q::zero) += x * y;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        GroupAlgebraElement {
            rank: self.rank,
            lattice: GroupAlgebraElement::combine_lattice(self.lattice, rhs.lattice),
            terms: acc,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GroupAlgebraElement {
            type Output = GroupAlgebraElement;
            fn $m(self, rhs: GroupAlgebraElement) -> GroupAlgebraElement {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Determinant of a square matrix over the group algebra by expansion over column subsets.
pub fn determinant(m: &[Vec<GroupAlgebraElement>], rank: usize) -> GroupAlgebraElement {
    let n = m.len();
    if n == 0 {
        return GroupAlgebraElement::one(rank);
    }
    assert!(n <= 20, "matrix too large for subset expansion");
    let mut dp: Vec<Option<GroupAlgebraElement>> = vec![None; 1 << n];
    dp[0] = Some(GroupAlgebraElement::one(rank));
    for mask in 1usize..(1 << n) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = GroupAlgebraElement::zero(rank);
        for j in 0..n {
            if mask & (1 << j) == 0 || m[row][j].is_zero() {
                continue;
            }
            let rest = mask & !(1 << j);
            let Some(sub) = &dp[rest] else { continue };
            if sub.is_zero() {
                continue;
            }
            let above = (rest >> (j + 1)).count_ones();
            let term = &m[row][j] * sub;
            acc = if above % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        dp[mask] = Some(acc);
    }
    dp[(1 << n) - 1].take().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(c: &[i64]) -> GroupAlgebraElement {
        GroupAlgebraElement::exp(Weight(c.to_vec()))
    }

    #[test]
    fn exponent_law() {
        assert_eq!(&e(&[1, 2]) * &e(&[3, -2]), e(&[4, 0]));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let x = &e(&[1]) - &e(&[1]);
        assert!(x.is_zero());
        assert_eq!(x.len(), 0);
    }

    #[test]
    fn exact_division() {
        let one = GroupAlgebraElement::one(1);
        let a = &e(&[1]) - &one;
        let b = &e(&[-1]) - &one;
        let p = &(&a * &a) * &b;
        let quo = p.exact_div(&a).unwrap();
        assert_eq!(quo, &a * &b);
        assert!(a.exact_div(&(&e(&[1]) + &one)).is_none());
        let (k, rest) = p.divide_out(&a);
        // e^{-1} - 1 is a unit multiple of e^1 - 1
        assert_eq!(k, 3);
        assert!(rest.is_unit());
    }

    #[test]
    fn two_variable_division() {
        let one = GroupAlgebraElement::one(2);
        let a = &e(&[1, 1]) - &one;
        let b = &e(&[2, -1]) + &e(&[0, 3]);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert!(prod.exact_div(&(&e(&[1, 0]) - &one)).is_none());
    }

    #[test]
    fn determinant_two_by_two() {
        let m = vec![vec![e(&[1]), e(&[2])], vec![e(&[0]), e(&[3])]];
        let det = determinant(&m, 1);
        assert_eq!(det, &e(&[4]) - &e(&[2]));
    }

    #[test]
    fn json_roundtrip() {
        let x = &e(&[1, -1]).scale(&crate::linalg::q_ratio(3, 2)) - &e(&[0, 0]);
        let back = GroupAlgebraElement::from_json(2, &x.to_json()).unwrap();
        assert_eq!(back, x);
        assert_eq!(x.to_json()[1]["coeff"], "3/2");
    }
}
