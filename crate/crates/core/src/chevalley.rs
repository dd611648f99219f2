//! The tautological endomorphism `γ_taut` on the torus, the characteristic polynomial with
//! twisted-character coefficients, the Cayley–Hamilton identity and minuscule Vandermonde products.

use crate::error::{Error, Result};
use crate::linalg::{q, Q};
use crate::repn::{exterior_power, twisted_character, Module};
use crate::rootdata::{GroupAlgebraElement, Lattice, RootDatum, Weight};
use crate::twist::{FoldedDatum, PinnedAutomorphism};
use serde_json::Value;

type Matrix = Vec<Vec<GroupAlgebraElement>>;

/// `γ_taut|_T` as a matrix over `k[X(T)]` on the weight basis of `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusEndomorphism {
    pub rank: usize,
    pub entries: Matrix,
}

impl TorusEndomorphism {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn identity(rank: usize, d: usize) -> Self {
        let entries = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| if i == j { GroupAlgebraElement::one(rank) } else { GroupAlgebraElement::zero(rank) })
                    .collect()
            })
            .collect();
        TorusEndomorphism { rank, entries }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.dim();
        let mut entries = vec![vec![GroupAlgebraElement::zero(self.rank); d]; d];
        for i in 0..d {
            for k in 0..d {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..d {
                    if !other.entries[k][j].is_zero() {
                        entries[i][j] = &entries[i][j] + &(&self.entries[i][k] * &other.entries[k][j]);
                    }
                }
            }
        }
        TorusEndomorphism { rank: self.rank, entries }
    }

    pub fn trace(&self) -> GroupAlgebraElement {
        (0..self.dim()).fold(GroupAlgebraElement::zero(self.rank), |acc, i| &acc + &self.entries[i][i])
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(GroupAlgebraElement::is_zero)
    }
}

/// Entry `(i, j)` is `e^{σ(wt_j)} S_ij` for the σ-map `S` of `V`.
pub fn gamma_taut(v: &Module, sigma: &PinnedAutomorphism) -> Result<TorusEndomorphism> {
    let s = v.sigma_map().ok_or_else(|| Error::input("γ_taut needs a module with a σ-map"))?;
    let r = v.rank();
    let d = v.dim();
    let mut entries = vec![vec![GroupAlgebraElement::zero(r); d]; d];
    for (i, j, c) in s.triples() {
        let exp = sigma.apply(v.weight(j));
        if *v.weight(i) != exp {
            return Err(Error::consistency("σ-map does not send V(μ) to V(σμ)"));
        }
        entries[i][j] = GroupAlgebraElement::monomial(exp, c.clone());
    }
    Ok(TorusEndomorphism { rank: r, entries })
}

/// Monic `det(x - γ_taut)`; `coeffs[i]` multiplies `x^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPolynomial {
    pub coeffs: Vec<GroupAlgebraElement>,
}

impl CharPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation at a torus endomorphism.
    pub fn evaluate(&self, g: &TorusEndomorphism) -> TorusEndomorphism {
        let d = g.dim();
        let mut acc = TorusEndomorphism { rank: g.rank, entries: vec![vec![GroupAlgebraElement::zero(g.rank); d]; d] };
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g);
            for i in 0..d {
                acc.entries[i][i] = &acc.entries[i][i] + c;
            }
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(GroupAlgebraElement::to_json).collect())
    }
}

fn sign(k: usize) -> Q {
    q(if k % 2 == 0 { 1 } else { -1 })
}

/// `det(x - γ) = Σ_i (-1)^{d-i} χ_{∧^{d-i} V}(tσ) x^i`.
pub fn char_polynomial(v: &Module, sigma: &PinnedAutomorphism) -> Result<CharPolynomial> {
    if v.sigma_map().is_none() {
        return Err(Error::input("characteristic polynomial needs a module with a σ-map"));
    }
    let d = v.dim();
    let r = v.rank();
    let mut coeffs = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let k = d - i;
        let chi = if k == 0 {
            GroupAlgebraElement::one(r).with_lattice(Lattice::Fixed)
        } else {
            twisted_character(&exterior_power(v, k)?, sigma)?
        };
        coeffs.push(chi.scale(&sign(k)));
    }
    Ok(CharPolynomial { coeffs })
}

/// `det(x - γ)` from power traces by the Newton identities.
pub fn char_polynomial_from_traces(g: &TorusEndomorphism) -> CharPolynomial {
    let d = g.dim();
    let r = g.rank;
    let mut power = g.clone();
    let mut traces = Vec::with_capacity(d);
    for k in 1..=d {
        traces.push(power.trace());
        if k < d {
            power = power.mul(g);
        }
    }
    // e_k = (1/k) Σ_{i=1..k} (-1)^{i-1} e_{k-i} p_i
    let mut elem = vec![GroupAlgebraElement::one(r)];
    for k in 1..=d {
        let mut acc = GroupAlgebraElement::zero(r);
        for i in 1..=k {
            acc = &acc + &(&elem[k - i] * &traces[i - 1]).scale(&sign(i - 1));
        }
        elem.push(acc.scale(&Q::new(1.into(), (k as i64).into())));
    }
    let coeffs = (0..=d).map(|i| elem[d - i].scale(&sign(d - i))).collect();
    CharPolynomial { coeffs }
}

/// True iff `f(γ_taut|_T)` vanishes identically.
pub fn cayley_hamilton_check(v: &Module, sigma: &PinnedAutomorphism) -> Result<bool> {
    let g = gamma_taut(v, sigma)?;
    let f = char_polynomial(v, sigma)?;
    Ok(f.evaluate(&g).is_zero())
}

/// True iff every `W_0` generator fixes `chi`.
pub fn chevalley_w0_invariance(datum: &RootDatum, folded: &FoldedDatum, chi: &GroupAlgebraElement) -> bool {
    folded.is_w0_invariant(datum, chi)
}

/// Weights of a minuscule module (one Weyl orbit, multiplicity one), in basis order.
fn minuscule_weights(datum: &RootDatum, v: &Module) -> Result<Vec<Weight>> {
    let weights = v.weights().to_vec();
    if v.weight_spaces().any(|(_, b)| b.len() != 1) {
        return Err(Error::input("module has a weight of multiplicity above one"));
    }
    let orbit = datum.weyl_orbit(&weights[0]);
    if orbit.len() != weights.len() {
        return Err(Error::input("weights do not form a single Weyl orbit"));
    }
    Ok(weights)
}

/// Factors `e^{λ_j} - e^{λ_j'}` for `j < j'`.
pub fn vandermonde_factors(datum: &RootDatum, v: &Module) -> Result<Vec<(Weight, Weight, GroupAlgebraElement)>> {
    let weights = minuscule_weights(datum, v)?;
    let mut out = Vec::new();
    for j in 0..weights.len() {
        for k in j + 1..weights.len() {
            let f = &GroupAlgebraElement::exp(weights[j].clone()) - &GroupAlgebraElement::exp(weights[k].clone());
            out.push((weights[j].clone(), weights[k].clone(), f));
        }
    }
    Ok(out)
}

/// `∏_{j<j'} (e^{λ_j} - e^{λ_j'})` over the weights of a minuscule module.
pub fn vandermonde_minuscule(datum: &RootDatum, v: &Module) -> Result<GroupAlgebraElement> {
    let mut out = GroupAlgebraElement::one(datum.rank());
    for (_, _, f) in vandermonde_factors(datum, v)? {
        out = &out * &f;
    }
    if out.is_zero() {
        return Err(Error::consistency("Vandermonde product vanishes"));
    }
    Ok(out)
}

/// The root `β` with `e^a - e^b = e^b (e^β - 1)`, if `a - b` is a root.
pub fn vandermonde_root(datum: &RootDatum, a: &Weight, b: &Weight, factor: &GroupAlgebraElement) -> Option<Weight> {
    let beta = a - b;
    if !datum.is_root(&beta) {
        return None;
    }
    let r = datum.rank();
    let rhs = &(&GroupAlgebraElement::exp(beta.clone()) - &GroupAlgebraElement::one(r)) * &GroupAlgebraElement::exp(b.clone());
    (rhs == *factor && !factor.is_zero()).then_some(beta)
}
