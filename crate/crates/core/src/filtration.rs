//! The multi-filtration `fil_λ V(ν) = ⋂_α ker E_α^{⟨λ,α^vee⟩+1}` on weight spaces, its graded
//! dimensions, the minimal weights `ν^h` and the twisted graded dimensions over `ν^h + X^{+,σ}`.

use crate::error::{Error, Result};
use crate::linalg::{kernel, Subspace, Q};
use crate::repn::Module;
use crate::rootdata::{RootDatum, Weight};
use crate::twist::{CoinvariantLattice, PinnedAutomorphism};
use num::{Integer, Zero};
use serde_json::{json, Value};
use std::collections::{BTreeMap, HashMap};

/// `Σ_λ c_λ q^λ` with `λ ∈ ℕ^Δ`; zero coefficients omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiWeightPolynomial(pub BTreeMap<Vec<i64>, u64>);

impl MultiWeightPolynomial {
    pub fn coefficient(&self, lambda: &[i64]) -> u64 {
        self.0.get(lambda).copied().unwrap_or(0)
    }

    /// Value at `q_α = 1` for all `α`.
    pub fn eval_at_one(&self) -> u64 {
        self.0.values().sum()
    }

    /// Single-variable specialisation `q_α = q`.
    pub fn specialize_equal(&self) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        for (l, c) in &self.0 {
            *out.entry(l.iter().sum()).or_default() += c;
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(|(l, c)| json!({"lambda": l, "coeff": c})).collect())
    }
}

/// Per-weight filtration data of a module.
#[derive(Clone, Debug)]
pub struct FiltrationProfile {
    pub nu: Weight,
    pub mult: usize,
    /// `N_α(ν) = max{n ≥ 0 : V(ν + nα) ≠ 0}` per simple root.
    pub bounds: Vec<usize>,
    /// `dim fil^α_i V(ν)` for `0 ≤ i ≤ N_α`.
    pub fil_dims: Vec<Vec<usize>>,
    pub gr: MultiWeightPolynomial,
}

/// Kernel conditions for `fil^α_i` on one weight space, in block coordinates.
pub struct WeightFiltration<'a> {
    module: &'a Module,
    block: Vec<usize>,
    bounds: Vec<usize>,
    /// `constraints[α][i]`: rows of `E_α^{i+1}` restricted to `V(ν)`, for `i < N_α`.
    constraints: Vec<Vec<Vec<Vec<Q>>>>,
}

fn check_simple(module: &Module, alpha: usize) -> Result<()> {
    if alpha >= module.rank() {
        return Err(Error::input(format!("simple root index {} out of range", alpha + 1)));
    }
    Ok(())
}

/// Rows of `X^k` restricted to the columns `block`.
fn power_rows(x: &crate::linalg::SparseMatrix, block: &[usize], k: usize) -> Vec<Vec<Q>> {
    let images: Vec<Vec<(usize, Q)>> = block
        .iter()
        .map(|&b| (0..k).fold(vec![(b, Q::from_integer(1.into()))], |acc, _| x.apply_sparse(&acc)))
        .collect();
    rows_of(&images, block.len())
}

/// Divides all vectors by one common rational so the entries become coprime integers.
fn make_primitive(images: &mut [Vec<(usize, Q)>]) {
    let mut num = num::BigInt::from(0);
    let mut den = num::BigInt::from(1);
    for (_, c) in images.iter().flatten() {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        return;
    }
    let scale = Q::new(den, num);
    for (_, c) in images.iter_mut().flatten() {
        *c *= &scale;
    }
}

/// Dense rows of the matrix whose columns are the sparse `images`.
fn rows_of(images: &[Vec<(usize, Q)>], ncols: usize) -> Vec<Vec<Q>> {
    let mut rows: BTreeMap<usize, Vec<Q>> = BTreeMap::new();
    for (col, img) in images.iter().enumerate() {
        for (r, c) in img {
            rows.entry(*r).or_insert_with(|| vec![Q::from_integer(0.into()); ncols])[col] = c.clone();
        }
    }
    rows.into_values().collect()
}

/// Nonzero rows of the reduced echelon form.
fn reduced(mut rows: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let rank = crate::linalg::rref(&mut rows).len();
    rows.truncate(rank);
    rows
}

fn kernel_dim(rows: &[Vec<Q>], n: usize) -> usize {
    kernel(rows, n).len()
}

/// `N_α(ν)`; zero when `V(ν) = 0`.
pub fn stabilization_bound(datum: &RootDatum, v: &Module, nu: &Weight, alpha: usize) -> Result<usize> {
    check_simple(v, alpha)?;
    if v.mult(nu) == 0 {
        return Ok(0);
    }
    let a = datum.simple_root(alpha);
    let mut n = 0;
    let mut x = nu + &a;
    while v.mult(&x) > 0 {
        n += 1;
        x = &x + &a;
    }
    Ok(n)
}

impl<'a> WeightFiltration<'a> {
    pub fn new(datum: &RootDatum, module: &'a Module, nu: &Weight) -> Result<Self> {
        if nu.rank() != module.rank() {
            return Err(Error::input("weight rank does not match the module"));
        }
        let block = module.block(nu).to_vec();
        let bounds: Vec<usize> =
            (0..module.rank()).map(|a| stabilization_bound(datum, module, nu, a)).collect::<Result<_>>()?;
        let constraints = (0..module.rank())
            .map(|a| {
                let mut images: Vec<Vec<(usize, Q)>> =
                    block.iter().map(|&b| vec![(b, Q::from_integer(1.into()))]).collect();
                (0..bounds[a])
                    .map(|_| {
                        images = images.iter().map(|img| module.e(a).apply_sparse(img)).collect();
                        make_primitive(&mut images);
                        reduced(rows_of(&images, block.len()))
                    })
                    .collect()
            })
            .collect();
        Ok(WeightFiltration { module, block, bounds, constraints })
    }

    pub fn mult(&self) -> usize {
        self.block.len()
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn block(&self) -> &[usize] {
        &self.block
    }

    pub fn module(&self) -> &Module {
        self.module
    }

    fn rows_for(&self, alpha: usize, i: i64) -> Option<&Vec<Vec<Q>>> {
        if i < 0 {
            return None;
        }
        self.constraints[alpha].get(i as usize)
    }

    /// `fil^α_i V(ν)`; the zero space for `i < 0`.
    pub fn fil_alpha(&self, alpha: usize, i: i64) -> Subspace {
        let n = self.mult();
        if i < 0 {
            return Subspace::zero(n);
        }
        match self.rows_for(alpha, i) {
            Some(rows) => Subspace::span(n, kernel(rows, n)),
            None => Subspace::full(n),
        }
    }

    /// `fil_λ V(ν)` for `λ` in fundamental-weight coordinates.
    pub fn fil(&self, lambda: &[i64]) -> Subspace {
        let n = self.mult();
        if lambda.iter().any(|&x| x < 0) {
            return Subspace::zero(n);
        }
        let rows: Vec<Vec<Q>> = lambda
            .iter()
            .enumerate()
            .filter_map(|(a, &l)| self.rows_for(a, l))
            .flat_map(|r| r.iter().cloned())
            .collect();
        if rows.is_empty() {
            return Subspace::full(n);
        }
        Subspace::span(n, kernel(&rows, n))
    }

    /// Indices `i` in `[0, N_α]` where `fil^α_i` jumps; `gr_λ` vanishes unless every `λ_α` is one.
    fn jumps(&self, alpha: usize) -> Vec<i64> {
        let n = self.mult();
        let mut prev = n;
        let mut out = Vec::new();
        for i in 0..=self.bounds[alpha] {
            let rank = self.constraints[alpha].get(i).map_or(0, Vec::len);
            if rank != prev {
                out.push(i as i64);
            }
            prev = rank;
        }
        out
    }

    /// Graded dimensions over the box `∏ [0, N_α]`.
    pub fn gr_polynomial(&self) -> MultiWeightPolynomial {
        let r = self.bounds.len();
        let jumps: Vec<Vec<i64>> = (0..r).map(|a| self.jumps(a)).collect();
        let sizes: Vec<usize> = jumps.iter().map(|j| j.len().saturating_sub(1)).collect();
        let mut cache: HashMap<Vec<i64>, Subspace> = HashMap::new();
        let mut out = BTreeMap::new();
        if jumps.iter().any(Vec::is_empty) {
            return MultiWeightPolynomial(out);
        }
        for idx in box_points(&sizes) {
            let lambda: Vec<i64> = idx.iter().enumerate().map(|(a, &k)| jumps[a][k as usize]).collect();
            let fil = self.fil(&lambda);
            let mut below = Subspace::zero(self.mult());
            for a in 0..r {
                if idx[a] > 0 {
                    let mut p = idx.clone();
                    p[a] -= 1;
                    below = below.sum(&cache[&p]);
                }
            }
            let g = fil.dim() - below.dim();
            if g > 0 {
                out.insert(lambda, g as u64);
            }
            cache.insert(idx, fil);
        }
        MultiWeightPolynomial(out)
    }
}

/// Lattice points of `∏ [0, b_k]` in lexicographic order.
fn box_points(bounds: &[usize]) -> Vec<Vec<i64>> {
    let mut pts: Vec<Vec<i64>> = vec![Vec::new()];
    for &b in bounds {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (0..=b as i64).map(move |x| {
                    let mut p = p.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    pts
}

/// `dim ker E_α^{i+1}` on `V(ν)`.
pub fn fil_alpha_dim(datum: &RootDatum, v: &Module, nu: &Weight, alpha: usize, i: usize) -> Result<usize> {
    check_simple(v, alpha)?;
    let block = v.block(nu);
    if block.is_empty() {
        return Ok(0);
    }
    if i >= stabilization_bound(datum, v, nu, alpha)? {
        return Ok(block.len());
    }
    Ok(kernel_dim(&power_rows(v.e(alpha), block, i + 1), block.len()))
}

/// The same dimension through lowering operators: `ker F_α^{⟨ν,α^vee⟩+i+1}`, or zero when that
/// exponent is not positive.
pub fn fil_alpha_dim_via_f(v: &Module, nu: &Weight, alpha: usize, i: usize) -> Result<usize> {
    check_simple(v, alpha)?;
    let block = v.block(nu);
    if block.is_empty() {
        return Ok(0);
    }
    let k = nu.0[alpha] + i as i64 + 1;
    if k <= 0 {
        return Ok(0);
    }
    Ok(kernel_dim(&power_rows(v.f(alpha), block, k as usize), block.len()))
}

pub fn multifil_dim(datum: &RootDatum, v: &Module, nu: &Weight, lambda: &Weight) -> Result<usize> {
    if lambda.rank() != v.rank() {
        return Err(Error::input("rank mismatch"));
    }
    Ok(WeightFiltration::new(datum, v, nu)?.fil(&lambda.0).dim())
}

pub fn gr_polynomial(datum: &RootDatum, v: &Module, nu: &Weight) -> Result<MultiWeightPolynomial> {
    Ok(WeightFiltration::new(datum, v, nu)?.gr_polynomial())
}

pub fn profile(datum: &RootDatum, v: &Module, nu: &Weight) -> Result<FiltrationProfile> {
    let wf = WeightFiltration::new(datum, v, nu)?;
    let fil_dims = (0..v.rank())
        .map(|a| (0..=wf.bounds[a] as i64).map(|i| wf.fil_alpha(a, i).dim()).collect())
        .collect();
    Ok(FiltrationProfile {
        nu: nu.clone(),
        mult: wf.mult(),
        bounds: wf.bounds.clone(),
        fil_dims,
        gr: wf.gr_polynomial(),
    })
}

/// The minimal `ν ≥ ν0` (coordinatewise) with `σ(ν) - ν = ξ`.
pub fn nu_h(sigma: &PinnedAutomorphism, nu0: &Weight, xi: &Weight) -> Result<Weight> {
    let r = sigma.rank();
    if nu0.rank() != r || xi.rank() != r {
        return Err(Error::input("rank mismatch"));
    }
    if !nu0.is_dominant() {
        return Err(Error::input(format!("{nu0} is not dominant")));
    }
    // (σν - ν)_{σ(j)} = ν_j - ν_{σ(j)}, so ν is determined along each node cycle by one value
    let mut nu = vec![0i64; r];
    for cycle in sigma.node_orbits() {
        let mut offsets = vec![0i64; cycle.len()];
        for t in 1..cycle.len() {
            offsets[t] = offsets[t - 1] + xi.0[cycle[t]];
        }
        if offsets[cycle.len() - 1] + xi.0[cycle[0]] != 0 {
            return Err(Error::input(format!("{xi} is not in the image of σ - 1")));
        }
        let base = cycle.iter().zip(&offsets).map(|(&j, o)| nu0.0[j] + o).max().unwrap();
        for (&j, o) in cycle.iter().zip(&offsets) {
            nu[j] = base - o;
        }
    }
    let nu = Weight(nu);
    debug_assert_eq!(&sigma.apply(&nu) - &nu, *xi);
    Ok(nu)
}

/// One homogeneous layer of the twisted Rees module: vectors of `fil_ν V(ξ)` (block coordinates)
/// complementary to the contributions of all `ν - ω_O` in the same index set.
#[derive(Clone, Debug)]
pub struct TwistedLayer {
    pub nu: Weight,
    pub new_vectors: Vec<Vec<Q>>,
}

/// Homogeneous generators over `ν^h + X^{+,σ}` for the weight `ξ ∈ (σ-1)X`.
pub fn twisted_layers(
    datum: &RootDatum,
    v: &Module,
    sigma: &PinnedAutomorphism,
    xi: &Weight,
) -> Result<Vec<TwistedLayer>> {
    if !CoinvariantLattice::new(sigma).in_image(xi) {
        return Err(Error::input(format!("{xi} is not in (σ-1)X")));
    }
    let wf = WeightFiltration::new(datum, v, xi)?;
    if wf.mult() == 0 {
        return Ok(Vec::new());
    }
    let base = nu_h(sigma, &Weight::zero(v.rank()), xi)?;
    let orbits = sigma.node_orbits();
    let bounds: Vec<usize> = orbits
        .iter()
        .map(|o| o.iter().map(|&a| (wf.bounds[a] as i64 - base.0[a]).max(0)).max().unwrap() as usize)
        .collect();
    let omega = |k: usize| -> Weight {
        let mut w = Weight::zero(v.rank());
        for &a in &orbits[k] {
            w.0[a] = 1;
        }
        w
    };
    let mut cache: HashMap<Vec<i64>, Subspace> = HashMap::new();
    let mut out = Vec::new();
    for c in box_points(&bounds) {
        let nu = c.iter().enumerate().fold(base.clone(), |acc, (k, &ck)| &acc + &omega(k).scaled(ck));
        let fil = wf.fil(&nu.0);
        let mut below = Subspace::zero(wf.mult());
        for k in 0..orbits.len() {
            if c[k] > 0 {
                let mut p = c.clone();
                p[k] -= 1;
                below = below.sum(&cache[&p]);
            }
        }
        let chosen = below.complement_from(fil.basis());
        if !chosen.is_empty() {
            out.push(TwistedLayer { nu: nu.clone(), new_vectors: chosen.iter().map(|&i| fil.basis()[i].clone()).collect() });
        }
        cache.insert(c, fil);
    }
    Ok(out)
}

/// Graded dimensions `ν ↦ dim gr_ν V(ξ)` over `ν^h + X^{+,σ}`.
pub fn twisted_graded_dims(
    datum: &RootDatum,
    v: &Module,
    sigma: &PinnedAutomorphism,
    xi: &Weight,
) -> Result<BTreeMap<Weight, usize>> {
    Ok(twisted_layers(datum, v, sigma, xi)?.into_iter().map(|l| (l.nu, l.new_vectors.len())).collect())
}

/// `dim fil_ν k[T] = Σ_{μ dominant, μ ⪯ ν} |Wμ|`.
pub fn fil_kt_dim(datum: &RootDatum, nu: &Weight) -> Result<u64> {
    if nu.rank() != datum.rank() || !nu.is_dominant() {
        return Err(Error::input(format!("{nu} is not a dominant weight of rank {}", datum.rank())));
    }
    Ok(datum.dominant_weights_below(nu).iter().map(|m| datum.weyl_orbit(m).len() as u64).sum())
}
