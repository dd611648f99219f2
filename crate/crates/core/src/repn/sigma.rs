//! σ-structures on modules, twisted characters, and the counts `r_V` and `ζ_O(V)`.

use super::Module;
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, Q};
use crate::rootdata::{GroupAlgebraElement, Lattice};
use crate::twist::{sigma_orbits, CoinvariantLattice, PinnedAutomorphism, SigmaOrbit};
use crate::RootDatum;
use num::One;

/// The map `V → W` sending `f_{i_1} ... f_{i_k} v_top` to `f_{σ(i_1)} ... f_{σ(i_k)} w_top`,
/// where `W` has highest weight `σ(λ)`. Satisfies `S e_i = e_{σ(i)} S` and `S f_i = f_{σ(i)} S`.
pub fn intertwiner(v: &Module, w: &Module, sigma: &PinnedAutomorphism) -> Result<SparseMatrix> {
    let (Some(lv), Some(words)) = (v.highest(), v.words()) else {
        return Err(Error::input("source module is not an explicitly built irreducible"));
    };
    let Some(lw) = w.highest() else {
        return Err(Error::input("target module has no highest weight"));
    };
    if sigma.apply(lv) != *lw || v.dim() != w.dim() || w.block(lw).len() != 1 {
        return Err(Error::input("target is not the σ-twist of the source"));
    }
    let top = vec![(w.block(lw)[0], Q::one())];
    let cols: Vec<Vec<(usize, Q)>> = words
        .iter()
        .map(|word| {
            let image: Vec<usize> = word.iter().map(|&i| sigma.node(i)).collect();
            w.apply_f_word(&image, &top)
        })
        .collect();
    let s = SparseMatrix::from_columns(w.dim(), cols);
    for i in 0..v.rank() {
        let j = sigma.node(i);
        if s.mul(v.e(i)) != w.e(j).mul(&s) || s.mul(v.f(i)) != w.f(j).mul(&s) {
            return Err(Error::consistency(format!("intertwiner relation fails for generator {}", i + 1)));
        }
    }
    Ok(s)
}

/// The σ-map of an irreducible module whose highest weight is σ-fixed, normalised to fix `v_top`.
pub fn sigma_structure(v: &Module, sigma: &PinnedAutomorphism) -> Result<SparseMatrix> {
    match v.highest() {
        Some(l) if sigma.is_fixed(l) => intertwiner(v, v, sigma),
        Some(l) => Err(Error::input(format!(
            "σ moves the highest weight {l}; build the module of σ(λ) and use an intertwiner"
        ))),
        None => Err(Error::input("σ-structure needs an explicitly built irreducible")),
    }
}

/// A copy of `v` carrying its σ-map.
pub fn with_sigma(v: &Module, sigma: &PinnedAutomorphism) -> Result<Module> {
    let s = sigma_structure(v, sigma)?;
    let mut out = v.clone();
    out.set_sigma_map(Some(s));
    Ok(out)
}

/// A module for `G ⋊ <σ>` restricting to `V`: `V` with its σ-map when `σ(λ) = λ`, otherwise the
/// induced module `V ⊕ σV ⊕ ... ⊕ σ^{d-1}V` on which σ shifts the summands cyclically.
pub fn sigma_module(v: &Module, sigma: &PinnedAutomorphism) -> Result<Module> {
    if v.highest().is_some_and(|l| sigma.is_fixed(l)) {
        return with_sigma(v, sigma);
    }
    let d = sigma.order();
    let n = v.dim();
    let mut total = v.clone();
    total.set_sigma_map(None);
    let mut cur = total.clone();
    for _ in 1..d {
        cur = super::twist(&cur, sigma)?;
        total = super::direct_sum(&total, &cur)?;
    }
    let s = SparseMatrix::from_triples(d * n, d * n, (0..d * n).map(|k| ((k + n) % (d * n), k, Q::one())));
    total.set_sigma_map(Some(s));
    total.check_sigma_map(sigma)?;
    Ok(total)
}

/// `Σ_{σμ = μ} tr(S | V(μ)) e^μ`.
pub fn twisted_character(v: &Module, sigma: &PinnedAutomorphism) -> Result<GroupAlgebraElement> {
    let s = v.sigma_map().ok_or_else(|| Error::input("module carries no σ-map"))?;
    let mut out = GroupAlgebraElement::zero(v.rank());
    for (mu, block) in v.weight_spaces() {
        if !sigma.is_fixed(mu) {
            continue;
        }
        let trace: Q = block.iter().map(|&b| s.get(b, b)).sum();
        out.add_term(mu.clone(), trace);
    }
    Ok(out.with_lattice(Lattice::Fixed))
}

/// `dim V|_{T^σ}(0)`: total multiplicity of weights in `(σ-1)X`.
pub fn r_v(v: &Module, sigma: &PinnedAutomorphism) -> usize {
    let lat = CoinvariantLattice::new(sigma);
    v.weight_spaces().filter(|(mu, _)| lat.in_image(mu)).map(|(_, b)| b.len()).sum()
}

/// `ζ_O(V) = Σ_{n≥1} dim V|_{T^σ}(nα)` for any root `α ∈ O`.
pub fn zeta(v: &Module, sigma: &PinnedAutomorphism, orbit: &SigmaOrbit) -> Result<u64> {
    let lat = CoinvariantLattice::new(sigma);
    let alpha = lat.class(&orbit.roots[0]);
    let Some(k) = alpha.free.iter().position(|&x| x != 0) else {
        return Err(Error::input("the orbit's roots restrict to torsion characters of T^σ"));
    };
    let mut total = 0u64;
    for (mu, block) in v.weight_spaces() {
        let c = lat.class(mu);
        if c.free[k] % alpha.free[k] != 0 {
            continue;
        }
        let n = c.free[k] / alpha.free[k];
        if n >= 1 && lat.scale(&alpha, n) == c {
            total += block.len() as u64;
        }
    }
    Ok(total)
}

/// `ζ_O(V)` for every σ-orbit of roots, in the order of [`sigma_orbits`].
pub fn zeta_all(datum: &RootDatum, v: &Module, sigma: &PinnedAutomorphism) -> Result<Vec<(SigmaOrbit, u64)>> {
    sigma_orbits(datum, sigma).into_iter().map(|o| zeta(v, sigma, &o).map(|z| (o, z))).collect()
}
