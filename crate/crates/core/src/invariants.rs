//! Invariants in `S_{σ(ν*)} ⊗ S_ν ⊗ V`, their leading terms and torus restrictions, and the
//! pairing matrix of `J(V) ⊗ J(V*) → J` with its determinant.
//!
//! `S_{σν}` is realized as the σ-twist of `S_ν` on the same basis, and `S_{σ(ν*)}` as the σ-twist
//! of the dual of `S_ν` on the dual basis, so the canonical pairing between them is the identity
//! matrix and no intertwiner is needed.

use crate::error::{Error, Result};
use crate::filtration::twisted_layers;
use crate::linalg::{kernel, solve, SparseMatrix, Q};
use crate::repn::{build_irreducible, dimension_cap, dual, equivariant_maps, tensor, twist, zeta_all, Module};
use crate::rootdata::laurent::determinant;
use crate::rootdata::{GroupAlgebraElement, Lattice, RootDatum, Weight};
use crate::twist::{fold, CoinvariantLattice, FoldedDatum, PinnedAutomorphism, SigmaOrbit};
use num::{One, Zero};
use serde_json::{json, Value};
use std::collections::{BTreeMap, HashMap, VecDeque};

/// Coefficients of `Σ σe_i^* ⊗ e_j ⊗ v_c` keyed by `(i, j, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTensor {
    pub nu: Weight,
    pub coeffs: BTreeMap<(usize, usize, usize), Q>,
}

/// The invariant space `(S_{σ(ν*)} ⊗ S_ν ⊗ V)^G` with an echelon basis.
#[derive(Clone, Debug)]
pub struct InvariantSpace {
    pub nu: Weight,
    /// `σν - ν`
    pub xi: Weight,
    sigma: PinnedAutomorphism,
    lower: Module,
    upper: Module,
    v: Module,
    top: usize,
    pub basis: Vec<InvariantTensor>,
}

/// Weight-zero vectors of `X ⊗ Y ⊗ Z` killed by every `e_i`, on the triple basis.
fn triple_invariants(
    x: &Module,
    y: &Module,
    z: &Module,
) -> Result<(Vec<(usize, usize, usize)>, Vec<Vec<Q>>)> {
    let mut triples = Vec::new();
    for i in 0..x.dim() {
        for j in 0..y.dim() {
            let need = -(x.weight(i) + y.weight(j));
            triples.extend(z.block(&need).iter().map(|&c| (i, j, c)));
        }
    }
    let n = triples.len();
    if n as u64 > dimension_cap() {
        return Err(Error::DimensionCap { dim: n as u64, cap: dimension_cap() });
    }
    let mut targets: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for k in 0..x.rank() {
        for (col, &(i, j, c)) in triples.iter().enumerate() {
            let moves = x.e(k).column(i).iter().map(|(a, v)| ((*a, j, c), v))
                .chain(y.e(k).column(j).iter().map(|(b, v)| ((i, *b, c), v)))
                .chain(z.e(k).column(c).iter().map(|(d, v)| ((i, j, *d), v)));
            for ((a, b, d), v) in moves {
                let row = *targets.entry((k, a, b, d)).or_insert_with(|| {
                    rows.push(vec![Q::zero(); n]);
                    rows.len() - 1
                });
                rows[row][col] += v;
            }
        }
    }
    Ok((triples, kernel(&rows, n)))
}

/// Exact basis of `(S_{σ(ν*)} ⊗ S_ν ⊗ V)^G`.
pub fn invariant_space(
    datum: &RootDatum,
    sigma: &PinnedAutomorphism,
    nu: &Weight,
    v: &Module,
) -> Result<InvariantSpace> {
    let upper = build_irreducible(datum, nu)?;
    invariant_space_with(sigma, upper, v)
}

fn invariant_space_with(sigma: &PinnedAutomorphism, upper: Module, v: &Module) -> Result<InvariantSpace> {
    let nu = upper.highest().cloned().ok_or_else(|| Error::input("S_ν must be a built irreducible"))?;
    let lower = twist(&dual(&upper)?, sigma)?;
    let (triples, kern) = triple_invariants(&lower, &upper, v)?;
    let basis = kern
        .into_iter()
        .map(|vec| InvariantTensor {
            nu: nu.clone(),
            coeffs: triples.iter().zip(vec).filter(|(_, c)| !c.is_zero()).map(|(&t, c)| (t, c)).collect(),
        })
        .collect();
    Ok(InvariantSpace {
        xi: &sigma.apply(&nu) - &nu,
        top: upper.block(&nu)[0],
        nu,
        sigma: sigma.clone(),
        lower,
        upper,
        v: v.clone(),
        basis,
    })
}

pub fn invariant_basis(
    datum: &RootDatum,
    sigma: &PinnedAutomorphism,
    nu: &Weight,
    v: &Module,
) -> Result<Vec<InvariantTensor>> {
    Ok(invariant_space(datum, sigma, nu, v)?.basis)
}

impl InvariantSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn module(&self) -> &Module {
        &self.v
    }

    /// `S_ν` as built.
    pub fn upper(&self) -> &Module {
        &self.upper
    }

    /// `S_{σ(ν*)}` as the σ-twist of the dual of `S_ν`.
    pub fn lower(&self) -> &Module {
        &self.lower
    }

    /// True iff `b` is killed by every `e_i` and `f_i` of the triple tensor action.
    pub fn is_invariant(&self, b: &InvariantTensor) -> bool {
        let (x, y, z) = (&self.lower, &self.upper, &self.v);
        (0..x.rank()).all(|k| {
            [(x.e(k), y.e(k), z.e(k)), (x.f(k), y.f(k), z.f(k))].iter().all(|(gx, gy, gz)| {
                let mut acc: BTreeMap<(usize, usize, usize), Q> = BTreeMap::new();
                for (&(i, j, c), val) in &b.coeffs {
                    for (a, w) in gx.column(i) {
                        *acc.entry((*a, j, c)).or_insert_with(Q::zero) += val * w;
                    }
                    for (bb, w) in gy.column(j) {
                        *acc.entry((i, *bb, c)).or_insert_with(Q::zero) += val * w;
                    }
                    for (d, w) in gz.column(c) {
                        *acc.entry((i, j, *d)).or_insert_with(Q::zero) += val * w;
                    }
                }
                acc.values().all(Zero::is_zero)
            })
        })
    }

    /// `ℓ(b)`: the component at (lowest covector, highest vector), in coordinates of `V(σν - ν)`.
    pub fn leading_term(&self, b: &InvariantTensor) -> Vec<Q> {
        let block = self.v.block(&self.xi);
        block
            .iter()
            .map(|&c| b.coeffs.get(&(self.top, self.top, c)).cloned().unwrap_or_else(Q::zero))
            .collect()
    }

    /// The unique invariant with the given leading term.
    pub fn with_leading_term(&self, u: &[Q]) -> Result<InvariantTensor> {
        let m = self.v.mult(&self.xi);
        if u.len() != m {
            return Err(Error::input(format!("leading term needs {m} coordinates")));
        }
        let leads: Vec<Vec<Q>> = self.basis.iter().map(|b| self.leading_term(b)).collect();
        let mat: Vec<Vec<Q>> = (0..m).map(|r| leads.iter().map(|l| l[r].clone()).collect()).collect();
        let x = if self.basis.is_empty() {
            u.iter().all(Zero::is_zero).then(Vec::new)
        } else {
            solve(&mat, u)
        };
        let x = x.ok_or_else(|| Error::consistency("vector is not the leading term of an invariant"))?;
        let mut coeffs: BTreeMap<(usize, usize, usize), Q> = BTreeMap::new();
        for (b, xk) in self.basis.iter().zip(&x) {
            if xk.is_zero() {
                continue;
            }
            for (t, c) in &b.coeffs {
                *coeffs.entry(*t).or_insert_with(Q::zero) += xk * c;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(InvariantTensor { nu: self.nu.clone(), coeffs })
    }

    /// `f_b|_T = Σ_i e^{σ(wt e_i)} v_{ii}`.
    pub fn restrict_to_torus(&self, b: &InvariantTensor) -> TorusFunction {
        let r = self.v.rank();
        let mut components: BTreeMap<usize, GroupAlgebraElement> = BTreeMap::new();
        for (&(i, j, c), val) in &b.coeffs {
            if i != j {
                continue;
            }
            let exp = self.sigma.apply(self.upper.weight(i));
            components
                .entry(c)
                .or_insert_with(|| GroupAlgebraElement::zero(r))
                .add_term(exp, val.clone());
        }
        components.retain(|_, x| !x.is_zero());
        TorusFunction { rank: r, components }
    }
}

/// `Σ_c x_c ⊗ v_c` with `x_c ∈ k[X(T)]`, keyed by the basis index `c` of `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusFunction {
    pub rank: usize,
    pub components: BTreeMap<usize, GroupAlgebraElement>,
}

impl TorusFunction {
    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// True iff within each weight space of `v` all exponents agree modulo the σ-fixed lattice.
    pub fn is_homogeneous(&self, v: &Module, sigma: &PinnedAutomorphism) -> bool {
        let mut reference: BTreeMap<Weight, Weight> = BTreeMap::new();
        for (&c, x) in &self.components {
            for w in x.terms().keys() {
                let base = reference.entry(v.weight(c).clone()).or_insert_with(|| w.clone());
                if !sigma.is_fixed(&(w - base)) {
                    return false;
                }
            }
        }
        true
    }

    /// The pointwise pairing `Σ_c f_c g_c` against a function valued in the dual basis.
    pub fn pair(&self, other: &TorusFunction) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::zero(self.rank);
        for (c, x) in &self.components {
            if let Some(y) = other.components.get(c) {
                out = &out + &(x * y);
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.components.iter().map(|(c, x)| json!({"basis": c, "coeff": x.to_json()})).collect())
    }
}

/// The canonical invariant `σ_η ∈ S_{σ(η*)} ⊗ S_η`, normalized to leading term 1.
pub fn canonical_invariant(datum: &RootDatum, sigma: &PinnedAutomorphism, eta: &Weight) -> Result<(InvariantSpace, InvariantTensor)> {
    if !sigma.is_fixed(eta) {
        return Err(Error::input(format!("{eta} is not σ-fixed")));
    }
    let space = invariant_space(datum, sigma, eta, &crate::repn::trivial(datum.rank()))?;
    let b = space.with_leading_term(&[Q::one()])?;
    Ok((space, b))
}

/// The projection `X ⊗ Y → Z` onto the Cartan component sending `x0 ⊗ y0` to `z0`.
fn cartan_projection(x: &Module, y: &Module, z: &Module, x0: usize, y0: usize, z0: usize) -> Result<SparseMatrix> {
    let xy = tensor(x, y)?;
    let maps = equivariant_maps(&xy, z)?;
    let [m] = maps.as_slice() else {
        return Err(Error::consistency(format!("Cartan component occurs {} times", maps.len())));
    };
    let scale = m.get(z0, x0 * y.dim() + y0);
    if scale.is_zero() {
        return Err(Error::consistency("Cartan projection vanishes on the extremal vector"));
    }
    Ok(m.scale(&scale.recip()))
}

/// `σ_η · b` in `(S_{σ((ν+η)*)} ⊗ S_{ν+η} ⊗ V)^G` via the Cartan projections, for σ-fixed `η`.
pub fn multiply_by_canonical(
    datum: &RootDatum,
    space: &InvariantSpace,
    b: &InvariantTensor,
    eta: &Weight,
) -> Result<(InvariantSpace, InvariantTensor)> {
    let (eta_space, s_eta) = canonical_invariant(datum, &space.sigma, eta)?;
    let target = invariant_space(datum, &space.sigma, &(&space.nu + eta), &space.v)?;
    let proj_lower = cartan_projection(&space.lower, &eta_space.lower, &target.lower, space.top, eta_space.top, target.top)?;
    let proj_upper = cartan_projection(&space.upper, &eta_space.upper, &target.upper, space.top, eta_space.top, target.top)?;
    let (dl, du) = (eta_space.lower.dim(), eta_space.upper.dim());
    let mut coeffs: BTreeMap<(usize, usize, usize), Q> = BTreeMap::new();
    for (&(i, j, c), x) in &b.coeffs {
        for (&(k, l, _), y) in &s_eta.coeffs {
            let xy = x * y;
            for (p, u) in proj_lower.column(i * dl + k) {
                for (q, w) in proj_upper.column(j * du + l) {
                    *coeffs.entry((*p, *q, c)).or_insert_with(Q::zero) += &xy * u * w;
                }
            }
        }
    }
    coeffs.retain(|_, c| !c.is_zero());
    let prod = InvariantTensor { nu: target.nu.clone(), coeffs };
    Ok((target, prod))
}

/// One basis element of `J(V)` restricted to the torus.
#[derive(Clone, Debug)]
pub struct JElement {
    pub xi: Weight,
    pub nu: Weight,
    /// Leading term in coordinates of `V(ξ)`.
    pub leading: Vec<Q>,
    pub function: TorusFunction,
}

impl JElement {
    pub fn label(&self) -> Value {
        json!({"xi": self.xi.0, "nu": self.nu.0})
    }
}

/// Weights of `V` in `(σ-1)X`, in increasing order.
pub fn coinvariant_zero_weights(v: &Module, sigma: &PinnedAutomorphism) -> Vec<Weight> {
    let lat = CoinvariantLattice::new(sigma);
    v.weight_spaces().map(|(w, _)| w).filter(|w| lat.in_image(w)).cloned().collect()
}

/// Homogeneous basis elements `f_b` over the given weights, one per twisted graded layer vector.
pub fn j_elements(datum: &RootDatum, sigma: &PinnedAutomorphism, v: &Module, xis: &[Weight]) -> Result<Vec<JElement>> {
    let mut uppers: HashMap<Weight, Module> = HashMap::new();
    let mut out = Vec::new();
    for xi in xis {
        for layer in twisted_layers(datum, v, sigma, xi)? {
            let upper = match uppers.get(&layer.nu) {
                Some(m) => m.clone(),
                None => {
                    let m = build_irreducible(datum, &layer.nu)?;
                    uppers.insert(layer.nu.clone(), m.clone());
                    m
                }
            };
            let space = invariant_space_with(sigma, upper, v)?;
            for u in &layer.new_vectors {
                let b = space.with_leading_term(u)?;
                let function = space.restrict_to_torus(&b);
                if !function.is_homogeneous(v, sigma) {
                    return Err(Error::consistency("torus restriction is not homogeneous"));
                }
                out.push(JElement { xi: xi.clone(), nu: layer.nu.clone(), leading: u.clone(), function });
            }
        }
    }
    Ok(out)
}

/// The matrix of `⟨·,·⟩_V : J(V) ⊗ J(V*) → J` on the torus.
#[derive(Clone, Debug)]
pub struct PairingMatrix {
    pub rows: Vec<JElement>,
    pub cols: Vec<JElement>,
    /// Entries over the σ-fixed characters.
    pub entries: Vec<Vec<GroupAlgebraElement>>,
    pub determinant: GroupAlgebraElement,
    /// Multiplicity of each positive orbit's divisor in the determinant.
    pub factored: Vec<(SigmaOrbit, u32)>,
    /// Determinant with all orbit divisors removed.
    pub cofactor: GroupAlgebraElement,
}

impl PairingMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }
}

pub fn pairing_matrix(datum: &RootDatum, sigma: &PinnedAutomorphism, v: &Module) -> Result<PairingMatrix> {
    let folded = fold(datum, sigma)?;
    pairing_matrix_with(datum, &folded, v)
}

pub fn pairing_matrix_with(datum: &RootDatum, folded: &FoldedDatum, v: &Module) -> Result<PairingMatrix> {
    let sigma = &folded.sigma;
    let r = datum.rank();
    let xis = coinvariant_zero_weights(v, sigma);
    let rows = j_elements(datum, sigma, v, &xis)?;
    let vd = dual(v)?;
    let neg: Vec<Weight> = xis.iter().map(|x| -x).collect();
    let cols = j_elements(datum, sigma, &vd, &neg)?;
    if rows.len() != cols.len() {
        return Err(Error::consistency(format!(
            "pairing matrix is not square: {} rows, {} columns",
            rows.len(),
            cols.len()
        )));
    }
    let n = rows.len();
    if n > 20 {
        return Err(Error::input(format!("pairing matrix of size {n} is too large for determinant expansion")));
    }
    let mut entries = Vec::with_capacity(n);
    for a in &rows {
        let mut row = Vec::with_capacity(n);
        for b in &cols {
            let x = a.function.pair(&b.function).into_fixed(sigma.perm())?;
            if !folded.is_w0_invariant(datum, &x) {
                return Err(Error::consistency(format!("pairing entry {x} is not W0-invariant")));
            }
            row.push(x);
        }
        entries.push(row);
    }
    let det = determinant(&entries, r).with_lattice(Lattice::Fixed);
    let mut cofactor = det.clone();
    let mut factored = Vec::new();
    if !det.is_zero() {
        for orbit in crate::twist::sigma_orbits(datum, sigma) {
            if !datum.positive_roots().contains(&orbit.roots[0]) {
                continue;
            }
            let (k, rest) = cofactor.divide_out(&orbit.divisor());
            cofactor = rest;
            factored.push((orbit, k));
        }
    }
    Ok(PairingMatrix { rows, cols, entries, determinant: det, factored, cofactor })
}

/// `∏_O (e^{α_O} ∓ 1)^{ζ_O(V)}` over all σ-orbits of roots.
pub fn predicted_determinant(datum: &RootDatum, sigma: &PinnedAutomorphism, v: &Module) -> Result<GroupAlgebraElement> {
    let mut out = GroupAlgebraElement::one(datum.rank());
    for (orbit, z) in zeta_all(datum, v, sigma)? {
        out = &out * &orbit.divisor().pow(z as u32);
    }
    Ok(out.with_lattice(Lattice::Fixed))
}

#[derive(Clone, Debug)]
pub struct DeterminantReport {
    pub matches: bool,
    /// `det / predicted` when it is a nonzero constant.
    pub unit: Option<Q>,
    pub det: GroupAlgebraElement,
    pub predicted: GroupAlgebraElement,
    /// Whether `predicted` divides `det` and `det` divides `predicted`.
    pub divides_both_ways: bool,
}

pub fn determinant_report(det: &GroupAlgebraElement, predicted: &GroupAlgebraElement) -> DeterminantReport {
    let unit = det.exact_div(predicted).and_then(|q| q.as_constant()).filter(|c| !c.is_zero());
    let divides_both_ways = det.exact_div(predicted).is_some() && predicted.exact_div(det).is_some();
    DeterminantReport { matches: unit.is_some(), unit, det: det.clone(), predicted: predicted.clone(), divides_both_ways }
}

pub fn determinant_check(datum: &RootDatum, sigma: &PinnedAutomorphism, v: &Module) -> Result<DeterminantReport> {
    let m = pairing_matrix(datum, sigma, v)?;
    let predicted = predicted_determinant(datum, sigma, v)?;
    Ok(determinant_report(&m.determinant, &predicted))
}

type Unit = (Q, Weight);

fn unit_div(a: &Unit, b: &Unit) -> Unit {
    (&a.0 / &b.0, &a.1 - &b.1)
}

/// True iff `m[i][j] = r_i c_j t[i][j]` for units `r_i, c_j` (nonzero rational times monomial).
pub fn equal_up_to_row_col_units(m: &[Vec<GroupAlgebraElement>], t: &[Vec<GroupAlgebraElement>]) -> bool {
    let n = m.len();
    if t.len() != n || m.iter().chain(t).any(|row| row.len() != m.first().map_or(0, Vec::len)) {
        return false;
    }
    let ncols = m.first().map_or(0, Vec::len);
    for i in 0..n {
        for j in 0..ncols {
            if m[i][j].is_zero() != t[i][j].is_zero() {
                return false;
            }
        }
    }
    let one = |rank: usize| (Q::one(), Weight::zero(rank));
    let rank = m.iter().flatten().chain(t.iter().flatten()).next().map_or(0, GroupAlgebraElement::rank);
    let mut rows: Vec<Option<Unit>> = vec![None; n];
    let mut cols: Vec<Option<Unit>> = vec![None; ncols];
    for start in 0..n {
        if rows[start].is_some() {
            continue;
        }
        rows[start] = Some(one(rank));
        // breadth-first over the bipartite graph of nonzero entries
        let mut queue = VecDeque::from([(true, start)]);
        while let Some((is_row, k)) = queue.pop_front() {
            if is_row {
                let rk = rows[k].clone().unwrap();
                for j in 0..ncols {
                    if m[k][j].is_zero() {
                        continue;
                    }
                    let Some(ratio) = m[k][j].unit_ratio(&t[k][j]) else { return false };
                    let cj = unit_div(&ratio, &rk);
                    match &cols[j] {
                        Some(existing) if *existing != cj => return false,
                        Some(_) => {}
                        None => {
                            cols[j] = Some(cj);
                            queue.push_back((false, j));
                        }
                    }
                }
            } else {
                let ck = cols[k].clone().unwrap();
                for i in 0..n {
                    if m[i][k].is_zero() {
                        continue;
                    }
                    let Some(ratio) = m[i][k].unit_ratio(&t[i][k]) else { return false };
                    let ri = unit_div(&ratio, &ck);
                    match &rows[i] {
                        Some(existing) if *existing != ri => return false,
                        Some(_) => {}
                        None => {
                            rows[i] = Some(ri);
                            queue.push_back((true, i));
                        }
                    }
                }
            }
        }
    }
    // every nonzero entry was compared when its row was dequeued
    true
}
