//! Pinned diagram automorphisms, σ-orbits of roots, the folded root datum and `W_0 = W^σ`,
//! and arithmetic in the coinvariant lattice `X/(σ-1)X`.

use crate::error::{Error, Result};
use crate::linalg::int::{mat_vec, smith_normal_form};
use crate::rootdata::{classify_cartan, Factor, GroupAlgebraElement, RootDatum, SimpleType, Weight};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

/// A permutation of the Dynkin nodes preserving the Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PinnedAutomorphism {
    perm: Vec<usize>,
    order: usize,
}

impl PinnedAutomorphism {
    pub fn identity(rank: usize) -> Self {
        PinnedAutomorphism { perm: (0..rank).collect(), order: 1 }
    }

    /// Checks that `perm` is a permutation with `a[perm i][perm j] = a[i][j]`.
    pub fn validate(datum: &RootDatum, perm: Vec<usize>) -> Result<Self> {
        let r = datum.rank();
        if perm.len() != r {
            return Err(Error::input(format!("permutation has {} entries, rank is {r}", perm.len())));
        }
        let mut hit = vec![false; r];
        for &p in &perm {
            if p >= r || std::mem::replace(&mut hit[p], true) {
                return Err(Error::input("not a permutation of the nodes"));
            }
        }
        let a = datum.cartan();
        for i in 0..r {
            for j in 0..r {
                if a[perm[i]][perm[j]] != a[i][j] {
                    return Err(Error::input(format!(
                        "permutation is not Cartan-compatible at nodes {} and {}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let mut order = 1;
        let mut cur = perm.clone();
        while cur.iter().enumerate().any(|(i, &p)| i != p) {
            cur = cur.iter().map(|&p| perm[p]).collect();
            order += 1;
        }
        Ok(PinnedAutomorphism { perm, order })
    }

    /// Parses cycle notation over 1-based node labels, e.g. `(1 3 4)` or `(1 2)(3 4)`.
    /// The empty string and `()` denote the identity.
    pub fn from_cycles(datum: &RootDatum, s: &str) -> Result<Self> {
        let perm = parse_cycles(s, datum.rank())?;
        Self::validate(datum, perm)
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// Image of node `i`.
    pub fn node(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn inverse_node(&self, i: usize) -> usize {
        self.perm.iter().position(|&p| p == i).expect("permutation")
    }

    /// `σ(λ)`, determined by `σ(ω_i) = ω_{σ(i)}`.
    pub fn apply(&self, w: &Weight) -> Weight {
        let mut out = vec![0; w.rank()];
        for (i, &x) in w.0.iter().enumerate() {
            out[self.perm[i]] = x;
        }
        Weight(out)
    }

    pub fn apply_inverse(&self, w: &Weight) -> Weight {
        Weight(self.perm.iter().map(|&p| w.0[p]).collect())
    }

    pub fn apply_power(&self, w: &Weight, k: usize) -> Weight {
        (0..k % self.order).fold(w.clone(), |acc, _| self.apply(&acc))
    }

    pub fn is_fixed(&self, w: &Weight) -> bool {
        self.apply(w) == *w
    }

    pub fn compose(&self, other: &PinnedAutomorphism) -> PinnedAutomorphism {
        let perm: Vec<usize> = other.perm.iter().map(|&p| self.perm[p]).collect();
        let mut order = 1;
        let mut cur = perm.clone();
        while cur.iter().enumerate().any(|(i, &p)| i != p) {
            cur = cur.iter().map(|&p| perm[p]).collect();
            order += 1;
        }
        PinnedAutomorphism { perm, order }
    }

    /// Cycles on the nodes, fixed points included, each starting at its smallest node.
    pub fn node_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.rank()];
        let mut out = Vec::new();
        for start in 0..self.rank() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.perm[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.perm[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Canonical cycle string with 1-based labels; the identity is `()`.
    pub fn cycle_string(&self) -> String {
        let cycles: Vec<String> = self
            .node_orbits()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| format!("({})", c.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")))
            .collect();
        if cycles.is_empty() {
            "()".to_string()
        } else {
            cycles.concat()
        }
    }
}

impl fmt::Display for PinnedAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_string())
    }
}

pub fn parse_cycles(s: &str, rank: usize) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (0..rank).collect();
    let mut moved = vec![false; rank];
    let s = s.trim();
    let mut rest = s;
    while !rest.is_empty() {
        let body_end = rest
            .strip_prefix('(')
            .and_then(|r| r.find(')'))
            .ok_or_else(|| Error::input(format!("malformed cycle notation {s:?}")))?;
        let body = &rest[1..body_end + 1];
        rest = rest[body_end + 2..].trim_start();
        let labels: Vec<usize> = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .ok()
                    .filter(|&n| n >= 1 && n <= rank)
                    .map(|n| n - 1)
                    .ok_or_else(|| Error::input(format!("bad node label {t:?} in {s:?}")))
            })
            .collect::<Result<_>>()?;
        for (k, &a) in labels.iter().enumerate() {
            if std::mem::replace(&mut moved[a], true) {
                return Err(Error::input(format!("node {} repeated in {s:?}", a + 1)));
            }
            perm[a] = labels[(k + 1) % labels.len()];
        }
    }
    Ok(perm)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitType {
    A,
    BcMinus,
    BcPlus,
}

impl OrbitType {
    pub fn name(self) -> &'static str {
        match self {
            OrbitType::A => "A",
            OrbitType::BcMinus => "BCminus",
            OrbitType::BcPlus => "BCplus",
        }
    }
}

/// A `<σ>`-orbit of roots with its orbit sum `α_O` and type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaOrbit {
    /// `β, σβ, σ²β, ...`
    pub roots: Vec<Weight>,
    pub orbit_type: OrbitType,
    pub alpha: Weight,
    pub divisor_sign: i8,
    /// Index of the orbit sharing `α_O`, for the two BC types.
    pub partner: Option<usize>,
}

impl SigmaOrbit {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.roots.contains(w)
    }

    /// The divisor `e^{α_O} - 1`, or `e^{α_O} + 1` for type BC⁺.
    pub fn divisor(&self) -> GroupAlgebraElement {
        let r = self.alpha.rank();
        let c = crate::linalg::q(-i64::from(self.divisor_sign));
        &GroupAlgebraElement::exp(self.alpha.clone()) + &GroupAlgebraElement::constant(r, c)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "roots": self.roots.iter().map(|w| w.0.clone()).collect::<Vec<_>>(),
            "alpha": self.alpha.0,
            "type": self.orbit_type.name(),
            "divisor_sign": self.divisor_sign,
        })
    }
}

/// All σ-orbits of roots, in order of first appearance in `datum.roots()`.
pub fn sigma_orbits(datum: &RootDatum, sigma: &PinnedAutomorphism) -> Vec<SigmaOrbit> {
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut orbits = Vec::new();
    for beta in datum.roots() {
        if seen.contains(&beta) {
            continue;
        }
        let mut roots = vec![beta.clone()];
        seen.insert(beta.clone());
        let mut x = sigma.apply(&beta);
        while x != beta {
            seen.insert(x.clone());
            roots.push(x.clone());
            x = sigma.apply(&x);
        }
        let alpha = roots.iter().fold(Weight::zero(datum.rank()), |acc, r| &acc + r);
        orbits.push(SigmaOrbit { roots, orbit_type: OrbitType::A, alpha, divisor_sign: 1, partner: None });
    }
    let mut by_alpha: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (k, o) in orbits.iter().enumerate() {
        by_alpha.entry(o.alpha.clone()).or_default().push(k);
    }
    for group in by_alpha.values() {
        match group.as_slice() {
            [_] => {}
            [a, b] => {
                let (minus, plus) = if orbits[*a].len() > orbits[*b].len() { (*a, *b) } else { (*b, *a) };
                assert_eq!(orbits[minus].len(), 2 * orbits[plus].len(), "BC orbit sizes must be in ratio 2:1");
                orbits[minus].orbit_type = OrbitType::BcMinus;
                orbits[minus].partner = Some(plus);
                orbits[plus].orbit_type = OrbitType::BcPlus;
                orbits[plus].divisor_sign = -1;
                orbits[plus].partner = Some(minus);
            }
            _ => panic!("more than two σ-orbits share an orbit sum"),
        }
    }
    orbits
}

/// The root datum `Φ(G_σ, A)` on the σ-fixed characters.
#[derive(Clone, Debug)]
pub struct FoldedDatum {
    pub sigma: PinnedAutomorphism,
    /// σ-orbits of Dynkin nodes; folded simple root `k` is the orbit sum over `node_orbits[k]`.
    pub node_orbits: Vec<Vec<usize>>,
    pub simple_folded_roots: Vec<SigmaOrbit>,
    /// `cartan[k][l] = <α_{O_l}, γ_k^vee>`.
    pub cartan: Vec<Vec<i64>>,
    pub components: Vec<(String, Vec<usize>)>,
    pub w0_generators: Vec<Vec<usize>>,
}

impl FoldedDatum {
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// Type of the folded datum such as `B2` or `A1xA1`.
    pub fn type_string(&self) -> String {
        self.components.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>().join("x")
    }

    /// Order of the Weyl group of the folded type.
    pub fn weyl_order_of_type(&self) -> u128 {
        self.components
            .iter()
            .map(|(name, nodes)| {
                if nodes.len() == 1 {
                    2
                } else {
                    crate::rootdata::parse_group(name).expect("classified type")[0].weyl_order()
                }
            })
            .product()
    }

    /// Applies a `W_0` generator to a weight.
    pub fn act(&self, datum: &RootDatum, generator: usize, w: &Weight) -> Weight {
        datum.apply_word(&self.w0_generators[generator], w)
    }

    /// Number of elements of the group generated by `w0_generators`, by orbit enumeration of `ρ`.
    pub fn w0_order(&self, datum: &RootDatum) -> usize {
        let rho = datum.rho();
        let mut seen = BTreeSet::from([rho.clone()]);
        let mut queue = VecDeque::from([rho]);
        while let Some(x) = queue.pop_front() {
            for g in 0..self.w0_generators.len() {
                let y = self.act(datum, g, &x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.len()
    }

    /// True iff every generator fixes the element (acting on exponents).
    pub fn is_w0_invariant(&self, datum: &RootDatum, x: &GroupAlgebraElement) -> bool {
        (0..self.w0_generators.len()).all(|g| x.map_exponents(|w| self.act(datum, g, w)) == *x)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "sigma": self.sigma.cycle_string(),
            "folded_type": self.type_string(),
            "folded_cartan": self.cartan,
            "simple_folded_roots": self
                .simple_folded_roots
                .iter()
                .zip(&self.node_orbits)
                .map(|(o, nodes)| {
                    let mut v = o.to_json();
                    v["nodes"] = json!(nodes.iter().map(|i| i + 1).collect::<Vec<_>>());
                    v
                })
                .collect::<Vec<_>>(),
            "w0_generators": self
                .w0_generators
                .iter()
                .map(|w| w.iter().map(|i| i + 1).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

/// Word `[j1..jm, i, jm..j1]` for the reflection in a root.
pub fn reflection_word(datum: &RootDatum, beta: &Weight) -> Result<Vec<usize>> {
    let mut gamma = if datum.positive_roots().contains(beta) { beta.clone() } else { -beta };
    if !datum.positive_roots().contains(&gamma) {
        return Err(Error::input(format!("{beta} is not a root")));
    }
    let mut prefix = Vec::new();
    loop {
        if let Some(i) = (0..datum.rank()).find(|&i| datum.simple_root(i) == gamma) {
            let mut word = prefix.clone();
            word.push(i);
            word.extend(prefix.iter().rev());
            return Ok(word);
        }
        let j = (0..datum.rank())
            .find(|&j| datum.pair_with_root(&datum.simple_root(j), &gamma).unwrap() > 0)
            .expect("a non-simple positive root pairs positively with some simple coroot");
        gamma = datum.reflect(j, &gamma);
        prefix.push(j);
    }
}

pub fn fold(datum: &RootDatum, sigma: &PinnedAutomorphism) -> Result<FoldedDatum> {
    let orbits = sigma_orbits(datum, sigma);
    let node_orbits = sigma.node_orbits();
    let find_orbit = |w: &Weight| orbits.iter().position(|o| o.contains(w)).expect("every root lies in an orbit");
    let simple: Vec<usize> = node_orbits.iter().map(|nodes| find_orbit(&datum.simple_root(nodes[0]))).collect();
    // coroot representatives: roots of O for type A, roots of O+ for type BC
    let reps: Vec<Vec<Weight>> = simple
        .iter()
        .map(|&k| match orbits[k].orbit_type {
            OrbitType::A => Ok(orbits[k].roots.clone()),
            OrbitType::BcMinus => Ok(orbits[orbits[k].partner.unwrap()].roots.clone()),
            OrbitType::BcPlus => Err(Error::consistency("a simple root lies in a BC⁺ orbit")),
        })
        .collect::<Result<_>>()?;
    let n = simple.len();
    let mut cartan = vec![vec![0i64; n]; n];
    for k in 0..n {
        for l in 0..n {
            let target = &orbits[simple[l]].alpha;
            let values: BTreeSet<i64> =
                reps[k].iter().map(|g| datum.pair_with_root(g, target)).collect::<Result<_>>()?;
            if values.len() != 1 {
                return Err(Error::consistency("folded Cartan entry depends on the representative"));
            }
            cartan[k][l] = *values.iter().next().unwrap();
        }
    }
    let classified = classify_cartan(&cartan)?;
    let components = classified
        .into_iter()
        .map(|(factor, nodes)| {
            let name = if factor.rank == 1 && orbits[simple[nodes[0]]].orbit_type != OrbitType::A {
                Factor { kind: SimpleType::B, rank: 1 }.to_string()
            } else {
                factor.to_string()
            };
            (name, nodes)
        })
        .collect();
    let w0_generators = reps
        .iter()
        .map(|roots| {
            let mut word = Vec::new();
            for g in roots {
                word.extend(reflection_word(datum, g)?);
            }
            Ok(word)
        })
        .collect::<Result<_>>()?;
    Ok(FoldedDatum {
        sigma: sigma.clone(),
        node_orbits,
        simple_folded_roots: simple.iter().map(|&k| orbits[k].clone()).collect(),
        cartan,
        components,
        w0_generators,
    })
}

/// Class of a weight in `X/(σ-1)X`: free coordinates plus residues modulo the torsion orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoinvariantClass {
    pub free: Vec<i64>,
    pub torsion: Vec<i64>,
}

impl CoinvariantClass {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|&x| x == 0) && self.torsion.iter().all(|&x| x == 0)
    }
}

/// Smith normal form data of `σ - 1` acting on fundamental-weight coordinates.
#[derive(Clone, Debug)]
pub struct CoinvariantLattice {
    u: Vec<Vec<i64>>,
    diag: Vec<i64>,
}

impl CoinvariantLattice {
    pub fn new(sigma: &PinnedAutomorphism) -> Self {
        let r = sigma.rank();
        let mut m = vec![vec![0i64; r]; r];
        for i in 0..r {
            m[sigma.node(i)][i] += 1;
            m[i][i] -= 1;
        }
        let (mut diag, u) = smith_normal_form(&m);
        diag.resize(r, 0);
        CoinvariantLattice { u, diag }
    }

    pub fn torsion_orders(&self) -> Vec<i64> {
        self.diag.iter().copied().filter(|&d| d > 1).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.diag.iter().filter(|&&d| d == 0).count()
    }

    pub fn class(&self, w: &Weight) -> CoinvariantClass {
        let y = mat_vec(&self.u, &w.0);
        let mut free = Vec::new();
        let mut torsion = Vec::new();
        for (yk, &d) in y.iter().zip(&self.diag) {
            match d {
                0 => free.push(*yk),
                1 => {}
                _ => torsion.push(yk.rem_euclid(d)),
            }
        }
        CoinvariantClass { free, torsion }
    }

    pub fn scale(&self, c: &CoinvariantClass, n: i64) -> CoinvariantClass {
        let orders = self.torsion_orders();
        CoinvariantClass {
            free: c.free.iter().map(|x| x * n).collect(),
            torsion: c.torsion.iter().zip(&orders).map(|(x, d)| (x * n).rem_euclid(*d)).collect(),
        }
    }

    /// `w ∈ (σ-1)X`.
    pub fn in_image(&self, w: &Weight) -> bool {
        self.class(w).is_zero()
    }
}
