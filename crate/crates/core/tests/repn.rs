mod common;

use common::*;
use proptest::prelude::*;
use twistinv::linalg::SparseMatrix;
use twistinv::repn::{
    build_irreducible, build_irreducible_with_cap, bundle, direct_sum, dual, equivariant_maps, exterior_power,
    freudenthal, freudenthal_character, intertwiner, r_v, sigma_module, tensor, trivial, twist, twisted_character,
    weyl_character, with_sigma, zeta_all,
};
use twistinv::twist::sigma_orbits;
use twistinv::{Error, PinnedAutomorphism, RootDatum, Weight};

fn datum(g: &str) -> RootDatum {
    RootDatum::from_spec(g).unwrap()
}

#[test]
fn oracle_triangle_on_assorted_modules() {
    let cases: [(&str, &[i64]); 10] = [
        ("A1", &[7]),
        ("A2", &[2, 1]),
        ("A3", &[1, 0, 1]),
        ("B2", &[1, 1]),
        ("C3", &[0, 1, 0]),
        ("D4", &[0, 1, 0, 0]),
        ("G2", &[1, 0]),
        ("G2", &[0, 1]),
        ("F4", &[0, 0, 0, 1]),
        ("A1xA2", &[1, 1, 0]),
    ];
    for (g, lam) in cases {
        let d = datum(g);
        let lam = w(lam);
        let v = build_irreducible(&d, &lam).unwrap();
        v.check_relations(&d).unwrap();
        assert_eq!(v.dim() as u64, d.weyl_dim(&lam).unwrap(), "{g} {lam}");
        let ch = v.character();
        assert_eq!(ch, freudenthal_character(&d, &lam).unwrap(), "{g} {lam}");
        assert_eq!(ch, weyl_character(&d, &lam).unwrap(), "{g} {lam}");
        assert!(ch.is_weyl_invariant(&d));
    }
}

#[test]
fn known_dimensions() {
    for (g, lam, dim) in [("G2", vec![1, 0], 7), ("G2", vec![0, 1], 14), ("B3", vec![0, 0, 1], 8), ("E6", vec![1, 0, 0, 0, 0, 0], 27)] {
        let v = build_irreducible(&datum(g), &Weight(lam)).unwrap();
        assert_eq!(v.dim(), dim, "{g}");
    }
}

#[test]
fn adjoint_zero_weight_multiplicity_is_the_rank() {
    for (g, adj) in [("A2", vec![1, 1]), ("B2", vec![0, 2]), ("G2", vec![0, 1])] {
        let d = datum(g);
        let zero = Weight::zero(d.rank());
        assert_eq!(freudenthal(&d, &Weight(adj.clone()), &zero).unwrap() as usize, d.rank());
        assert_eq!(build_irreducible(&d, &Weight(adj)).unwrap().mult(&zero), d.rank());
    }
}

#[test]
fn rejects_bad_highest_weights_and_respects_the_cap() {
    let d = datum("A2");
    assert!(build_irreducible(&d, &w(&[-1, 0])).is_err());
    assert!(build_irreducible(&d, &w(&[1])).is_err());
    assert!(matches!(build_irreducible_with_cap(&d, &w(&[3, 3]), 10), Err(Error::DimensionCap { dim: 64, cap: 10 })));
}

#[test]
fn functor_characters() {
    let d = datum("A2");
    let v = build_irreducible(&d, &w(&[1, 0])).unwrap();
    let vd = dual(&v).unwrap();
    vd.check_relations(&d).unwrap();
    assert_eq!(vd.character(), build_irreducible(&d, &w(&[0, 1])).unwrap().character());
    let ten = tensor(&v, &vd).unwrap();
    ten.check_relations(&d).unwrap();
    // std ⊗ std* = adjoint ⊕ trivial
    let sum = direct_sum(&build_irreducible(&d, &w(&[1, 1])).unwrap(), &trivial(2)).unwrap();
    assert_eq!(ten.character(), sum.character());
    assert_eq!(equivariant_maps(&ten, &trivial(2)).unwrap().len(), 1);
    assert_eq!(equivariant_maps(&ten, &ten).unwrap().len(), 2);
    let a3 = datum("A3");
    let std4 = build_irreducible(&a3, &w(&[1, 0, 0])).unwrap();
    let wedge = exterior_power(&std4, 2).unwrap();
    wedge.check_relations(&a3).unwrap();
    assert_eq!(wedge.character(), build_irreducible(&a3, &w(&[0, 1, 0])).unwrap().character());
    let top = exterior_power(&std4, 4).unwrap();
    assert_eq!(top.character(), trivial(3).character());
}

#[test]
fn schur_lemma_for_irreducibles() {
    let d = datum("B2");
    let v = build_irreducible(&d, &w(&[1, 1])).unwrap();
    let u = build_irreducible(&d, &w(&[2, 0])).unwrap();
    assert_eq!(equivariant_maps(&v, &v).unwrap().len(), 1);
    assert!(equivariant_maps(&v, &u).unwrap().is_empty());
}

#[test]
fn twist_realizes_the_twisted_highest_weight() {
    let d = datum("A2");
    let s = PinnedAutomorphism::from_cycles(&d, "(1 2)").unwrap();
    let v = build_irreducible(&d, &w(&[2, 1])).unwrap();
    let tv = twist(&v, &s).unwrap();
    tv.check_relations(&d).unwrap();
    assert_eq!(tv.character(), build_irreducible(&d, &w(&[1, 2])).unwrap().character());
    let target = build_irreducible(&d, &w(&[1, 2])).unwrap();
    let map = intertwiner(&v, &target, &s).unwrap();
    assert_eq!(map.nrows(), v.dim());
}

#[test]
fn sigma_maps_have_the_right_order() {
    for (g, c, lam) in [("A2", "(1 2)", vec![1, 1]), ("A3", "(1 3)", vec![0, 1, 0]), ("D4", "(1 3 4)", vec![0, 1, 0, 0])] {
        let d = datum(g);
        let s = PinnedAutomorphism::from_cycles(&d, c).unwrap();
        let v = with_sigma(&build_irreducible(&d, &Weight(lam)).unwrap(), &s).unwrap();
        v.check_sigma_map(&s).unwrap();
        let m = v.sigma_map().unwrap();
        let mut p = SparseMatrix::identity(v.dim());
        for _ in 0..s.order() {
            p = p.mul(m);
        }
        assert_eq!(p, SparseMatrix::identity(v.dim()), "{g}");
    }
}

#[test]
fn induced_module_for_a_moved_highest_weight() {
    let d = datum("A2");
    let s = PinnedAutomorphism::from_cycles(&d, "(1 2)").unwrap();
    let v = sigma_module(&build_irreducible(&d, &w(&[1, 0])).unwrap(), &s).unwrap();
    assert_eq!(v.dim(), 6);
    v.check_sigma_map(&s).unwrap();
    // the σ-fixed weights of std ⊕ std* are absent, so the twisted character vanishes
    assert!(twisted_character(&v, &s).unwrap().is_zero());
}

#[test]
fn twisted_character_of_the_sl3_adjoint() {
    let d = datum("A2");
    let s = PinnedAutomorphism::from_cycles(&d, "(1 2)").unwrap();
    let v = with_sigma(&build_irreducible(&d, &w(&[1, 1])).unwrap(), &s).unwrap();
    let chi = twisted_character(&v, &s).unwrap();
    // σ swaps h1 and h2: trace on V(0) is 0; on the σ-fixed roots ±(α1+α2) it is ±1
    assert!(chi.coefficient(&Weight::zero(2)) == twistinv::linalg::q(0));
    assert_eq!(chi.coefficient(&w(&[1, 1])), twistinv::linalg::q(1));
}

#[test]
fn r_v_and_zeta_of_small_cases() {
    let d = datum("A1");
    let id = PinnedAutomorphism::identity(1);
    for n in 0..6 {
        let v = build_irreducible(&d, &w(&[n])).unwrap();
        assert_eq!(r_v(&v, &id), usize::from(n % 2 == 0));
        let zs = zeta_all(&d, &v, &id).unwrap();
        let got: Vec<u64> = zs.iter().map(|(_, z)| *z).collect();
        assert_eq!(got, vec![if n % 2 == 0 { (n / 2) as u64 } else { 0 }; 2], "{n}");
    }
    let a2 = datum("A2");
    let s = PinnedAutomorphism::from_cycles(&a2, "(1 2)").unwrap();
    let std = build_irreducible(&a2, &w(&[1, 0])).unwrap();
    assert_eq!(r_v(&std, &s), 1);
    assert_eq!(sigma_orbits(&a2, &s).len(), 4);
}

#[test]
fn bundle_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let d = datum("A2");
    let s = PinnedAutomorphism::from_cycles(&d, "(1 2)").unwrap();
    let cases = [
        ("A1", build_irreducible(&datum("A1"), &w(&[3])).unwrap()),
        ("A2", build_irreducible(&d, &w(&[1, 1])).unwrap()),
        ("A2", with_sigma(&build_irreducible(&d, &w(&[1, 1])).unwrap(), &s).unwrap()),
    ];
    for (k, (g, m)) in cases.into_iter().enumerate() {
        let path = dir.path().join(format!("m{k}.json"));
        bundle::save(&path, g, &m).unwrap();
        let (g2, back) = bundle::load(&path).unwrap();
        assert_eq!(g2, g);
        assert_eq!(back, m);
    }
    let text = std::fs::read_to_string(dir.path().join("m0.json")).unwrap();
    let bad = text.replace("\"e\"", "\"x\"");
    assert!(bundle::from_json(&serde_json::from_str(&bad).unwrap()).is_err());
}

fn small_module() -> impl Strategy<Value = (String, Weight)> {
    prop::sample::select(vec![("A1", 1usize, 6i64), ("A2", 2, 2), ("B2", 2, 2), ("G2", 2, 1), ("A3", 3, 1), ("C3", 3, 1)])
        .prop_flat_map(|(g, r, b)| (Just(g.to_string()), prop::collection::vec(0..=b, r).prop_map(Weight)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracles_agree_on_random_modules((g, lam) in small_module()) {
        let d = datum(&g);
        let v = build_irreducible(&d, &lam).unwrap();
        prop_assert!(v.check_relations(&d).is_ok());
        let ch = v.character();
        prop_assert_eq!(&ch, &freudenthal_character(&d, &lam).unwrap());
        prop_assert_eq!(&ch, &weyl_character(&d, &lam).unwrap());
        prop_assert_eq!(ch.total(), d.weyl_dim(&lam).unwrap());
        let vd = dual(&v).unwrap();
        prop_assert_eq!(vd.character(), build_irreducible(&d, &d.star(&lam)).unwrap().character());
    }
}
