mod common;

use common::*;
use proptest::prelude::*;
use twistinv::linalg::{determinant as det_q, q, Q};
use twistinv::rootdata::laurent::determinant;
use twistinv::{GroupAlgebraElement, RootDatum, Weight};

const GROUPS: [&str; 9] = ["A1", "A2", "A3", "B2", "C3", "D4", "G2", "F4", "A1xB3"];

fn datum() -> impl Strategy<Value = RootDatum> {
    prop::sample::select(GROUPS.to_vec()).prop_map(|g| RootDatum::from_spec(g).unwrap())
}

fn weight_for(rank: usize, bound: i64) -> impl Strategy<Value = Weight> {
    prop::collection::vec(-bound..=bound, rank).prop_map(Weight)
}

fn datum_and_weight() -> impl Strategy<Value = (RootDatum, Weight)> {
    datum().prop_flat_map(|d| {
        let r = d.rank();
        (Just(d), weight_for(r, 4))
    })
}

fn element(rank: usize) -> impl Strategy<Value = GroupAlgebraElement> {
    prop::collection::vec((weight_for(rank, 2), -3i64..=3), 0..5)
        .prop_map(move |terms| GroupAlgebraElement::from_terms(rank, terms.into_iter().map(|(w, c)| (w, q(c)))))
}

#[test]
fn classical_root_counts_and_weyl_orders() {
    let expected = [
        ("A3", 6, 24u128),
        ("B3", 9, 48),
        ("C4", 16, 384),
        ("D5", 20, 1920),
        ("E6", 36, 51840),
        ("E7", 63, 2903040),
        ("E8", 120, 696729600),
        ("F4", 24, 1152),
        ("G2", 6, 12),
    ];
    for (g, n, order) in expected {
        let d = RootDatum::from_spec(g).unwrap();
        assert_eq!(d.positive_roots().len(), n, "{g}");
        assert_eq!(d.weyl_order(), order, "{g}");
    }
}

#[test]
fn w0_word_is_reduced_and_sends_rho_to_minus_rho() {
    for g in GROUPS {
        let d = RootDatum::from_spec(g).unwrap();
        assert_eq!(d.w0_word().len(), d.positive_roots().len(), "{g}");
        assert_eq!(d.w0(&d.rho()), -&d.rho(), "{g}");
    }
}

#[test]
fn weyl_dimension_matches_orbit_sums_of_small_modules() {
    // adjoint modules: rank + number of roots
    for (g, adj) in [("A2", vec![1, 1]), ("B2", vec![0, 2]), ("G2", vec![0, 1]), ("D4", vec![0, 1, 0, 0])] {
        let d = RootDatum::from_spec(g).unwrap();
        let dim = d.weyl_dim(&Weight(adj)).unwrap();
        assert_eq!(dim as usize, d.rank() + d.roots().len(), "{g}");
    }
}

#[test]
fn rejects_malformed_groups() {
    for bad in ["", "X3", "B1", "D2", "E9", "G3", "A0", "A2xx"] {
        assert!(RootDatum::from_spec(bad).is_err(), "{bad:?} accepted");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflections_are_involutions_and_preserve_the_form((d, x) in datum_and_weight(), y_seed in weight_for(8, 3)) {
        let y = Weight(y_seed.0[..d.rank()].to_vec());
        for i in 0..d.rank() {
            let rx = d.reflect(i, &x);
            prop_assert_eq!(d.reflect(i, &rx), x.clone());
            prop_assert_eq!(d.inner_product(&rx, &d.reflect(i, &y)), d.inner_product(&x, &y));
        }
    }

    #[test]
    fn orbits_are_weyl_stable_with_one_dominant_member((d, x) in datum_and_weight()) {
        let orbit = d.weyl_orbit(&x);
        let (dom, word) = d.dominant_conjugate(&x);
        prop_assert!(dom.is_dominant());
        prop_assert!(orbit.contains(&dom));
        prop_assert_eq!(orbit.iter().filter(|w| w.is_dominant()).count(), 1);
        prop_assert_eq!(d.apply_word(&word, &x), dom);
        for w in &orbit {
            for i in 0..d.rank() {
                prop_assert!(orbit.contains(&d.reflect(i, w)));
            }
        }
        prop_assert_eq!(d.weyl_order() % orbit.len() as u128, 0);
    }

    #[test]
    fn roots_are_weyl_stable((d, x) in datum_and_weight()) {
        let roots = d.roots();
        for beta in &roots {
            let i = (x.0.iter().map(|c| c.unsigned_abs() as usize).sum::<usize>()) % d.rank();
            prop_assert!(d.is_root(&d.reflect(i, beta)));
            prop_assert_eq!(d.pair_with_root(beta, beta).unwrap(), 2);
        }
    }

    #[test]
    fn star_is_an_involution_on_dominant_weights((d, x) in datum_and_weight()) {
        let (dom, _) = d.dominant_conjugate(&x);
        prop_assert!(d.star(&dom).is_dominant());
        prop_assert_eq!(d.star(&d.star(&dom)), dom.clone());
        prop_assert_eq!(d.weyl_dim(&d.star(&dom)).unwrap(), d.weyl_dim(&dom).unwrap());
    }

    #[test]
    fn laurent_ring_axioms(a in element(2), b in element(2), c in element(2)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &GroupAlgebraElement::one(2), a.clone());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in element(2), b in element(2)) {
        prop_assume!(!b.is_zero());
        let p = &a * &b;
        prop_assert_eq!(p.exact_div(&b), Some(a.clone()));
        if let Some(k) = p.exact_div(&a) {
            prop_assert_eq!(&k * &a, p.clone());
        }
    }

    #[test]
    fn json_roundtrip(a in element(3)) {
        prop_assert_eq!(GroupAlgebraElement::from_json(3, &a.to_json()).unwrap(), a);
    }

    #[test]
    fn constant_determinant_matches_rational_elimination(m in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 4)) {
        let laurent: Vec<Vec<GroupAlgebraElement>> =
            m.iter().map(|row| row.iter().map(|&x| konst(1, x)).collect()).collect();
        let rational: Vec<Vec<Q>> = m.iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect();
        let d = determinant(&laurent, 1);
        let expected = det_q(&rational);
        prop_assert_eq!(d, GroupAlgebraElement::constant(1, expected));
    }

    #[test]
    fn determinant_is_multiplicative(a in prop::collection::vec(element(1), 4), b in prop::collection::vec(element(1), 4)) {
        let ma = vec![vec![a[0].clone(), a[1].clone()], vec![a[2].clone(), a[3].clone()]];
        let mb = vec![vec![b[0].clone(), b[1].clone()], vec![b[2].clone(), b[3].clone()]];
        let mut ab = vec![vec![GroupAlgebraElement::zero(1); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    ab[i][j] = &ab[i][j] + &(&ma[i][k] * &mb[k][j]);
                }
            }
        }
        prop_assert_eq!(determinant(&ab, 1), &determinant(&ma, 1) * &determinant(&mb, 1));
    }
}

#[test]
fn vandermonde_determinant() {
    // det(x_i^j) = ∏_{i<j}(x_j - x_i) with x_i = e^{i ω}
    let xs: Vec<GroupAlgebraElement> = (0..4).map(|i| e(&[i])).collect();
    let m: Vec<Vec<GroupAlgebraElement>> = xs.iter().map(|x| (0..4).map(|j| x.pow(j)).collect()).collect();
    let mut expected = GroupAlgebraElement::one(1);
    for i in 0..4 {
        for j in i + 1..4 {
            expected = &expected * &(&xs[j] - &xs[i]);
        }
    }
    assert_eq!(determinant(&m, 1), expected);
}
