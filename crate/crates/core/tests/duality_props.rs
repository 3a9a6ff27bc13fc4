mod common;

use std::sync::LazyLock;

use acdual_core::{
    basis_element, coset_contribution, duality_by_definition, duality_closed_form,
    duality_delta_closed, duality_delta_reindexed, induce, restrict, BasisKind, CharacterPoint,
    K0Element, Subset, WeylGroup,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Fixture {
    group: WeylGroup,
    labels: Vec<(CharacterPoint, Subset)>,
}

static FIXTURES: LazyLock<Vec<Fixture>> = LazyLock::new(|| {
    [("A2", 3), ("B2", 2), ("B2", 4), ("G2", 2), ("A3", 2)]
        .into_iter()
        .map(|(name, m)| {
            let group = common::group(name);
            let labels = common::all_labels(&common::characters(&group, m));
            Fixture { group, labels }
        })
        .collect()
});

fn element(fx: &Fixture, kind: BasisKind, seed: u64) -> K0Element {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    common::random_element(&fx.group, &fx.labels, kind, 5, &mut rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closed_form_matches_definition(which in 0usize..5, seed in any::<u64>()) {
        let fx = &FIXTURES[which];
        let x = element(fx, BasisKind::E, seed);
        let by_def = duality_by_definition(&fx.group, &x).unwrap();
        prop_assert_eq!(&by_def, &duality_closed_form(&fx.group, &x).unwrap());
        prop_assert_eq!(duality_by_definition(&fx.group, &by_def).unwrap(), x);
    }

    #[test]
    fn duality_is_linear(which in 0usize..5, s1 in any::<u64>(), s2 in any::<u64>(),
                         a in -4i64..=4, b in -4i64..=4) {
        let fx = &FIXTURES[which];
        let x = element(fx, BasisKind::Delta, s1);
        let y = element(fx, BasisKind::Nabla, s2);
        let xy = acdual_core::combine(&[(a, &x), (b, &y)]).unwrap();
        let lhs = duality_by_definition(&fx.group, &xy).unwrap();
        let dx = duality_by_definition(&fx.group, &x).unwrap();
        let dy = duality_by_definition(&fx.group, &y).unwrap();
        prop_assert_eq!(lhs, acdual_core::combine(&[(a, &dx), (b, &dy)]).unwrap());
    }

    #[test]
    fn restrict_and_induce_are_additive(which in 0usize..5, s1 in any::<u64>(),
                                        s2 in any::<u64>(), mask in 0u32..8, c in -3i64..=3) {
        let fx = &FIXTURES[which];
        let j = Subset::from_mask(mask).intersection(fx.group.index_set());
        let x = element(fx, BasisKind::E, s1);
        let y = element(fx, BasisKind::E, s2);
        let sum = acdual_core::combine(&[(c, &x), (1, &y)]).unwrap();
        let rx = restrict(&fx.group, &x, j).unwrap();
        let ry = restrict(&fx.group, &y, j).unwrap();
        let rsum = restrict(&fx.group, &sum, j).unwrap();
        prop_assert_eq!(&rsum, &acdual_core::combine(&[(c, &rx), (1, &ry)]).unwrap());
        let ix = induce(&fx.group, &rx).unwrap();
        let iy = induce(&fx.group, &ry).unwrap();
        prop_assert_eq!(
            induce(&fx.group, &rsum).unwrap(),
            acdual_core::combine(&[(c, &ix), (1, &iy)]).unwrap()
        );
    }

    #[test]
    fn coordinate_maps_are_bijective(which in 0usize..5, seed in any::<u64>(), k in 0usize..3) {
        let fx = &FIXTURES[which];
        let kind = [BasisKind::E, BasisKind::Delta, BasisKind::Nabla][k];
        let x = element(fx, BasisKind::E, seed);
        let coords = x.coordinates_in(kind);
        prop_assert!(coords.keys().all(|key| key.kind == kind));
        let back = K0Element::from_coordinates(
            kind,
            x.family(),
            x.modulus(),
            x.context(),
            coords.into_iter().map(|(key, c)| (key.label, c)),
        )
        .unwrap();
        prop_assert_eq!(back, x);
    }
}

#[test]
fn delta_keys_agree_across_all_routes() {
    for fx in FIXTURES.iter() {
        let g = &fx.group;
        for (theta, k) in &fx.labels {
            let delta = basis_element(BasisKind::Delta, theta, *k, g.index_set()).unwrap();
            let by_def = duality_by_definition(g, &delta).unwrap();
            assert_eq!(by_def, duality_delta_closed(g, theta, *k).unwrap());
            assert_eq!(by_def, duality_delta_reindexed(g, theta, *k).unwrap());
            let (tw, d) = acdual_core::dual_index(g, theta, *k).unwrap();
            let nabla = basis_element(BasisKind::Nabla, &tw, d, g.index_set()).unwrap();
            assert_eq!(by_def, nabla);
        }
    }
}

#[test]
fn vanishing_identity_off_the_special_coset() {
    for fx in FIXTURES.iter() {
        let g = &fx.group;
        for (theta, k) in &fx.labels {
            for w in g.min_coset_reps(*k) {
                let contribution = coset_contribution(g, theta, *k, w).unwrap();
                let image = g.simple_image(w, *k);
                if image.is_proper_subset_of(g.left_ascents(w)) {
                    assert!(contribution.is_zero(), "theta={theta} K={k} w={w}");
                } else {
                    // the surviving coset w_0 w_K contributes the whole Delta closed form
                    assert_eq!(contribution, duality_delta_closed(g, theta, *k).unwrap());
                }
            }
        }
    }
}

#[test]
fn restriction_to_torus_counts_cosets() {
    // R_∅ [Delta(theta)_K] has one torus class per minimal coset representative of W / W_K
    let fx = &FIXTURES[4];
    let g = &fx.group;
    for (theta, k) in &fx.labels {
        let delta = basis_element(BasisKind::Delta, theta, *k, g.index_set()).unwrap();
        let torus = restrict(g, &delta, Subset::empty()).unwrap();
        let total: i64 = torus.terms().map(|(_, c)| c).sum();
        assert_eq!(total as usize, g.min_coset_reps(*k).len());
        assert!(torus.terms().all(|(l, _)| l.j.is_empty()));
    }
}
