//! Oracles shared by the integration tests. Nothing here calls the descent-based coset
//! machinery of the crate; partitions are computed by raw orbit closure.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use acdual_core::{
    basis_element, build_root_system, enumerate_characters, enumerate_weyl, BasisKind,
    CharacterPoint, ElementId, K0Element, Subset, WeylGroup, DEFAULT_MAX_GROUP_ORDER,
};
use rand::Rng;

pub const DEFAULT_TYPES: [&str; 6] = ["A1", "A2", "A3", "B2", "B3", "G2"];
pub const DEFAULT_MODULI: [i64; 5] = [1, 2, 3, 4, 6];

pub fn group(name: &str) -> WeylGroup {
    let rs = Arc::new(build_root_system(name.parse().unwrap()));
    enumerate_weyl(rs, DEFAULT_MAX_GROUP_ORDER).unwrap()
}

pub fn characters(g: &WeylGroup, m: i64) -> Vec<CharacterPoint> {
    enumerate_characters(g.root_system(), m, 100_000).unwrap()
}

/// Orbits of `W_J × W_K` acting on `W` by `(u, v) · w = u w v^{-1}`, built from generator
/// moves only.
pub fn double_coset_partition(g: &WeylGroup, j: Subset, k: Subset) -> Vec<Vec<ElementId>> {
    let mut seen = vec![false; g.order()];
    let mut orbits = Vec::new();
    for start in 0..g.order() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(w) = queue.pop_front() {
            let moves = j
                .iter()
                .map(|i| g.left_multiply(w, i))
                .chain(k.iter().map(|i| g.right_multiply(w, i)))
                .collect::<Vec<_>>();
            for x in moves {
                if !seen[x] {
                    seen[x] = true;
                    orbit.push(x);
                    queue.push_back(x);
                }
            }
        }
        orbits.push(orbit);
    }
    orbits
}

/// The unique minimal-length element of each orbit; panics if a minimum is not unique.
pub fn unique_minima(g: &WeylGroup, orbits: &[Vec<ElementId>]) -> BTreeSet<ElementId> {
    orbits
        .iter()
        .map(|orbit| {
            let min = orbit.iter().map(|&w| g.element(w).length()).min().unwrap();
            let minima: Vec<_> = orbit
                .iter()
                .filter(|&&w| g.element(w).length() == min)
                .collect();
            assert_eq!(minima.len(), 1, "double coset minimum is not unique");
            *minima[0]
        })
        .collect()
}

/// All `(theta, J)` with `J ⊆ I(theta)`.
pub fn all_labels(chars: &[CharacterPoint]) -> Vec<(CharacterPoint, Subset)> {
    chars
        .iter()
        .flat_map(|t| t.triviality_set().subsets().map(move |j| (t.clone(), j)))
        .collect()
}

/// Random combination of `terms` basis classes of `kind` with coefficients in `[-5, 5]`.
pub fn random_element<R: Rng>(
    g: &WeylGroup,
    labels: &[(CharacterPoint, Subset)],
    kind: BasisKind,
    terms: usize,
    rng: &mut R,
) -> K0Element {
    let (t0, _) = &labels[0];
    let mut x = K0Element::zero(t0.family(), t0.modulus(), g.index_set()).unwrap();
    for _ in 0..terms {
        let (theta, j) = &labels[rng.gen_range(0..labels.len())];
        let c = rng.gen_range(-5..=5);
        let b = basis_element(kind, theta, *j, g.index_set()).unwrap();
        x.add_scaled(c, &b).unwrap();
    }
    x
}
