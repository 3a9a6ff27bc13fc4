//! Enumerated Weyl groups with cached length and descent data, parabolic subgroups,
//! minimal coset and double-coset representatives, and the diagram involution.
//!
//! An element is identified by the permutation it induces on the root list. Lengths,
//! descent sets and the coroot-lattice matrix are derived from that permutation.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::root_datum::RootSystem;
use crate::subset::Subset;

/// Index of an element inside its [`WeylGroup`]; `0` is always the identity.
pub type ElementId = usize;

pub const DEFAULT_MAX_GROUP_ORDER: usize = 100_000;

#[derive(Debug, Clone)]
pub struct WeylElement {
    perm: Vec<u32>,
    coroot_matrix: DMatrix<i64>,
    length: usize,
    right_descents: Subset,
    left_descents: Subset,
    left_ascents: Subset,
}

impl WeylElement {
    /// `perm[p]` is the position of `w(root[p])`.
    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    /// Action on the coroot lattice; column `j` is `w(alpha_j^vee)` in simple coroots.
    pub fn coroot_matrix(&self) -> &DMatrix<i64> {
        &self.coroot_matrix
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// `R(w) = {i : w s_i < w} = {i : w(alpha_i) < 0}`.
    pub fn right_descents(&self) -> Subset {
        self.right_descents
    }

    /// `{i : s_i w < w} = {i : w^{-1}(alpha_i) < 0}`.
    pub fn left_descents(&self) -> Subset {
        self.left_descents
    }

    /// `H(w) = {i : s_i w > w}`, the complement of the left descents.
    pub fn left_ascents(&self) -> Subset {
        self.left_ascents
    }
}

/// The permutation `i -> sigma(i)` of simple indices with `alpha_{sigma(i)} = -w_0(alpha_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramInvolution {
    images: Vec<usize>,
}

impl DiagramInvolution {
    /// Arbitrary image table (1-based). Only range is checked, so a deliberately wrong table
    /// can be supplied to exercise failure paths of a verification harness.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let r = images.len();
        if let Some(bad) = images.iter().find(|&&i| !(1..=r).contains(&i)) {
            return Err(Error::Argument(format!(
                "diagram involution image {bad} outside 1..={r}"
            )));
        }
        Ok(DiagramInvolution { images })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn apply(&self, k: Subset) -> Subset {
        k.iter().map(|i| self.images[i - 1]).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(n, &i)| i == n + 1)
    }
}

/// A standard parabolic subgroup `W_J` with its longest element and positive roots.
#[derive(Debug, Clone)]
pub struct LeviContext {
    subset: Subset,
    parabolic_elements: Vec<ElementId>,
    longest: ElementId,
    positive_roots: Vec<usize>,
}

impl LeviContext {
    pub fn subset(&self) -> Subset {
        self.subset
    }

    /// Ids of `W_J`, sorted by `(length, id)`.
    pub fn parabolic_elements(&self) -> &[ElementId] {
        &self.parabolic_elements
    }

    pub fn order(&self) -> usize {
        self.parabolic_elements.len()
    }

    /// `w_J`.
    pub fn longest(&self) -> ElementId {
        self.longest
    }

    /// Positions of `Phi_J^+` in the root list.
    pub fn positive_roots(&self) -> &[usize] {
        &self.positive_roots
    }
}

#[derive(Debug)]
pub struct WeylGroup {
    rs: Arc<RootSystem>,
    elements: Vec<WeylElement>,
    lookup: HashMap<Vec<u32>, ElementId>,
    right_mult: Vec<ElementId>,
    left_mult: Vec<ElementId>,
    inverse: Vec<ElementId>,
    longest: ElementId,
    double_cosets: Vec<OnceLock<Vec<ElementId>>>,
}

/// Enumerates `W` by breadth-first closure under right multiplication by simple reflections.
///
/// Fails with [`Error::Resource`] when the group order would exceed `max_order`.
pub fn enumerate_weyl(rs: Arc<RootSystem>, max_order: usize) -> Result<WeylGroup> {
    let expected = rs.family().expected_group_order();
    if expected > max_order as u64 {
        return Err(Error::Resource(format!(
            "|W({})| = {expected} exceeds the group-order cap {max_order}",
            rs.family()
        )));
    }
    let r = rs.rank();
    let n_pos = rs.positive_count();
    let n_roots = rs.root_count();
    let gens: Vec<Vec<u32>> = (1..=r)
        .map(|i| rs.reflection_permutation(i))
        .collect::<Result<_>>()?;
    let gen_mats: Vec<DMatrix<i64>> = (1..=r)
        .map(|i| rs.coroot_generator_matrix(i))
        .collect::<Result<_>>()?;

    let make_element = |perm: Vec<u32>, coroot_matrix: DMatrix<i64>| -> WeylElement {
        let mut inv = vec![0u32; n_roots];
        for (p, &q) in perm.iter().enumerate() {
            inv[q as usize] = p as u32;
        }
        let length = perm[..n_pos]
            .iter()
            .filter(|&&q| q as usize >= n_pos)
            .count();
        let right_descents = (1..=r).filter(|&i| perm[i - 1] as usize >= n_pos).collect();
        let left_descents: Subset = (1..=r).filter(|&i| inv[i - 1] as usize >= n_pos).collect();
        WeylElement {
            perm,
            coroot_matrix,
            length,
            right_descents,
            left_descents,
            left_ascents: Subset::full(r).difference(left_descents),
        }
    };

    let identity: Vec<u32> = (0..n_roots as u32).collect();
    let mut elements = vec![make_element(identity.clone(), DMatrix::identity(r, r))];
    let mut lookup = HashMap::from([(identity, 0usize)]);
    let mut right_mult: Vec<ElementId> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        for (g, gen) in gens.iter().enumerate() {
            let perm: Vec<u32> = gen.iter().map(|&q| elements[id].perm[q as usize]).collect();
            let target = match lookup.get(&perm) {
                Some(&t) => t,
                None => {
                    let t = elements.len();
                    if t >= max_order {
                        return Err(Error::Resource(format!(
                            "Weyl group enumeration exceeded the group-order cap {max_order}"
                        )));
                    }
                    let mat = &elements[id].coroot_matrix * &gen_mats[g];
                    lookup.insert(perm.clone(), t);
                    elements.push(make_element(perm, mat));
                    queue.push_back(t);
                    t
                }
            };
            if right_mult.len() < (id + 1) * r {
                right_mult.resize((id + 1) * r, usize::MAX);
            }
            right_mult[id * r + g] = target;
        }
    }

    let find = |perm: &[u32]| -> Result<ElementId> {
        lookup
            .get(perm)
            .copied()
            .ok_or_else(|| Error::Internal("Weyl group not closed under composition".into()))
    };
    let mut left_mult = vec![0; elements.len() * r];
    let mut inverse = vec![0; elements.len()];
    for (id, el) in elements.iter().enumerate() {
        for (g, gen) in gens.iter().enumerate() {
            let perm: Vec<u32> = el.perm.iter().map(|&q| gen[q as usize]).collect();
            left_mult[id * r + g] = find(&perm)?;
        }
        let mut inv = vec![0u32; n_roots];
        for (p, &q) in el.perm.iter().enumerate() {
            inv[q as usize] = p as u32;
        }
        inverse[id] = find(&inv)?;
    }
    let longest = elements
        .iter()
        .position(|e| e.length == n_pos)
        .ok_or_else(|| Error::Internal("no element maps every positive root negative".into()))?;

    let double_cosets = (0..1usize << (2 * r)).map(|_| OnceLock::new()).collect();
    Ok(WeylGroup {
        rs,
        elements,
        lookup,
        right_mult,
        left_mult,
        inverse,
        longest,
        double_cosets,
    })
}

impl WeylGroup {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn index_set(&self) -> Subset {
        self.rs.index_set()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, id: ElementId) -> &WeylElement {
        &self.elements[id]
    }

    pub fn identity(&self) -> ElementId {
        0
    }

    /// `w_0`.
    pub fn longest(&self) -> ElementId {
        self.longest
    }

    pub fn find(&self, perm: &[u32]) -> Option<ElementId> {
        self.lookup.get(perm).copied()
    }

    /// `w s_i`.
    pub fn right_multiply(&self, w: ElementId, i: usize) -> ElementId {
        self.right_mult[w * self.rank() + i - 1]
    }

    /// `s_i w`.
    pub fn left_multiply(&self, w: ElementId, i: usize) -> ElementId {
        self.left_mult[w * self.rank() + i - 1]
    }

    pub fn inverse(&self, w: ElementId) -> ElementId {
        self.inverse[w]
    }

    /// The simple reflection `s_i`.
    pub fn generator(&self, i: usize) -> ElementId {
        self.right_multiply(0, i)
    }

    /// `a b` (apply `b` first).
    pub fn multiply(&self, a: ElementId, b: ElementId) -> ElementId {
        let pa = &self.elements[a].perm;
        let perm: Vec<u32> = self.elements[b]
            .perm
            .iter()
            .map(|&q| pa[q as usize])
            .collect();
        self.lookup[&perm]
    }

    /// Position of `w(root[position])`.
    pub fn act_on_position(&self, w: ElementId, position: usize) -> usize {
        self.elements[w].perm[position] as usize
    }

    pub fn left_ascents(&self, w: ElementId) -> Subset {
        self.elements[w].left_ascents
    }

    /// Word for `w` obtained by repeatedly stripping the lowest-index left descent.
    pub fn reduced_word(&self, w: ElementId) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.elements[w].length);
        let mut current = w;
        while let Some(i) = self.elements[current].left_descents.iter().next() {
            word.push(i);
            current = self.left_multiply(current, i);
        }
        word
    }

    /// Whether every inversion of `w` lies in `Phi_J^+`, i.e. `w` is in `W_J`.
    pub fn in_parabolic(&self, w: ElementId, j: Subset) -> bool {
        let n_pos = self.rs.positive_count();
        self.elements[w].perm[..n_pos]
            .iter()
            .enumerate()
            .all(|(p, &q)| (q as usize) < n_pos || self.rs.support(p).is_subset_of(j))
    }

    pub fn levi(&self, j: Subset) -> LeviContext {
        let mut parabolic_elements: Vec<ElementId> = (0..self.order())
            .filter(|&w| self.in_parabolic(w, j))
            .collect();
        parabolic_elements.sort_by_key(|&w| (self.elements[w].length, w));
        let longest = *parabolic_elements
            .last()
            .expect("parabolic subgroup contains the identity");
        LeviContext {
            subset: j,
            parabolic_elements,
            longest,
            positive_roots: self.rs.parabolic_positive_roots(j),
        }
    }

    /// `w_J`, the longest element of `W_J`.
    pub fn longest_element(&self, j: Subset) -> ElementId {
        self.levi(j).longest
    }

    fn sorted(&self, mut ids: Vec<ElementId>) -> Vec<ElementId> {
        ids.sort_by_key(|&w| (self.elements[w].length, w));
        ids
    }

    /// `X_K = {w : R(w) ∩ K = ∅}`, the minimal representatives of the cosets `w W_K`.
    pub fn min_coset_reps(&self, k: Subset) -> Vec<ElementId> {
        self.sorted(
            (0..self.order())
                .filter(|&w| self.elements[w].right_descents.intersection(k).is_empty())
                .collect(),
        )
    }

    /// Minimal representatives of the cosets `W_J w`.
    pub fn min_left_coset_reps(&self, j: Subset) -> Vec<ElementId> {
        self.sorted(
            (0..self.order())
                .filter(|&w| self.elements[w].left_descents.intersection(j).is_empty())
                .collect(),
        )
    }

    /// `D_{J,K}`: the minimal-length representatives of the double cosets `W_J w W_K`.
    pub fn min_double_coset_reps(&self, j: Subset, k: Subset) -> &[ElementId] {
        let slot = ((j.mask() as usize) << self.rank()) | k.mask() as usize;
        self.double_cosets[slot].get_or_init(|| {
            self.sorted(
                (0..self.order())
                    .filter(|&w| {
                        let e = &self.elements[w];
                        e.right_descents.intersection(k).is_empty()
                            && e.left_descents.intersection(j).is_empty()
                    })
                    .collect(),
            )
        })
    }

    pub fn diagram_involution(&self) -> DiagramInvolution {
        let w0 = &self.elements[self.longest];
        let images = (1..=self.rank())
            .map(|j| {
                let neg = self.rs.negation(w0.perm[j - 1] as usize);
                self.rs
                    .simple_index(neg)
                    .expect("-w_0 permutes the simple roots")
            })
            .collect();
        DiagramInvolution { images }
    }

    /// `sigma(K) = {i : alpha_i = -w_0(alpha_j) for some j in K}`.
    pub fn sigma_involution(&self, k: Subset) -> Subset {
        self.diagram_involution().apply(k)
    }

    /// `w(K) = {j : alpha_j = w(alpha_k) for some k in K}`.
    pub fn simple_image(&self, w: ElementId, k: Subset) -> Subset {
        let perm = &self.elements[w].perm;
        k.iter()
            .filter_map(|i| self.rs.simple_index(perm[i - 1] as usize))
            .collect()
    }

    pub fn is_min_double_coset_rep(&self, w: ElementId, j: Subset, k: Subset) -> bool {
        let e = &self.elements[w];
        e.right_descents.intersection(k).is_empty() && e.left_descents.intersection(j).is_empty()
    }

    /// `L = {i in J : w^{-1}(alpha_i) = alpha_k with k in K}` for `w in D_{J,K}`.
    pub fn twisted_intersection(&self, w: ElementId, j: Subset, k: Subset) -> Result<Subset> {
        if !self.is_min_double_coset_rep(w, j, k) {
            return Err(Error::Argument(format!(
                "element {:?} is not a minimal (W_{j}, W_{k}) double coset representative",
                self.reduced_word(w)
            )));
        }
        let inv = &self.elements[self.inverse[w]].perm;
        Ok(j.iter()
            .filter(|&i| {
                self.rs
                    .simple_index(inv[i - 1] as usize)
                    .is_some_and(|s| k.contains(s))
            })
            .collect())
    }

    /// Positions of `Phi_J^+ ∩ w(Phi_K^+)`, in increasing order.
    pub fn twisted_root_intersection(&self, w: ElementId, j: Subset, k: Subset) -> Vec<usize> {
        let inv = &self.elements[self.inverse[w]].perm;
        let n_pos = self.rs.positive_count();
        (0..n_pos)
            .filter(|&p| self.rs.support(p).is_subset_of(j))
            .filter(|&p| {
                let q = inv[p] as usize;
                q < n_pos && self.rs.support(q).is_subset_of(k)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::build_root_system;

    fn group(name: &str) -> WeylGroup {
        let rs = Arc::new(build_root_system(name.parse().unwrap()));
        enumerate_weyl(rs, DEFAULT_MAX_GROUP_ORDER).unwrap()
    }

    fn word(w: &WeylGroup, letters: &[usize]) -> ElementId {
        letters
            .iter()
            .fold(w.identity(), |acc, &i| w.right_multiply(acc, i))
    }

    fn set(ix: &[usize]) -> Subset {
        Subset::from_indices(ix.iter().copied())
    }

    #[test]
    fn small_group_orders() {
        assert_eq!(group("A2").order(), 6);
        let b2 = group("B2");
        assert_eq!(b2.order(), 8);
        assert_eq!(b2.element(b2.longest()).length(), 4);
        let a1 = group("A1");
        assert_eq!(a1.order(), 2);
        assert_eq!(a1.longest(), a1.generator(1));
    }

    #[test]
    fn cap_is_enforced() {
        let rs = Arc::new(build_root_system("A3".parse().unwrap()));
        assert!(matches!(enumerate_weyl(rs, 10), Err(Error::Resource(_))));
    }

    #[test]
    fn left_ascent_examples() {
        let a2 = group("A2");
        assert_eq!(a2.left_ascents(a2.identity()), set(&[1, 2]));
        assert_eq!(a2.left_ascents(a2.longest()), Subset::empty());
        assert_eq!(a2.left_ascents(a2.generator(1)), set(&[2]));
    }

    #[test]
    fn longest_element_examples() {
        let a2 = group("A2");
        assert_eq!(a2.longest_element(Subset::empty()), a2.identity());
        let w = a2.longest_element(set(&[1, 2]));
        assert_eq!(w, word(&a2, &[1, 2, 1]));
        assert_eq!(a2.element(w).length(), 3);
        let b2 = group("B2");
        let w = b2.longest_element(set(&[1]));
        assert_eq!(w, b2.generator(1));
        assert_eq!(b2.element(w).length(), 1);
    }

    #[test]
    fn coset_rep_examples() {
        let a2 = group("A2");
        assert_eq!(a2.min_coset_reps(Subset::empty()).len(), 6);
        assert_eq!(a2.min_coset_reps(set(&[1, 2])), vec![a2.identity()]);
        assert_eq!(
            a2.min_coset_reps(set(&[1])),
            vec![a2.identity(), a2.generator(2), word(&a2, &[1, 2])]
        );
    }

    #[test]
    fn double_coset_rep_examples() {
        let a2 = group("A2");
        assert_eq!(
            a2.min_double_coset_reps(set(&[1]), set(&[1])),
            &[a2.identity(), a2.generator(2)]
        );
        assert_eq!(
            a2.min_double_coset_reps(set(&[1, 2]), set(&[1, 2])),
            &[a2.identity()]
        );
        assert_eq!(
            a2.min_double_coset_reps(set(&[1]), set(&[2])),
            &[a2.identity(), word(&a2, &[2, 1])]
        );
    }

    #[test]
    fn sigma_examples() {
        let a1 = group("A1");
        assert_eq!(a1.sigma_involution(set(&[1])), set(&[1]));
        assert_eq!(a1.sigma_involution(Subset::empty()), Subset::empty());
        let a2 = group("A2");
        assert_eq!(a2.sigma_involution(set(&[1])), set(&[2]));
        let b2 = group("B2");
        assert_eq!(b2.sigma_involution(set(&[1])), set(&[1]));
        let d5 = group("D5");
        assert_eq!(d5.sigma_involution(set(&[4])), set(&[5]));
        assert_eq!(d5.sigma_involution(set(&[1, 2, 3])), set(&[1, 2, 3]));
    }

    #[test]
    fn twisted_intersection_examples() {
        let a2 = group("A2");
        let j = set(&[1]);
        assert_eq!(
            a2.twisted_intersection(a2.identity(), j, set(&[1, 2]))
                .unwrap(),
            j
        );
        let s2s1 = word(&a2, &[2, 1]);
        assert_eq!(a2.twisted_intersection(s2s1, j, set(&[2])).unwrap(), j);
        assert_eq!(
            a2.twisted_intersection(a2.generator(2), j, j).unwrap(),
            Subset::empty()
        );
        assert!(matches!(
            a2.twisted_intersection(a2.generator(1), j, j),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn reduced_words() {
        let a2 = group("A2");
        assert!(a2.reduced_word(a2.identity()).is_empty());
        let s2s1 = word(&a2, &[2, 1]);
        assert_eq!(a2.reduced_word(s2s1), vec![2, 1]);
        for w in 0..a2.order() {
            let rebuilt = word(&a2, &a2.reduced_word(w));
            assert_eq!(rebuilt, w);
            assert_eq!(a2.reduced_word(w).len(), a2.element(w).length());
        }
    }

    #[test]
    fn multiplication_tables_agree() {
        let b3 = group("B3");
        for w in 0..b3.order() {
            for i in 1..=3 {
                assert_eq!(b3.right_multiply(w, i), b3.multiply(w, b3.generator(i)));
                assert_eq!(b3.left_multiply(w, i), b3.multiply(b3.generator(i), w));
            }
            assert_eq!(b3.multiply(w, b3.inverse(w)), b3.identity());
            let m = b3.element(w).coroot_matrix() * b3.element(b3.inverse(w)).coroot_matrix();
            assert_eq!(m, DMatrix::identity(3, 3));
        }
    }

    #[test]
    fn longest_is_unique_with_empty_ascents() {
        for name in ["A3", "B3", "G2"] {
            let g = group(name);
            let empties: Vec<_> = (0..g.order())
                .filter(|&w| g.left_ascents(w).is_empty())
                .collect();
            assert_eq!(empties, vec![g.longest()]);
            let n = g.root_system().positive_count();
            let w0 = g.element(g.longest());
            assert!(w0.perm()[..n].iter().all(|&q| q as usize >= n));
        }
    }

    /// Squared lengths `d_i` of the simple roots, normalized so the shortest is 1, from
    /// `d_i C[i][j] = d_j C[j][i]`.
    fn squared_lengths(rs: &RootSystem) -> Vec<i64> {
        let r = rs.rank();
        let mut d = vec![0i64; r];
        d[0] = 6;
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..r {
                for j in 0..r {
                    let (cij, cji) = (rs.cartan()[i][j], rs.cartan()[j][i]);
                    if d[i] != 0 && d[j] == 0 && cij != 0 {
                        d[j] = d[i] * cij / cji;
                        changed = true;
                    }
                }
            }
        }
        let min = *d.iter().min().unwrap();
        d.iter().map(|x| x / min).collect()
    }

    #[test]
    fn coroot_matrices_match_coroots_of_roots() {
        for name in ["B2", "B3", "C3", "G2", "F4", "D4"] {
            let g = group(name);
            let rs = g.root_system();
            let d = squared_lengths(rs);
            let r = rs.rank();
            // |beta|^2 from the symmetric form (alpha_i, alpha_j) = d_i C[i][j] / 2
            let norm = |v: &[i64]| -> i64 {
                let mut s = 0;
                for i in 0..r {
                    for j in 0..r {
                        s += v[i] * v[j] * d[i] * rs.cartan()[i][j];
                    }
                }
                s / 2
            };
            for w in 0..g.order() {
                let m = g.element(w).coroot_matrix();
                for j in 0..r {
                    let beta = rs.root(g.act_on_position(w, j));
                    let nb = norm(beta);
                    let coroot: Vec<i64> = (0..r).map(|k| beta[k] * d[k] / nb).collect();
                    let column: Vec<i64> = (0..r).map(|k| m[(k, j)]).collect();
                    assert_eq!(column, coroot, "{name}");
                }
            }
        }
    }

    #[test]
    fn diagram_involution_from_images_checks_range() {
        assert!(DiagramInvolution::from_images(vec![1, 3]).is_err());
        let id = DiagramInvolution::from_images(vec![1, 2]).unwrap();
        assert!(id.is_identity());
        assert_eq!(id.apply(Subset::singleton(2)), Subset::singleton(2));
    }
}
