//! The Grothendieck group of the principal category, as a free integer lattice.
//!
//! Every element is stored in the basis of simple classes `[E(theta)_J]`. The standard and
//! costandard classes expand by inclusion over subsets of `I(theta)`:
//!
//! ```text
//! [Delta(theta)_J] = sum_{J ⊆ K ⊆ I(theta)} [E(theta)_K]
//! [Nabla(theta)_J] = sum_{K ⊆ J}            [E(theta)_K]
//! ```
//!
//! A *context* is the index set of a Levi subgroup; the full group has context `I`. Inside a
//! context `J`, `I(theta)` is read as `J ∩ I(theta)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;

use crate::character::CharacterPoint;
use crate::error::{Error, Result};
use crate::root_datum::{RootFamily, RootSystem};
use crate::subset::Subset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisKind {
    E,
    Delta,
    Nabla,
}

impl BasisKind {
    pub fn name(self) -> &'static str {
        match self {
            BasisKind::E => "E",
            BasisKind::Delta => "Delta",
            BasisKind::Nabla => "Nabla",
        }
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The index pair `(theta, J)` of a basis class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Label {
    pub theta: CharacterPoint,
    pub j: Subset,
}

impl Label {
    pub fn new(theta: CharacterPoint, j: Subset) -> Self {
        Label { theta, j }
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.theta.family(), self.theta.modulus())
            .cmp(&(other.theta.family(), other.theta.modulus()))
            .then_with(|| self.theta.residues().cmp(other.theta.residues()))
            .then_with(|| self.j.graded_cmp(&other.j))
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisKey {
    pub kind: BasisKind,
    pub label: Label,
    pub context: Subset,
}

impl Ord for BasisKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.context
            .cmp(&other.context)
            .then_with(|| self.label.cmp(&other.label))
            .then_with(|| self.kind.cmp(&other.kind))
    }
}

impl PartialOrd for BasisKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})_{}", self.kind, self.label.theta, self.label.j)
    }
}

/// A finite integer combination of `[E(theta)_J]` within one context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K0Element {
    family: RootFamily,
    modulus: u32,
    context: Subset,
    terms: BTreeMap<Label, i64>,
}

fn check_context(family: RootFamily, context: Subset) -> Result<()> {
    if context.is_subset_of(Subset::full(family.rank())) {
        Ok(())
    } else {
        Err(Error::Argument(format!(
            "context {context} is not a subset of the index set of {family}"
        )))
    }
}

fn check_label(family: RootFamily, modulus: u32, context: Subset, label: &Label) -> Result<()> {
    if label.theta.family() != family || label.theta.modulus() != modulus {
        return Err(Error::Argument(format!(
            "character {} of {} mod {} does not belong to {family} mod {modulus}",
            label.theta,
            label.theta.family(),
            label.theta.modulus()
        )));
    }
    let ground = label.theta.triviality_set_in(context);
    if !label.j.is_subset_of(ground) {
        return Err(Error::Domain(format!(
            "J = {} is not contained in context ∩ I({}) = {ground}",
            label.j, label.theta
        )));
    }
    Ok(())
}

/// `[E]`, `[Delta]` or `[Nabla]` of `(theta, J)` in `context`, expanded into the E basis.
pub fn basis_element(
    kind: BasisKind,
    theta: &CharacterPoint,
    j: Subset,
    context: Subset,
) -> Result<K0Element> {
    let mut out = K0Element::zero(theta.family(), theta.modulus(), context)?;
    let label = Label::new(theta.clone(), j);
    check_label(out.family, out.modulus, context, &label)?;
    out.add_basis_unchecked(kind, &label, 1);
    Ok(out)
}

/// Integer-linear combination `sum c_i x_i`. All elements must share family, modulus and
/// context.
pub fn combine(ops: &[(i64, &K0Element)]) -> Result<K0Element> {
    let (_, first) = ops
        .first()
        .ok_or_else(|| Error::Argument("cannot combine an empty list".into()))?;
    let mut out = K0Element::zero(first.family, first.modulus, first.context)?;
    for &(c, x) in ops {
        out.add_scaled(c, x)?;
    }
    Ok(out)
}

/// `[St] = [Delta(tr)_I] = [E(tr)_I]`.
pub fn steinberg_class(rs: &RootSystem, modulus: u32) -> K0Element {
    let tr = CharacterPoint::trivial(rs.family(), modulus);
    basis_element(BasisKind::Delta, &tr, rs.index_set(), rs.index_set())
        .expect("I ⊆ I(tr) always holds")
}

/// `[k_tr] = [Nabla(tr)_∅] = [E(tr)_∅]`.
pub fn trivial_class(rs: &RootSystem, modulus: u32) -> K0Element {
    let tr = CharacterPoint::trivial(rs.family(), modulus);
    basis_element(BasisKind::E, &tr, Subset::empty(), rs.index_set())
        .expect("∅ ⊆ I(tr) always holds")
}

impl K0Element {
    pub fn zero(family: RootFamily, modulus: u32, context: Subset) -> Result<Self> {
        check_context(family, context)?;
        if modulus == 0 {
            return Err(Error::Argument("modulus must be positive".into()));
        }
        Ok(K0Element {
            family,
            modulus,
            context,
            terms: BTreeMap::new(),
        })
    }

    /// Builds `sum c [kind(theta)_J]` from coordinates in any of the three bases.
    pub fn from_coordinates<I>(
        kind: BasisKind,
        family: RootFamily,
        modulus: u32,
        context: Subset,
        coords: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (Label, i64)>,
    {
        let mut out = K0Element::zero(family, modulus, context)?;
        for (label, c) in coords {
            check_label(family, modulus, context, &label)?;
            out.add_basis_unchecked(kind, &label, c);
        }
        Ok(out)
    }

    pub fn family(&self) -> RootFamily {
        self.family
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn context(&self) -> Subset {
        self.context
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero E-basis coefficients in canonical key order.
    pub fn terms(&self) -> impl Iterator<Item = (&Label, i64)> {
        self.terms.iter().map(|(l, &c)| (l, c))
    }

    pub fn coefficient(&self, theta: &CharacterPoint, j: Subset) -> i64 {
        self.terms
            .get(&Label::new(theta.clone(), j))
            .copied()
            .unwrap_or(0)
    }

    fn add_term(&mut self, label: Label, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(label);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    /// Adds `c [kind(label)]`; the label must already be valid in this context.
    pub(crate) fn add_basis_unchecked(&mut self, kind: BasisKind, label: &Label, c: i64) {
        let ground = label.theta.triviality_set_in(self.context);
        match kind {
            BasisKind::E => self.add_term(label.clone(), c),
            BasisKind::Delta => {
                for k in label.j.supersets_within(ground) {
                    self.add_term(Label::new(label.theta.clone(), k), c);
                }
            }
            BasisKind::Nabla => {
                for k in label.j.subsets() {
                    self.add_term(Label::new(label.theta.clone(), k), c);
                }
            }
        }
    }

    fn check_compatible(&self, other: &K0Element) -> Result<()> {
        if (self.family, self.modulus, self.context) != (other.family, other.modulus, other.context)
        {
            return Err(Error::Argument(format!(
                "cannot mix K0 elements of ({}, mod {}, context {}) and ({}, mod {}, context {})",
                self.family, self.modulus, self.context, other.family, other.modulus, other.context
            )));
        }
        Ok(())
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: i64, other: &K0Element) -> Result<()> {
        self.check_compatible(other)?;
        for (label, &v) in &other.terms {
            self.add_term(label.clone(), c * v);
        }
        Ok(())
    }

    pub fn scaled(&self, c: i64) -> K0Element {
        let mut out = self.clone();
        if c == 0 {
            out.terms.clear();
        } else {
            out.terms.values_mut().for_each(|v| *v *= c);
        }
        out
    }

    /// Exact coordinates in the requested basis, blockwise per character.
    pub fn coordinates_in(&self, kind: BasisKind) -> BTreeMap<BasisKey, i64> {
        let mut out: BTreeMap<BasisKey, i64> = BTreeMap::new();
        let mut push = |label: Label, c: i64| {
            let key = BasisKey {
                kind,
                label,
                context: self.context,
            };
            let v = out.entry(key).or_insert(0);
            *v += c;
        };
        for (label, &c) in &self.terms {
            let j = label.j;
            match kind {
                BasisKind::E => push(label.clone(), c),
                // E_J = sum_{L ⊇ J} (-1)^{|L|-|J|} Delta_L
                BasisKind::Delta => {
                    let ground = label.theta.triviality_set_in(self.context);
                    for l in j.supersets_within(ground) {
                        push(
                            Label::new(label.theta.clone(), l),
                            c * l.difference(j).sign(),
                        );
                    }
                }
                // E_J = sum_{L ⊆ J} (-1)^{|J|-|L|} Nabla_L
                BasisKind::Nabla => {
                    for l in j.subsets() {
                        push(
                            Label::new(label.theta.clone(), l),
                            c * j.difference(l).sign(),
                        );
                    }
                }
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

impl fmt::Display for K0Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (label, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if n == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}·", c.abs())?;
            }
            write!(f, "E({})_{}", label.theta, label.j)?;
        }
        Ok(())
    }
}

/// Which of the four transition matrices between the E basis and the Delta / Nabla bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transition {
    /// `Delta_K = sum_L A[K][L] E_L`, `A[K][L] = 1` iff `K ⊆ L`.
    A,
    /// `E_K = sum_L B[K][L] Delta_L`, `B[K][L] = (-1)^{|L|-|K|}` iff `K ⊆ L`.
    B,
    /// `Nabla_K = sum_L C[K][L] E_L`, `C[K][L] = 1` iff `K ⊇ L`.
    C,
    /// `E_K = sum_L D[K][L] Nabla_L`, `D[K][L] = (-1)^{|K|-|L|}` iff `K ⊇ L`.
    D,
}

/// One `theta`-block of a transition matrix, rows and columns indexed by the subsets of
/// the ground set `I(theta)` in increasing mask order.
#[derive(Debug, Clone)]
pub struct TransitionMatrix {
    which: Transition,
    ground: Subset,
    index: Vec<Subset>,
    entries: DMatrix<i64>,
}

impl TransitionMatrix {
    pub fn new(which: Transition, ground: Subset) -> Self {
        let index: Vec<Subset> = ground.subsets().collect();
        let n = index.len();
        let entries = DMatrix::from_fn(n, n, |a, b| {
            let (k, l) = (index[a], index[b]);
            match which {
                Transition::A => i64::from(k.is_subset_of(l)),
                Transition::B if k.is_subset_of(l) => l.difference(k).sign(),
                Transition::C => i64::from(l.is_subset_of(k)),
                Transition::D if l.is_subset_of(k) => k.difference(l).sign(),
                _ => 0,
            }
        });
        TransitionMatrix {
            which,
            ground,
            index,
            entries,
        }
    }

    pub fn which(&self) -> Transition {
        self.which
    }

    pub fn source_kind(&self) -> BasisKind {
        match self.which {
            Transition::A | Transition::C => BasisKind::E,
            Transition::B => BasisKind::Delta,
            Transition::D => BasisKind::Nabla,
        }
    }

    pub fn target_kind(&self) -> BasisKind {
        match self.which {
            Transition::A => BasisKind::Delta,
            Transition::C => BasisKind::Nabla,
            Transition::B | Transition::D => BasisKind::E,
        }
    }

    pub fn ground(&self) -> Subset {
        self.ground
    }

    pub fn subsets(&self) -> &[Subset] {
        &self.index
    }

    pub fn matrix(&self) -> &DMatrix<i64> {
        &self.entries
    }

    pub fn entry(&self, k: Subset, l: Subset) -> i64 {
        let pos = |s: Subset| self.index.iter().position(|&x| x == s);
        match (pos(k), pos(l)) {
            (Some(a), Some(b)) => self.entries[(a, b)],
            _ => 0,
        }
    }

    /// Product of two blocks over the same ground set.
    pub fn product(&self, other: &TransitionMatrix) -> Result<DMatrix<i64>> {
        if self.ground != other.ground {
            return Err(Error::Argument(format!(
                "transition blocks over {} and {} cannot be multiplied",
                self.ground, other.ground
            )));
        }
        Ok(&self.entries * &other.entries)
    }

    /// Zero unless `K ⊆ L`, ones on the diagonal.
    pub fn is_upper_unitriangular(&self) -> bool {
        self.is_unitriangular(|k, l| k.is_subset_of(l))
    }

    /// Zero unless `K ⊇ L`, ones on the diagonal.
    pub fn is_lower_unitriangular(&self) -> bool {
        self.is_unitriangular(|k, l| l.is_subset_of(k))
    }

    fn is_unitriangular(&self, allowed: impl Fn(Subset, Subset) -> bool) -> bool {
        let n = self.index.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let v = self.entries[(a, b)];
                if a == b {
                    v == 1
                } else {
                    v == 0 || allowed(self.index[a], self.index[b])
                }
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::make_character;
    use crate::root_datum::build_root_system;

    fn rs(name: &str) -> RootSystem {
        build_root_system(name.parse().unwrap())
    }

    fn set(ix: &[usize]) -> Subset {
        Subset::from_indices(ix.iter().copied())
    }

    fn terms(x: &K0Element) -> Vec<(Vec<u32>, Subset, i64)> {
        x.terms()
            .map(|(l, c)| (l.theta.residues().to_vec(), l.j, c))
            .collect()
    }

    #[test]
    fn delta_expansion_a1() {
        let a1 = rs("A1");
        let tr = CharacterPoint::trivial(a1.family(), 1);
        let x = basis_element(BasisKind::Delta, &tr, Subset::empty(), a1.index_set()).unwrap();
        assert_eq!(
            terms(&x),
            vec![(vec![0], Subset::empty(), 1), (vec![0], set(&[1]), 1)]
        );
    }

    #[test]
    fn delta_at_top_is_single_term() {
        let a2 = rs("A2");
        let theta = make_character(&a2, 3, &[0, 1]).unwrap();
        let x = basis_element(BasisKind::Delta, &theta, set(&[1]), a2.index_set()).unwrap();
        assert_eq!(terms(&x), vec![(vec![0, 1], set(&[1]), 1)]);
    }

    #[test]
    fn nabla_expansion_a2() {
        let a2 = rs("A2");
        let tr = CharacterPoint::trivial(a2.family(), 1);
        let x = basis_element(BasisKind::Nabla, &tr, set(&[1]), a2.index_set()).unwrap();
        assert_eq!(
            terms(&x),
            vec![(vec![0, 0], Subset::empty(), 1), (vec![0, 0], set(&[1]), 1)]
        );
    }

    #[test]
    fn basis_element_domain_error() {
        let a2 = rs("A2");
        let theta = make_character(&a2, 3, &[0, 1]).unwrap();
        let err = basis_element(BasisKind::E, &theta, set(&[2]), a2.index_set()).unwrap_err();
        assert!(
            matches!(err, Error::Domain(ref m) if m.contains("I([0,1])")),
            "{err}"
        );
        // J must also lie in the context
        let tr = CharacterPoint::trivial(a2.family(), 3);
        assert!(matches!(
            basis_element(BasisKind::E, &tr, set(&[2]), set(&[1])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn e_to_delta_coordinates() {
        let a1 = rs("A1");
        let tr = CharacterPoint::trivial(a1.family(), 1);
        let x = basis_element(BasisKind::E, &tr, Subset::empty(), a1.index_set()).unwrap();
        let coords: Vec<_> = x
            .coordinates_in(BasisKind::Delta)
            .into_iter()
            .map(|(k, c)| (k.kind, k.label.j, c))
            .collect();
        assert_eq!(
            coords,
            vec![
                (BasisKind::Delta, Subset::empty(), 1),
                (BasisKind::Delta, set(&[1]), -1)
            ]
        );
    }

    #[test]
    fn delta_round_trip_is_single_key() {
        let b3 = rs("B3");
        let tr = CharacterPoint::trivial(b3.family(), 2);
        let x = basis_element(BasisKind::Delta, &tr, set(&[2]), b3.index_set()).unwrap();
        let coords = x.coordinates_in(BasisKind::Delta);
        assert_eq!(coords.len(), 1);
        let (key, c) = coords.into_iter().next().unwrap();
        assert_eq!((key.kind, key.label.j, c), (BasisKind::Delta, set(&[2]), 1));
    }

    #[test]
    fn combine_examples() {
        let a1 = rs("A1");
        let tr = CharacterPoint::trivial(a1.family(), 1);
        let i = a1.index_set();
        let e0 = basis_element(BasisKind::E, &tr, Subset::empty(), i).unwrap();
        let e1 = basis_element(BasisKind::E, &tr, set(&[1]), i).unwrap();
        assert!(combine(&[(1, &e0), (-1, &e0)]).unwrap().is_zero());
        assert_eq!(combine(&[(2, &e0), (3, &e0)]).unwrap(), e0.scaled(5));
        let d0 = basis_element(BasisKind::Delta, &tr, Subset::empty(), i).unwrap();
        assert_eq!(combine(&[(1, &d0), (-1, &e1)]).unwrap(), e0);

        let levi = K0Element::zero(a1.family(), 1, Subset::empty()).unwrap();
        assert!(matches!(
            combine(&[(1, &e0), (1, &levi)]),
            Err(Error::Argument(_))
        ));
        assert!(matches!(combine(&[]), Err(Error::Argument(_))));
    }

    #[test]
    fn steinberg_and_trivial() {
        let a1 = rs("A1");
        let st = steinberg_class(&a1, 1);
        assert_eq!(terms(&st), vec![(vec![0], set(&[1]), 1)]);
        let a2 = rs("A2");
        let st = steinberg_class(&a2, 3);
        let coords = st.coordinates_in(BasisKind::Delta);
        assert_eq!(coords.len(), 1);
        assert_eq!(coords.keys().next().unwrap().label.j, set(&[1, 2]));
        for name in ["A1", "B3", "G2"] {
            let sys = rs(name);
            assert_eq!(
                terms(&trivial_class(&sys, 2)),
                vec![(vec![0; sys.rank()], Subset::empty(), 1)]
            );
        }
    }

    #[test]
    fn matrices_match_coordinates() {
        let a3 = rs("A3");
        let tr = CharacterPoint::trivial(a3.family(), 1);
        let ground = a3.index_set();
        let b = TransitionMatrix::new(Transition::B, ground);
        let d = TransitionMatrix::new(Transition::D, ground);
        let a = TransitionMatrix::new(Transition::A, ground);
        let c = TransitionMatrix::new(Transition::C, ground);
        for k in ground.subsets() {
            let e = basis_element(BasisKind::E, &tr, k, ground).unwrap();
            let delta = e.coordinates_in(BasisKind::Delta);
            let nabla = e.coordinates_in(BasisKind::Nabla);
            for l in ground.subsets() {
                let get = |m: &BTreeMap<BasisKey, i64>, kind| {
                    m.get(&BasisKey {
                        kind,
                        label: Label::new(tr.clone(), l),
                        context: ground,
                    })
                    .copied()
                    .unwrap_or(0)
                };
                assert_eq!(get(&delta, BasisKind::Delta), b.entry(k, l));
                assert_eq!(get(&nabla, BasisKind::Nabla), d.entry(k, l));
                let dk = basis_element(BasisKind::Delta, &tr, k, ground).unwrap();
                assert_eq!(dk.coefficient(&tr, l), a.entry(k, l));
                let nk = basis_element(BasisKind::Nabla, &tr, k, ground).unwrap();
                assert_eq!(nk.coefficient(&tr, l), c.entry(k, l));
            }
        }
    }

    #[test]
    fn matrix_shapes() {
        let g = set(&[1, 2, 4]);
        let a = TransitionMatrix::new(Transition::A, g);
        let b = TransitionMatrix::new(Transition::B, g);
        let c = TransitionMatrix::new(Transition::C, g);
        let d = TransitionMatrix::new(Transition::D, g);
        assert!(a.is_upper_unitriangular() && b.is_upper_unitriangular());
        assert!(c.is_lower_unitriangular() && d.is_lower_unitriangular());
        assert!(!a.is_lower_unitriangular());
        assert_eq!(a.product(&b).unwrap(), DMatrix::identity(8, 8));
        assert_eq!(c.product(&d).unwrap(), DMatrix::identity(8, 8));
        assert_eq!(
            (a.source_kind(), a.target_kind()),
            (BasisKind::E, BasisKind::Delta)
        );
        assert_eq!(
            (d.source_kind(), d.target_kind()),
            (BasisKind::Nabla, BasisKind::E)
        );
        let other = TransitionMatrix::new(Transition::B, set(&[1]));
        assert!(a.product(&other).is_err());
    }

    #[test]
    fn display_form() {
        let a1 = rs("A1");
        let tr = CharacterPoint::trivial(a1.family(), 1);
        let x = basis_element(BasisKind::E, &tr, Subset::empty(), a1.index_set()).unwrap();
        let st = steinberg_class(&a1, 1);
        let y = combine(&[(1, &x), (-2, &st)]).unwrap();
        assert_eq!(y.to_string(), "E(tr)_{} - 2·E(tr)_{1}");
        assert_eq!(x.scaled(0).to_string(), "0");
    }
}
