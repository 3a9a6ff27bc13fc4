//! Harish-Chandra restriction and induction on K0, and the Alvis-Curtis duality
//! `D = sum_{J ⊆ I} (-1)^{|J|} R^J R_J` together with its closed forms.
//!
//! Both functors are computed in the standard basis. Restriction to the Levi context `J`
//! follows the Mackey decomposition over minimal `(W_J, W_K)` double coset representatives:
//!
//! ```text
//! R_J [Delta(theta)_K] = sum_{w in D_{J,K}} [M_J(theta^w)_{J ∩ w(K)}]
//! ```
//!
//! and induction sends `[M_J(theta)_K]` to `[Delta(theta)_K]`.

use crate::character::CharacterPoint;
use crate::error::{Error, Result};
use crate::k0::{basis_element, BasisKind, K0Element, Label};
use crate::subset::Subset;
use crate::weyl::{DiagramInvolution, ElementId, WeylGroup};

/// One summand `M_J(theta^w)_L` of a restricted standard class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MackeySummand {
    pub rep: ElementId,
    pub twisted_theta: CharacterPoint,
    pub l: Subset,
}

fn check_family(group: &WeylGroup, theta: &CharacterPoint) -> Result<()> {
    let family = group.root_system().family();
    if theta.family() != family {
        return Err(Error::Argument(format!(
            "character of {} used with W({family})",
            theta.family()
        )));
    }
    Ok(())
}

fn check_full_context(group: &WeylGroup, x: &K0Element) -> Result<()> {
    if x.family() != group.root_system().family() {
        return Err(Error::Argument(format!(
            "K0 element of {} used with W({})",
            x.family(),
            group.root_system().family()
        )));
    }
    if x.context() != group.index_set() {
        return Err(Error::Argument(format!(
            "expected an element of the full context {}, got context {}",
            group.index_set(),
            x.context()
        )));
    }
    Ok(())
}

fn check_in_triviality_set(theta: &CharacterPoint, k: Subset, name: &str) -> Result<()> {
    let ground = theta.triviality_set();
    if !k.is_subset_of(ground) {
        return Err(Error::Domain(format!(
            "{name} = {k} is not contained in I({theta}) = {ground}"
        )));
    }
    Ok(())
}

/// The Mackey summands of `R_J [Delta(theta)_K]`, one per element of `D_{J,K}`.
pub fn mackey_summands(
    group: &WeylGroup,
    theta: &CharacterPoint,
    k: Subset,
    j: Subset,
) -> Result<Vec<MackeySummand>> {
    check_family(group, theta)?;
    check_in_triviality_set(theta, k, "K")?;
    if !j.is_subset_of(group.index_set()) {
        return Err(Error::Argument(format!(
            "J = {j} is not a subset of I = {}",
            group.index_set()
        )));
    }
    group
        .min_double_coset_reps(j, k)
        .iter()
        .map(|&w| {
            let l = group.twisted_intersection(w, j, k)?;
            let twisted_theta = theta.act(group, w)?;
            if !l.is_subset_of(twisted_theta.triviality_set_in(j)) {
                return Err(Error::Internal(format!(
                    "Mackey index L = {l} escapes J ∩ I({twisted_theta})"
                )));
            }
            Ok(MackeySummand {
                rep: w,
                twisted_theta,
                l,
            })
        })
        .collect()
}

/// Harish-Chandra restriction `R_J` from the full context to the Levi context `J`.
pub fn restrict(group: &WeylGroup, x: &K0Element, j: Subset) -> Result<K0Element> {
    check_full_context(group, x)?;
    let mut out = K0Element::zero(x.family(), x.modulus(), j)?;
    for (key, c) in x.coordinates_in(BasisKind::Delta) {
        for s in mackey_summands(group, &key.label.theta, key.label.j, j)? {
            out.add_basis_unchecked(BasisKind::Delta, &Label::new(s.twisted_theta, s.l), c);
        }
    }
    Ok(out)
}

/// Harish-Chandra induction `R^J` from a Levi context to the full context.
pub fn induce(group: &WeylGroup, y: &K0Element) -> Result<K0Element> {
    if y.family() != group.root_system().family() {
        return Err(Error::Argument(format!(
            "K0 element of {} used with W({})",
            y.family(),
            group.root_system().family()
        )));
    }
    let full = group.index_set();
    let mut out = K0Element::zero(y.family(), y.modulus(), full)?;
    for (key, c) in y.coordinates_in(BasisKind::Delta) {
        // K ⊆ J ∩ I(theta) ⊆ I(theta), so the key stays valid in the full context
        out.add_basis_unchecked(BasisKind::Delta, &key.label, c);
    }
    Ok(out)
}

/// `D(x) = sum_{J ⊆ I} (-1)^{|J|} R^J R_J x`, evaluated term by term.
pub fn duality_by_definition(group: &WeylGroup, x: &K0Element) -> Result<K0Element> {
    check_full_context(group, x)?;
    let mut out = K0Element::zero(x.family(), x.modulus(), x.context())?;
    for j in group.index_set().subsets() {
        let term = induce(group, &restrict(group, x, j)?)?;
        out.add_scaled(j.sign(), &term)?;
    }
    Ok(out)
}

/// Inner sum of the reindexed duality formula for one `w in X_K`:
/// `sum_{J ⊆ H(w)} (-1)^{|J|} [Delta(theta^w)_{J ∩ w(K)}]`.
pub fn coset_contribution(
    group: &WeylGroup,
    theta: &CharacterPoint,
    k: Subset,
    w: ElementId,
) -> Result<K0Element> {
    check_family(group, theta)?;
    check_in_triviality_set(theta, k, "K")?;
    if !group.element(w).right_descents().intersection(k).is_empty() {
        return Err(Error::Argument(format!(
            "element {:?} is not a minimal representative of w W_{k}",
            group.reduced_word(w)
        )));
    }
    let full = group.index_set();
    let twisted = theta.act(group, w)?;
    let image = group.simple_image(w, k);
    let mut out = K0Element::zero(theta.family(), theta.modulus(), full)?;
    for j in group.left_ascents(w).subsets() {
        let term = basis_element(BasisKind::Delta, &twisted, j.intersection(image), full)?;
        out.add_scaled(j.sign(), &term)?;
    }
    Ok(out)
}

/// `D[Delta(theta)_K]` summed over `w in X_K` instead of over `J ⊆ I`.
pub fn duality_delta_reindexed(
    group: &WeylGroup,
    theta: &CharacterPoint,
    k: Subset,
) -> Result<K0Element> {
    let mut out = K0Element::zero(theta.family(), theta.modulus(), group.index_set())?;
    for w in group.min_coset_reps(k) {
        out.add_scaled(1, &coset_contribution(group, theta, k, w)?)?;
    }
    Ok(out)
}

/// Closed forms of the duality. These depend on the diagram involution, which is held
/// explicitly so that a harness can substitute a wrong table and watch checks fail.
#[derive(Debug, Clone)]
pub struct ClosedForms<'g> {
    group: &'g WeylGroup,
    sigma: DiagramInvolution,
}

impl<'g> ClosedForms<'g> {
    pub fn new(group: &'g WeylGroup) -> Self {
        ClosedForms {
            group,
            sigma: group.diagram_involution(),
        }
    }

    pub fn with_sigma(group: &'g WeylGroup, sigma: DiagramInvolution) -> Result<Self> {
        if sigma.images().len() != group.rank() {
            return Err(Error::Argument(format!(
                "diagram involution has {} entries, rank is {}",
                sigma.images().len(),
                group.rank()
            )));
        }
        Ok(ClosedForms { group, sigma })
    }

    pub fn group(&self) -> &'g WeylGroup {
        self.group
    }

    pub fn sigma(&self) -> &DiagramInvolution {
        &self.sigma
    }

    /// `theta^{w_0}` together with `sigma(K)`, checking `sigma(K) ⊆ I(theta^{w_0})`.
    fn twisted_pair(&self, theta: &CharacterPoint, k: Subset) -> Result<(CharacterPoint, Subset)> {
        let twisted = theta.act(self.group, self.group.longest())?;
        let image = self.sigma.apply(k);
        let ground = twisted.triviality_set();
        if !image.is_subset_of(ground) {
            return Err(Error::Internal(format!(
                "sigma({k}) = {image} is not contained in I({twisted}) = {ground}"
            )));
        }
        Ok((twisted, image))
    }

    /// `(theta^{w_0}, D_theta(J))` with `D_theta(J) = I(theta^{w_0}) \ sigma(J)`.
    pub fn dual_index(
        &self,
        theta: &CharacterPoint,
        j: Subset,
    ) -> Result<(CharacterPoint, Subset)> {
        check_family(self.group, theta)?;
        check_in_triviality_set(theta, j, "J")?;
        let (twisted, image) = self.twisted_pair(theta, j)?;
        let dual = twisted.triviality_set().difference(image);
        Ok((twisted, dual))
    }

    /// `D[E(theta)_J] = [E(theta^{w_0})_{D_theta(J)}]`, extended linearly.
    pub fn duality(&self, x: &K0Element) -> Result<K0Element> {
        check_full_context(self.group, x)?;
        let mut out = K0Element::zero(x.family(), x.modulus(), x.context())?;
        for (label, c) in x.terms() {
            let (twisted, dual) = self.dual_index(&label.theta, label.j)?;
            out.add_basis_unchecked(BasisKind::E, &Label::new(twisted, dual), c);
        }
        Ok(out)
    }

    /// `D[Delta(theta)_K] = sum_{J ⊆ sigma(K)} (-1)^{|J|} [Delta(theta^{w_0})_J]`.
    pub fn duality_of_delta(&self, theta: &CharacterPoint, k: Subset) -> Result<K0Element> {
        check_family(self.group, theta)?;
        check_in_triviality_set(theta, k, "K")?;
        let (twisted, image) = self.twisted_pair(theta, k)?;
        let full = self.group.index_set();
        let mut out = K0Element::zero(theta.family(), theta.modulus(), full)?;
        for j in image.subsets() {
            out.add_basis_unchecked(BasisKind::Delta, &Label::new(twisted.clone(), j), j.sign());
        }
        Ok(out)
    }
}

/// `(theta^{w_0}, D_theta(J))`.
pub fn dual_index(
    group: &WeylGroup,
    theta: &CharacterPoint,
    j: Subset,
) -> Result<(CharacterPoint, Subset)> {
    ClosedForms::new(group).dual_index(theta, j)
}

/// The duality through its closed form on the simple classes.
pub fn duality_closed_form(group: &WeylGroup, x: &K0Element) -> Result<K0Element> {
    ClosedForms::new(group).duality(x)
}

/// `D[Delta(theta)_K]` as an alternating sum of standard classes of `theta^{w_0}`.
pub fn duality_delta_closed(
    group: &WeylGroup,
    theta: &CharacterPoint,
    k: Subset,
) -> Result<K0Element> {
    ClosedForms::new(group).duality_of_delta(theta, k)
}
