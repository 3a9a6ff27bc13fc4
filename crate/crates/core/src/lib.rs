//! Exact computations with the Alvis-Curtis duality on the Grothendieck group of the
//! principal representation category of a reductive group.
//!
//! Everything reduces to integer combinatorics over a concrete root system:
//!
//! * [`root_datum`]: Cartan data and roots of types A through G.
//! * [`weyl`]: the enumerated Weyl group, descents, coset representatives, `sigma`.
//! * [`character`]: torus characters as residue vectors, their Weyl action and `I(theta)`.
//! * [`k0`]: the lattice `K0` with the simple, standard and costandard bases.
//! * [`duality`]: Harish-Chandra restriction/induction and the duality operator.

pub mod character;
pub mod duality;
pub mod error;
pub mod k0;
pub mod root_datum;
pub mod subset;
pub mod weyl;

pub use character::{enumerate_characters, make_character, CharacterPoint, DEFAULT_MAX_CHARACTERS};
pub use duality::{
    coset_contribution, dual_index, duality_by_definition, duality_closed_form,
    duality_delta_closed, duality_delta_reindexed, induce, mackey_summands, restrict, ClosedForms,
    MackeySummand,
};
pub use error::{Error, Result};
pub use k0::{
    basis_element, combine, steinberg_class, trivial_class, BasisKey, BasisKind, K0Element, Label,
    Transition, TransitionMatrix,
};
pub use root_datum::{build_root_system, Family, RootFamily, RootSystem};
pub use subset::Subset;
pub use weyl::{
    enumerate_weyl, DiagramInvolution, ElementId, LeviContext, WeylElement, WeylGroup,
    DEFAULT_MAX_GROUP_ORDER,
};
