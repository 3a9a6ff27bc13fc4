//! Torus characters modeled as `Z/m`-valued functionals on the coroot lattice.
//!
//! With simply-connected coroot lattice `Y = ⊕ Z alpha_i^vee`, a character of order dividing
//! `m` is determined by its residues `theta(alpha_i^vee) mod m`. The Weyl action is
//! `theta^w(y) = theta(w^{-1} y)`, so `(theta^w)^v = theta^{vw}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::root_datum::{RootFamily, RootSystem};
use crate::subset::Subset;
use crate::weyl::{ElementId, WeylGroup};

pub const DEFAULT_MAX_CHARACTERS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacterPoint {
    family: RootFamily,
    modulus: u32,
    residues: Vec<u32>,
}

/// Builds the character with `theta(alpha_i^vee) = values[i] mod m`.
pub fn make_character(rs: &RootSystem, modulus: i64, values: &[i64]) -> Result<CharacterPoint> {
    if modulus <= 0 || modulus > u32::MAX as i64 {
        return Err(Error::Argument(format!(
            "modulus must be a positive 32-bit integer, got {modulus}"
        )));
    }
    if values.len() != rs.rank() {
        return Err(Error::Argument(format!(
            "character has {} residues but {} has rank {}",
            values.len(),
            rs.family(),
            rs.rank()
        )));
    }
    Ok(CharacterPoint {
        family: rs.family(),
        modulus: modulus as u32,
        residues: values
            .iter()
            .map(|v| v.rem_euclid(modulus) as u32)
            .collect(),
    })
}

/// All `m^r` characters in lexicographic residue order.
pub fn enumerate_characters(
    rs: &RootSystem,
    modulus: i64,
    max_count: usize,
) -> Result<Vec<CharacterPoint>> {
    if modulus <= 0 {
        return Err(Error::Argument(format!(
            "modulus must be positive, got {modulus}"
        )));
    }
    let r = rs.rank() as u32;
    let count = (modulus as u128).checked_pow(r).unwrap_or(u128::MAX);
    if count > max_count as u128 {
        return Err(Error::Resource(format!(
            "{modulus}^{r} characters exceed the character cap {max_count}"
        )));
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut current = vec![0i64; rs.rank()];
    loop {
        out.push(make_character(rs, modulus, &current)?);
        // odometer with the last coordinate fastest
        let mut pos = rs.rank();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] < modulus {
                break;
            }
            current[pos] = 0;
        }
    }
}

impl CharacterPoint {
    /// The trivial character `tr`.
    pub fn trivial(family: RootFamily, modulus: u32) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        CharacterPoint {
            family,
            modulus,
            residues: vec![0; family.rank()],
        }
    }

    pub fn family(&self) -> RootFamily {
        self.family
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    pub fn is_trivial(&self) -> bool {
        self.residues.iter().all(|&x| x == 0)
    }

    /// `I(theta) = {i : theta(alpha_i^vee) = 0}`.
    pub fn triviality_set(&self) -> Subset {
        self.residues
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// `I(theta)` read inside a Levi context: only indices of `context` count.
    pub fn triviality_set_in(&self, context: Subset) -> Subset {
        self.triviality_set().intersection(context)
    }

    /// `theta^w`, evaluated on each simple coroot as `theta(w^{-1} alpha_i^vee)`.
    pub fn act(&self, group: &WeylGroup, w: ElementId) -> Result<CharacterPoint> {
        if group.root_system().family() != self.family {
            return Err(Error::Argument(format!(
                "character of {} acted on by W({})",
                self.family,
                group.root_system().family()
            )));
        }
        let inv = group.element(group.inverse(w)).coroot_matrix();
        let m = self.modulus as i64;
        let residues = (0..self.residues.len())
            .map(|i| {
                let value: i64 = self
                    .residues
                    .iter()
                    .enumerate()
                    .map(|(j, &t)| inv[(j, i)] * t as i64)
                    .sum();
                value.rem_euclid(m) as u32
            })
            .collect();
        Ok(CharacterPoint {
            family: self.family,
            modulus: self.modulus,
            residues,
        })
    }
}

impl fmt::Display for CharacterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("tr");
        }
        f.write_str("[")?;
        for (n, x) in self.residues.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}
